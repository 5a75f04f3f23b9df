//! `key = value` config files. Keys mirror the long flags without the
//! leading dashes; `a` may repeat or hold a comma-separated list.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

pub const KEYS: [&str; 13] = [
    "mass",
    "dirac-mass",
    "coupling-l",
    "trunc",
    "quad-nodes",
    "quad-cutoff",
    "epsilon",
    "tol",
    "grid",
    "nmax",
    "a",
    "out",
    "seed",
];

#[derive(Debug, Default, Clone, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
    pub a: Vec<f64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut cfg = ConfigFile::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
            let key = key.trim().replace('_', "-");
            let value = value.trim();
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", lineno + 1));
            }
            if key == "a" {
                for part in value.split(',') {
                    cfg.a.push(parse_value(&key, part.trim())?);
                }
            } else {
                cfg.values.insert(key, value.to_string());
            }
        }
        Ok(cfg)
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        self.values
            .get(key)
            .map(|v| parse_value(key, v))
            .transpose()
    }
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("invalid value `{value}` for `{key}`"))
}
