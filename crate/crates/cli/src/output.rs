use std::io::Write;

use uhf_core::report::{CheckReport, Scalar};

pub fn write_json(reports: &[CheckReport], out: &mut impl Write) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, reports)?;
    writeln!(out)
}

fn parts(s: &Scalar) -> (f64, f64) {
    match *s {
        Scalar::Real(v) => (v, 0.0),
        Scalar::Complex(c) => (c.re, c.im),
    }
}

/// One row per report; the parameter record is embedded as JSON.
pub fn write_csv(reports: &[CheckReport], out: &mut impl Write) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "check",
        "params",
        "kind",
        "observed_re",
        "observed_im",
        "expected_re",
        "expected_im",
        "tolerance",
        "pass",
        "note",
        "runtime_ms",
    ])?;
    for r in reports {
        let (ore, oim) = parts(&r.observed);
        let (ere, eim) = parts(&r.expected);
        let kind = serde_json::to_value(r.kind).expect("plain enum");
        w.write_record([
            r.check.clone(),
            serde_json::to_string(&r.params).expect("json values"),
            kind.as_str().unwrap_or_default().to_string(),
            ore.to_string(),
            oim.to_string(),
            ere.to_string(),
            eim.to_string(),
            r.tolerance.map(|t| t.to_string()).unwrap_or_default(),
            r.pass.to_string(),
            r.note.clone().unwrap_or_default(),
            format!("{:.3}", r.runtime_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}
