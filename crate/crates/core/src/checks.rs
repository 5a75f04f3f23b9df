//! Check suites behind the command-line harness. Each suite samples its
//! own points from a seeded generator, so results depend only on the
//! configuration.

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::causality::{antisym_check_2pt, carrier_margin, deform_invariance, jost_symmetry};
use crate::diracfree::{
    charges_for, dirac_npoint, dirac_npoint_matchings, full_model_vev, gamma_check, s_minus,
    FieldKind, GammaBasis, Label,
};
use crate::error::{Error, Result};
use crate::gaussmodel::{
    chi_inv, chi_map, deq_residual, rho_vev, rho_vev_series, z_from_zeta, zeta_from_z,
    ChargeVector, ContourSpec, FunctionalQuadrature, GaussianTest,
};
use crate::localize1d::{localization_report_with, StripTestFunction, DIVERGENCE_THRESHOLD};
use crate::propagator::{
    d_minus, d_minus_decomposed, ell_fundamental, g_m, ComplexFourVector, Mass, QuadratureConfig,
};
use crate::report::{sort_reports, CheckReport, Params};
use crate::wickcomb::{
    exp_vev_closed, jaffe_vev, monomial_vev_oracle, sigma_growth, PairingMatrix, WickSeries,
};

/// Inputs shared by all suites.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub mass: f64,
    pub dirac_mass: f64,
    pub coupling_l: f64,
    /// Overrides the per-check truncation order.
    pub trunc: Option<usize>,
    pub quad_nodes: usize,
    pub quad_cutoff: f64,
    /// Restricts the bound sweep to one damping value.
    pub epsilon: Option<f64>,
    /// Overrides the per-check tolerance of tolerance-type checks.
    pub tol: Option<f64>,
    pub grid: usize,
    pub nmax: usize,
    pub a_values: Vec<f64>,
    pub seed: u64,
    /// Gauss-Hermite nodes per axis for the contour functional.
    pub functional_nodes: usize,
}

impl Default for CheckConfig {
    fn default() -> Self {
        let q = QuadratureConfig::default();
        Self {
            mass: 1.0,
            dirac_mass: 1.0,
            coupling_l: 0.5,
            trunc: None,
            quad_nodes: q.nodes,
            quad_cutoff: q.cutoff,
            epsilon: None,
            tol: None,
            grid: 1000,
            nmax: 60,
            a_values: vec![1.0, 2.0],
            seed: 0,
            functional_nodes: 10,
        }
    }
}

impl CheckConfig {
    pub fn validate(&self) -> Result<()> {
        Mass::new(self.mass)?;
        Mass::new(self.dirac_mass)?;
        let bad = |what: &str| Err(Error::Precondition(what.to_string()));
        if !(self.coupling_l >= 0.0 && self.coupling_l.is_finite()) {
            return bad("coupling-l must be a finite non-negative number");
        }
        if self.grid == 0 {
            return bad("grid must be positive");
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0) {
                return bad("epsilon must be positive");
            }
        }
        if let Some(t) = self.tol {
            if !(t >= 0.0) {
                return bad("tol must be non-negative");
            }
        }
        if self.functional_nodes == 0 || self.functional_nodes > 12 {
            return bad("functional nodes must lie in 1..=12");
        }
        self.quadrature().validate()
    }

    pub fn quadrature(&self) -> QuadratureConfig {
        QuadratureConfig {
            nodes: self.quad_nodes,
            cutoff: self.quad_cutoff,
            epsilon: self.epsilon.unwrap_or(QuadratureConfig::default().epsilon),
            ..QuadratureConfig::default()
        }
    }

    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    fn m(&self) -> Mass {
        Mass::new(self.mass).expect("validated")
    }

    fn dm(&self) -> Mass {
        Mass::new(self.dirac_mass).expect("validated")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Bounds,
    Propagator,
    Jaffe,
    GaussVev,
    Deq,
    Causality,
    Localize,
    Dirac,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Bounds,
        Suite::Propagator,
        Suite::Jaffe,
        Suite::GaussVev,
        Suite::Deq,
        Suite::Causality,
        Suite::Localize,
        Suite::Dirac,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bounds => "bounds",
            Suite::Propagator => "propagator",
            Suite::Jaffe => "jaffe",
            Suite::GaussVev => "gauss-vev",
            Suite::Deq => "deq",
            Suite::Causality => "causality",
            Suite::Localize => "localize",
            Suite::Dirac => "dirac",
        }
    }

    pub fn run(self, cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
        cfg.validate()?;
        let mut out = match self {
            Suite::Bounds => bounds(cfg),
            Suite::Propagator => propagator(cfg),
            Suite::Jaffe => jaffe(cfg),
            Suite::GaussVev => gauss_vev(cfg),
            Suite::Deq => deq(cfg),
            Suite::Causality => causality(cfg),
            Suite::Localize => localize(cfg),
            Suite::Dirac => dirac(cfg),
        };
        sort_reports(&mut out);
        Ok(out)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s}")))
    }
}

/// Every suite, sorted as one array.
pub fn run_all(cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for suite in Suite::ALL {
        out.extend(suite.run(cfg)?);
    }
    sort_reports(&mut out);
    Ok(out)
}

fn timed<F>(check: &str, params: Params, f: F) -> CheckReport
where
    F: FnOnce(Params) -> Result<CheckReport>,
{
    let started = Instant::now();
    match f(params.clone()) {
        Ok(r) => r,
        Err(e) => CheckReport::failed(check, params, &e),
    }
    .with_runtime(started)
}

fn uniform4(rng: &mut ChaCha8Rng, half: f64) -> [f64; 4] {
    [0.0; 4].map(|_: f64| rng.gen_range(-half..=half))
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(f64::MIN_POSITIVE)
}

/// `min |z0 -/+ |x||` for `z0 = x0 - i eps`.
fn cone_distance(x: [f64; 4], eps: f64) -> f64 {
    let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
    let minus = Complex64::new(x[0] - r, -eps).norm();
    let plus = Complex64::new(x[0] + r, -eps).norm();
    minus.min(plus)
}

fn bounds(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = cfg.quadrature();
    let m = cfg.m();
    let eps_set = match cfg.epsilon {
        Some(e) => vec![e],
        None => vec![0.1, 0.5, 1.0],
    };
    let mut out = Vec::new();
    for (k, &eps) in eps_set.iter().enumerate() {
        let params = Params::new()
            .with("mass", cfg.mass)
            .with("epsilon", eps)
            .with("grid", cfg.grid)
            .with("seed", cfg.seed);
        out.push(timed("bounds.global_estimate", params, |p| {
            let mut rng = cfg.rng(100 + k as u64);
            let bound = (2.0 * PI * eps).powi(-2);
            let mut worst: f64 = 0.0;
            let mut violations = 0usize;
            for _ in 0..cfg.grid {
                let x = uniform4(&mut rng, 3.0);
                let v = d_minus(m, &ComplexFourVector::with_time_damping(x, eps), &q)?.norm();
                violations += usize::from(v > bound);
                worst = worst.max(v);
            }
            Ok(
                CheckReport::at_most("bounds.global_estimate", p, worst, bound).with_note(format!(
                    "{violations} of {} points above the bound",
                    cfg.grid
                )),
            )
        }));
    }

    let params = Params::new()
        .with("mass", cfg.mass)
        .with("samples", 50)
        .with("seed", cfg.seed);
    out.push(timed("bounds.g_m", params, |p| {
        let mut rng = cfg.rng(110);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let z = Complex64::new(rng.gen_range(-3.0..3.0), -rng.gen_range(0.0..2.0));
            let x = rng.gen_range(-3.0..3.0);
            worst = worst.max(g_m(m, z, x, &q)?.norm());
        }
        Ok(CheckReport::at_most(
            "bounds.g_m",
            p,
            worst,
            SQRT_2 * PI / 4.0 + 1e-6,
        ))
    }));

    let l = cfg.coupling_l;
    let params = Params::new()
        .with("mass", cfg.mass)
        .with("coupling_l", l)
        .with("samples", 200)
        .with("seed", cfg.seed);
    out.push(timed("bounds.fundamental_length", params, |p| {
        let mut rng = cfg.rng(120);
        let threshold = ell_fundamental(m, l) * (1.0 + 1e-3);
        let mut worst: f64 = 0.0;
        let mut accepted = 0;
        while accepted < 200 {
            let (x, eps) = if accepted % 2 == 0 {
                // close to the threshold, next to the cone
                let mut x = uniform4(&mut rng, 3.0);
                let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
                let target = threshold * (1.0 + rng.gen_range(1e-4..0.1));
                let delta = rng.gen_range(-0.9..0.9) * target;
                x[0] = if rng.gen_bool(0.5) {
                    r + delta
                } else {
                    -r + delta
                };
                (x, (target * target - delta * delta).sqrt())
            } else {
                (uniform4(&mut rng, 3.0), rng.gen_range(1e-3..1.0))
            };
            if !(cone_distance(x, eps) > threshold) || !(eps > 0.0) {
                continue;
            }
            accepted += 1;
            let d = d_minus_decomposed(m, &ComplexFourVector::with_time_damping(x, eps), &q)?;
            worst = worst.max(2.0 * l * l * d.norm());
        }
        Ok(CheckReport::at_most(
            "bounds.fundamental_length",
            p,
            worst,
            1.0,
        ))
    }));
    out
}

fn propagator(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = cfg.quadrature();
    let m = cfg.m();
    let params = Params::new()
        .with("mass", cfg.mass)
        .with("samples", 50)
        .with("seed", cfg.seed);
    let decomposition = timed("propagator.decomposition", params, |p| {
        let mut rng = cfg.rng(200);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let z = ComplexFourVector::with_time_damping(
                uniform4(&mut rng, 2.0),
                rng.gen_range(0.2..1.0),
            );
            worst = worst.max(rel(d_minus(m, &z, &q)?, d_minus_decomposed(m, &z, &q)?));
        }
        Ok(CheckReport::within(
            "propagator.decomposition",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-6),
        ))
    });
    let params = Params::new().with("samples", 20).with("seed", cfg.seed);
    let massless = timed("propagator.massless_closed_form", params, |p| {
        let mut rng = cfg.rng(201);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let z = ComplexFourVector::with_time_damping(
                uniform4(&mut rng, 2.0),
                rng.gen_range(0.2..1.0),
            );
            let exact = -1.0 / (4.0 * PI * PI * z.minkowski_sq());
            worst = worst.max(rel(d_minus(Mass::new(0.0)?, &z, &q)?, exact));
        }
        Ok(CheckReport::within(
            "propagator.massless_closed_form",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-9),
        ))
    });
    vec![decomposition, massless]
}

fn random_pairing(rng: &mut ChaCha8Rng, n: usize) -> PairingMatrix {
    PairingMatrix::from_fn(n, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// All degree vectors of length `k` with sum at most `total`.
pub fn degree_vectors(k: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for d in 0..=left {
            cur.push(d);
            rec(k, left - d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, total, &mut Vec::new(), &mut out);
    out
}

fn jaffe(cfg: &CheckConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let params = Params::new()
        .with("max_points", 4)
        .with("max_legs", 8)
        .with("matrices", 20)
        .with("seed", cfg.seed);
    out.push(timed("jaffe.oracle_equivalence", params, |p| {
        let mut rng = cfg.rng(300);
        let mut worst: f64 = 0.0;
        for k in 1..=4 {
            for degrees in degree_vectors(k, 8) {
                let series: Vec<WickSeries> =
                    degrees.iter().map(|&n| WickSeries::monomial(n)).collect();
                let half = degrees.iter().sum::<usize>() / 2;
                for _ in 0..20 {
                    let t = random_pairing(&mut rng, k);
                    let a = jaffe_vev(&series, &t, half)?;
                    let b = monomial_vev_oracle(&degrees, &t)?;
                    let err = if b == Complex64::new(0.0, 0.0) {
                        a.norm()
                    } else {
                        (a - b).norm() / b.norm()
                    };
                    worst = worst.max(err);
                }
            }
        }
        Ok(CheckReport::within(
            "jaffe.oracle_equivalence",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-12),
        ))
    }));

    let trunc = cfg.trunc.unwrap_or(30);
    let params = Params::new()
        .with("trunc", trunc)
        .with("samples", 20)
        .with("seed", cfg.seed);
    out.push(timed("jaffe.exp_closed_form", params, |p| {
        let mut rng = cfg.rng(301);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let t = random_pairing(&mut rng, 3);
            let mut g: Vec<Complex64> = (0..3)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let mut s = 0.0;
            for i in 0..3 {
                for j in i + 1..3 {
                    s += (g[i] * g[j] * t.get(i, j)).norm();
                }
            }
            // sum |g_i g_j t_ij| is quadratic in g
            let scale = (0.3 * rng.gen_range(0.2..1.0) / s).sqrt();
            g.iter_mut().for_each(|v| *v *= scale);
            let series: Vec<WickSeries> = g
                .iter()
                .map(|&x| WickSeries::exp_linear(x, trunc))
                .collect();
            worst = worst.max((jaffe_vev(&series, &t, trunc)? - exp_vev_closed(&g, &t)?).norm());
        }
        Ok(CheckReport::within(
            "jaffe.exp_closed_form",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-10),
        ))
    }));

    let l = cfg.coupling_l;
    let params = Params::new()
        .with("coupling_l", l)
        .with("window", "20..=60");
    let estimate = sigma_growth(&WickSeries::exp_square(l * l, 60), 20..=60);
    let sigma_target = 2.0 * l * l;
    out.push(timed("jaffe.sigma_growth", params.clone(), |p| {
        let e = estimate.clone()?;
        Ok(CheckReport::within(
            "jaffe.sigma_growth",
            p,
            e.sigma,
            sigma_target,
            cfg.tol_or(0.05) * sigma_target,
        ))
    }));
    let ell_target = l / (SQRT_2 * PI);
    out.push(timed("jaffe.sigma_length", params, |p| {
        let e = estimate.clone()?;
        Ok(CheckReport::within(
            "jaffe.sigma_length",
            p,
            e.ell,
            ell_target,
            cfg.tol_or(0.05) * ell_target,
        ))
    }));
    out
}

/// Contour points and a coupling with `max |2 l^2 D| = cap`.
fn scaled_points(
    rng: &mut ChaCha8Rng,
    n: usize,
    m: Mass,
    cap: f64,
    q: &QuadratureConfig,
) -> Result<(Vec<ComplexFourVector>, f64)> {
    let x: Vec<[f64; 4]> = (0..n).map(|_| uniform4(rng, 1.0)).collect();
    let pts = ContourSpec::evenly_spaced(n, 0.5).place(&x)?;
    let mut dmax: f64 = 0.0;
    for j in 0..n {
        for k in j + 1..n {
            dmax = dmax.max(d_minus_decomposed(m, &(pts[j] - pts[k]), q)?.norm());
        }
    }
    Ok((pts, (cap / (2.0 * dmax)).sqrt()))
}

fn gauss_vev(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = cfg.quadrature();
    let m = cfg.m();
    let trunc = cfg.trunc.unwrap_or(40);
    let mut out = Vec::new();
    for n in [2usize, 3] {
        let params = Params::new()
            .with("mass", cfg.mass)
            .with("points", n)
            .with("trunc", trunc)
            .with("samples", 10)
            .with("seed", cfg.seed);
        out.push(timed("gauss.det_closed_form", params, |p| {
            let mut rng = cfg.rng(400 + n as u64);
            let mut worst: f64 = 0.0;
            for _ in 0..10 {
                let cap = 0.3 * rng.gen_range(0.3..1.0);
                let (pts, l) = scaled_points(&mut rng, n, m, cap, &q)?;
                let r = ChargeVector::new(
                    (0..n)
                        .map(|_| if rng.gen_bool(0.5) { 1 } else { -1 })
                        .collect(),
                )?;
                let exact = rho_vev(l, m, &pts, &r, &q)?;
                let series = rho_vev_series(l, m, &pts, &r, trunc, &q)?;
                worst = worst.max((series.value - exact).norm());
            }
            Ok(CheckReport::within(
                "gauss.det_closed_form",
                p,
                worst,
                0.0,
                cfg.tol_or(1e-8),
            ))
        }));
    }

    let params = Params::new()
        .with("max_points", 6)
        .with("samples", 100)
        .with("seed", cfg.seed);
    out.push(timed("gauss.chi_roundtrip_int", params.clone(), |p| {
        let mut rng = cfg.rng(410);
        let mut mismatches = 0usize;
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let pts: Vec<[i64; 4]> = (0..n)
                .map(|_| [0; 4].map(|_: i64| rng.gen_range(-1_000_000..=1_000_000)))
                .collect();
            mismatches += usize::from(chi_inv(n, &chi_map(n, &pts)?)? != pts);
            mismatches += usize::from(z_from_zeta(&zeta_from_z(&pts)) != pts);
        }
        Ok(CheckReport::within(
            "gauss.chi_roundtrip_int",
            p,
            mismatches as f64,
            0.0,
            0.0,
        ))
    }));
    out.push(timed("gauss.chi_roundtrip_float", params, |p| {
        let mut rng = cfg.rng(411);
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let pts: Vec<[f64; 4]> = (0..n).map(|_| uniform4(&mut rng, 10.0)).collect();
            let a = chi_inv(n, &chi_map(n, &pts)?)?;
            let b = z_from_zeta(&zeta_from_z(&pts));
            for k in 0..n {
                for mu in 0..4 {
                    let scale = pts[k][mu].abs().max(1.0);
                    worst = worst.max((a[k][mu] - pts[k][mu]).abs() / scale);
                    worst = worst.max((b[k][mu] - pts[k][mu]).abs() / scale);
                }
            }
        }
        Ok(CheckReport::within(
            "gauss.chi_roundtrip_float",
            p,
            worst,
            0.0,
            1e-14,
        ))
    }));
    out
}

fn deq(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = cfg.quadrature();
    let m = cfg.m();
    let trunc = cfg.trunc.unwrap_or(20);
    let params = Params::new()
        .with("mass", cfg.mass)
        .with("trunc", trunc)
        .with("samples", 5)
        .with("seed", cfg.seed);
    let mut rng = cfg.rng(500);
    let mut samples = Vec::new();
    for k in 0..5 {
        let zeta =
            ComplexFourVector::with_time_damping(uniform4(&mut rng, 1.0), rng.gen_range(0.3..0.8));
        samples.push((zeta, k % 4));
    }
    let residuals = |t: usize| -> Result<Vec<f64>> {
        samples
            .iter()
            .map(|(zeta, mu)| {
                let d = d_minus(m, zeta, &q)?;
                let l = (0.2 / (2.0 * d.norm())).sqrt();
                Ok(deq_residual(l, m, zeta, *mu, t, &q)?.norm())
            })
            .collect()
    };
    let residual = timed("deq.residual", params.clone(), |p| {
        let r = residuals(trunc)?;
        let worst = r.iter().copied().fold(0.0, f64::max);
        Ok(CheckReport::within(
            "deq.residual",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-6),
        ))
    });
    let decay = timed("deq.truncation_decay", params, |p| {
        let hi = residuals(trunc)?;
        let lo = residuals(5)?;
        let worst = hi
            .iter()
            .zip(&lo)
            .map(|(h, l)| h / l.max(f64::MIN_POSITIVE))
            .fold(0.0, f64::max);
        Ok(CheckReport::at_most("deq.truncation_decay", p, worst, 0.1)
            .with_note("largest ratio of the residual at trunc to the residual at 5"))
    });
    vec![residual, decay]
}

fn spacelike_point(rng: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let x = uniform4(rng, 2.0);
        let r = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]).sqrt();
        if r > 0.3 && x[0].abs() < 0.8 * r {
            return x;
        }
    }
}

fn causality(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = cfg.quadrature();
    let (m, dm, l) = (cfg.m(), cfg.dm(), cfg.coupling_l);
    let mut out = Vec::new();
    let params = Params::new()
        .with("mass", cfg.mass)
        .with("samples", 10)
        .with("seed", cfg.seed);
    out.push(timed("causality.jost", params, |p| {
        let mut rng = cfg.rng(600);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            worst = worst.max(jost_symmetry(m, spacelike_point(&mut rng), &q)?.rel_diff);
        }
        Ok(CheckReport::within(
            "causality.jost",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-4),
        ))
    }));

    let params = Params::new()
        .with("mass", cfg.mass)
        .with("dirac_mass", cfg.dirac_mass)
        .with("coupling_l", l)
        .with("samples", 5)
        .with("seed", cfg.seed);
    out.push(timed("causality.antisymmetry", params, |p| {
        let mut rng = cfg.rng(601);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let zeta = spacelike_point(&mut rng);
            let spinors = (rng.gen_range(0..4), rng.gen_range(0..4));
            let r = antisym_check_2pt(l, m, dm, zeta, spinors, &q)?;
            // entries that vanish identically carry no information
            if r.w.norm() > 1e-12 {
                worst = worst.max(r.residual);
            }
        }
        Ok(CheckReport::within(
            "causality.antisymmetry",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-3),
        ))
    }));

    let ell_pp = 1.1 * ell_fundamental(m, l).max(f64::MIN_POSITIVE);
    let params = Params::new()
        .with("mass", cfg.mass)
        .with("coupling_l", l)
        .with("ell_pp", ell_pp)
        .with("grid", cfg.grid)
        .with("seed", cfg.seed);
    out.push(timed("causality.carrier_margin", params, |p| {
        let mut rng = cfg.rng(602);
        let grid: Vec<[f64; 4]> = (0..cfg.grid).map(|_| uniform4(&mut rng, 3.0)).collect();
        let r = carrier_margin(l, m, ell_pp, &grid, &q)?;
        let negatives = r.margins.iter().filter(|&&v| !(v > 0.0)).count();
        Ok(
            CheckReport::at_least("causality.carrier_margin", p, r.min_margin, 0.0).with_note(
                format!("{negatives} of {} margins not positive", grid.len()),
            ),
        )
    }));

    let base = ell_fundamental(m, l).max(0.25);
    let shifts = (1.2 * base, 1.8 * base);
    let params = Params::new()
        .with("mass", cfg.mass)
        .with("coupling_l", l)
        .with("shifts", vec![shifts.0, shifts.1])
        .with("nodes", cfg.functional_nodes);
    out.push(timed("causality.contour_invariance", params, |p| {
        let r = ChargeVector::new(vec![-1, 1])?;
        let q4 = FunctionalQuadrature {
            nodes: cfg.functional_nodes,
            propagator: q,
        };
        let diff = deform_invariance(l, m, &r, &GaussianTest::default(), shifts, &q4)?;
        Ok(CheckReport::within(
            "causality.contour_invariance",
            p,
            diff,
            0.0,
            cfg.tol_or(1e-3),
        ))
    }));
    out
}

fn localize(cfg: &CheckConfig) -> Vec<CheckReport> {
    let f = StripTestFunction::sech();
    let tol = cfg.tol_or(1e-8);
    let started = Instant::now();
    let report = localization_report_with(&f, &cfg.a_values, cfg.nmax, tol);
    let per_entry_ms = started.elapsed().as_secs_f64() * 1e3 / report.entries.len().max(1) as f64;
    report
        .entries
        .into_iter()
        .map(|e| {
            let params = Params::new()
                .with("function", f.name.clone())
                .with("a", e.a)
                .with("nmax", cfg.nmax);
            let note = format!("{:?}: {}", e.verdict, e.interpretation).to_lowercase();
            let mut r = if e.a.abs() < FRAC_PI_2 {
                CheckReport::within(
                    "localize.delta_series",
                    params,
                    e.partial_sum,
                    e.target,
                    tol,
                )
            } else {
                CheckReport::at_least(
                    "localize.delta_series",
                    params,
                    e.max_abs,
                    DIVERGENCE_THRESHOLD,
                )
            };
            r.runtime_ms = per_entry_ms;
            r.with_note(note)
        })
        .collect()
}

fn dirac(cfg: &CheckConfig) -> Vec<CheckReport> {
    let q = cfg.quadrature();
    let (m, dm, l) = (cfg.m(), cfg.dm(), cfg.coupling_l);
    let mut out = Vec::new();
    out.push(timed(
        "dirac.gamma_check",
        Params::new().with("basis", "dirac"),
        |p| {
            let r = gamma_check(&GammaBasis::dirac())?;
            Ok(CheckReport::within(
                "dirac.gamma_check",
                p,
                r.max_deviation,
                0.0,
                1e-12,
            ))
        },
    ));

    let params = Params::new()
        .with("dirac_mass", cfg.dirac_mass)
        .with("samples", 20)
        .with("seed", cfg.seed);
    out.push(timed("dirac.trace_identity", params, |p| {
        let mut rng = cfg.rng(800);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let z = ComplexFourVector::with_time_damping(
                uniform4(&mut rng, 1.5),
                rng.gen_range(0.3..1.0),
            );
            let tr = s_minus(dm, &z, &q)?.trace();
            let expected = 4.0 * cfg.dirac_mass * d_minus(dm, &z, &q)?;
            worst = worst.max((tr - expected).norm() / expected.norm().max(1e-300));
        }
        Ok(CheckReport::within(
            "dirac.trace_identity",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-10),
        ))
    }));

    let random_labels = |rng: &mut ChaCha8Rng| -> Vec<Label> {
        use FieldKind::*;
        let orders = [
            [Psi, PsiBar, Psi, PsiBar],
            [Psi, Psi, PsiBar, PsiBar],
            [PsiBar, Psi, PsiBar, Psi],
        ];
        let kinds = orders[rng.gen_range(0..orders.len())];
        kinds
            .iter()
            .map(|&kind| Label {
                kind,
                spinor: rng.gen_range(0..4),
            })
            .collect()
    };
    let params = Params::new()
        .with("dirac_mass", cfg.dirac_mass)
        .with("samples", 10)
        .with("seed", cfg.seed);
    out.push(timed("dirac.determinant_oracle", params, |p| {
        let mut rng = cfg.rng(801);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let x: Vec<[f64; 4]> = (0..4).map(|_| uniform4(&mut rng, 1.0)).collect();
            let pts = ContourSpec::evenly_spaced(4, 0.5).place(&x)?;
            let labels = random_labels(&mut rng);
            let a = dirac_npoint(dm, &pts, &labels, &q)?;
            let b = dirac_npoint_matchings(dm, &pts, &labels, &q)?;
            worst = worst.max(rel(a, b));
        }
        Ok(CheckReport::within(
            "dirac.determinant_oracle",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-12),
        ))
    }));

    let params = Params::new()
        .with("mass", cfg.mass)
        .with("dirac_mass", cfg.dirac_mass)
        .with("coupling_l", l)
        .with("samples", 10)
        .with("seed", cfg.seed);
    out.push(timed("dirac.factorization", params, |p| {
        let mut rng = cfg.rng(802);
        let mut worst: f64 = 0.0;
        for _ in 0..10 {
            let x: Vec<[f64; 4]> = (0..4).map(|_| uniform4(&mut rng, 1.0)).collect();
            let pts = ContourSpec::evenly_spaced(4, 0.5).place(&x)?;
            let labels = random_labels(&mut rng);
            let r = charges_for(&labels)?;
            let joint = full_model_vev(l, m, dm, &pts, &r, &labels, &q)?;
            let product = dirac_npoint(dm, &pts, &labels, &q)? * rho_vev(l, m, &pts, &r, &q)?;
            worst = worst.max(rel(joint, product));
        }
        Ok(CheckReport::within(
            "dirac.factorization",
            p,
            worst,
            0.0,
            cfg.tol_or(1e-12),
        ))
    }));
    out
}
