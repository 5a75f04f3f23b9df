use num_complex::Complex64;
use serde::Serialize;

use super::strip::StripTestFunction;
use crate::error::{Error, Result};

/// Minimum number of trapezoid nodes on the Cauchy circle.
pub const MIN_CAUCHY_NODES: usize = 256;

/// Partial sums above this magnitude count as diverging.
pub const DIVERGENCE_THRESHOLD: f64 = 1e6;

pub const DEFAULT_TOL: f64 = 1e-8;

/// Node count for coefficients up to order `n`.
pub fn cauchy_nodes(n: usize) -> usize {
    MIN_CAUCHY_NODES.max((4 * (n + 1)).next_power_of_two())
}

/// `c_k = f^(k)(0) / k!` for `k <= n` from the trapezoid rule on the circle
/// `|z| = radius`. `c_0` is `f(0)` itself.
pub fn taylor_coeffs(f: &StripTestFunction, n: usize, radius: f64) -> Result<Vec<Complex64>> {
    if !(radius > 0.0 && radius < f.half_width) {
        return Err(Error::Radius {
            radius,
            half_width: f.half_width,
        });
    }
    let nodes = cauchy_nodes(n);
    let values: Vec<Complex64> = (0..nodes)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / nodes as f64;
            f.eval(Complex64::from_polar(radius, theta))
        })
        .collect();
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(f.eval(Complex64::new(0.0, 0.0)));
    for k in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            // e^{-i k theta_j}, with the index reduced to keep the angle small
            let phase = ((k * j) % nodes) as f64 / nodes as f64;
            acc += v * Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase);
        }
        coeffs.push(acc / (nodes as f64 * radius.powi(k as i32)));
    }
    Ok(coeffs)
}

/// Circle radius used by [`delta_series_apply`]: just inside the strip for
/// finite half-width, otherwise `max(1, 1.5 |a|)`.
pub fn working_radius(f: &StripTestFunction, n: usize, a: f64) -> f64 {
    if f.is_entire() {
        (1.5 * a.abs()).max(1.0)
    } else {
        f.half_width * (-40.0 / cauchy_nodes(n) as f64).exp()
    }
}

/// Truncated `sum_{k <= n} (a^k / k!) delta^(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaSeries {
    pub a: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeltaSums {
    pub a: f64,
    /// `S_0, ..., S_n` with `S_N = sum_{k <= N} (-a)^k c_k`.
    pub partial_sums: Vec<Complex64>,
}

impl DeltaSums {
    pub fn value(&self) -> Complex64 {
        *self.partial_sums.last().expect("at least S_0")
    }

    pub fn max_abs(&self) -> f64 {
        self.partial_sums
            .iter()
            .map(|s| s.norm())
            .fold(0.0, f64::max)
    }
}

impl DeltaSeries {
    pub fn apply(&self, f: &StripTestFunction) -> DeltaSums {
        delta_series_apply(f, self.a, self.n)
    }
}

/// Applies the truncated series to `f`. Divergence shows up as growth of
/// the partial sums, not as an error.
pub fn delta_series_apply(f: &StripTestFunction, a: f64, n: usize) -> DeltaSums {
    let radius = working_radius(f, n, a);
    let coeffs = taylor_coeffs(f, n, radius).expect("working radius lies inside the strip");
    let mut partial_sums = Vec::with_capacity(n + 1);
    let mut power = 1.0;
    let mut sum = Complex64::new(0.0, 0.0);
    for c in coeffs {
        sum += c * power;
        partial_sums.push(sum);
        power *= -a;
    }
    DeltaSums { a, partial_sums }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Diverging,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalizationEntry {
    pub a: f64,
    pub verdict: Verdict,
    pub partial_sum: Complex64,
    /// `f(-a)` by direct evaluation.
    pub target: Complex64,
    pub error: f64,
    pub max_abs: f64,
    pub interpretation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalizationReport {
    pub function: String,
    /// Strip half-width; `None` for entire functions.
    pub half_width: Option<f64>,
    pub nmax: usize,
    pub tol: f64,
    pub entries: Vec<LocalizationEntry>,
}

pub fn localization_report(
    f: &StripTestFunction,
    a_values: &[f64],
    nmax: usize,
) -> LocalizationReport {
    localization_report_with(f, a_values, nmax, DEFAULT_TOL)
}

pub fn localization_report_with(
    f: &StripTestFunction,
    a_values: &[f64],
    nmax: usize,
    tol: f64,
) -> LocalizationReport {
    let w = f.half_width;
    let entries = a_values
        .iter()
        .map(|&a| {
            let sums = delta_series_apply(f, a, nmax);
            let target = f.eval(Complex64::new(-a, 0.0));
            let partial_sum = sums.value();
            let error = (partial_sum - target).norm();
            let max_abs = sums.max_abs();
            let verdict = if error < tol {
                Verdict::Converged
            } else if max_abs > DIVERGENCE_THRESHOLD {
                Verdict::Diverging
            } else {
                Verdict::Undecided
            };
            let interpretation = if f.is_entire() {
                format!("entire test function: the series reaches f({}) for every shift", -a)
            } else if a.abs() < w {
                format!(
                    "|a| = {} < {w:.6}: the shift stays inside the strip, so {{0}} and {{{}}} are not separated at this length scale",
                    a.abs(),
                    -a
                )
            } else {
                format!(
                    "|a| = {} >= {w:.6}: the shift leaves the strip and the partial sums grow geometrically with ratio {:.4}",
                    a.abs(),
                    a.abs() / w
                )
            };
            LocalizationEntry {
                a,
                verdict,
                partial_sum,
                target,
                error,
                max_abs,
                interpretation,
            }
        })
        .collect();
    LocalizationReport {
        function: f.name.clone(),
        half_width: (!f.is_entire()).then_some(w),
        nmax,
        tol,
        entries,
    }
}
