use num_complex::Complex64;
use serde::Serialize;

use super::amatrix::{build_a, det_inv_sqrt, pair_propagators, ChargeVector};
use crate::error::{Error, Result};
use crate::propagator::{d_minus, d_minus_grad, ComplexFourVector, Mass, QuadratureConfig};
use crate::wickcomb::{convergence_margin, jaffe_vev, jaffe_vev_mixed, PairingMatrix, WickSeries};

/// Vacuum expectation of `prod_j :exp(-r_j i l^2 phi(z_j)^2):` in closed
/// form, `(det A)^(-1/2)`.
pub fn rho_vev(
    l: f64,
    m: Mass,
    points: &[ComplexFourVector],
    r: &ChargeVector,
    q: &QuadratureConfig,
) -> Result<Complex64> {
    det_inv_sqrt(&build_a(l, m, points, r, q)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: Complex64,
    /// `1/(2 l^2) - sum |t_jk|`; the expansion is only certified to
    /// converge when this is positive.
    pub margin: f64,
}

impl SeriesValue {
    pub fn within_margin(&self) -> bool {
        self.margin > 0.0
    }
}

/// The same expectation from the truncated multi-index expansion with
/// `t_jk = D(z_j - z_k)`.
pub fn rho_vev_series(
    l: f64,
    m: Mass,
    points: &[ComplexFourVector],
    r: &ChargeVector,
    trunc: usize,
    q: &QuadratureConfig,
) -> Result<SeriesValue> {
    if points.len() != r.len() {
        return Err(Error::SizeMismatch {
            expected: points.len(),
            got: r.len(),
        });
    }
    let d = pair_propagators(m, points, q)?;
    let t = PairingMatrix::from_fn(points.len(), |j, k| d[j][k]);
    let g = l * l;
    let series: Vec<WickSeries> = r
        .as_slice()
        .iter()
        .map(|&rj| WickSeries::exp_square(-(rj as f64) * g, trunc))
        .collect();
    let value = jaffe_vev(&series, &t, trunc)?;
    let margin = if g == 0.0 {
        f64::INFINITY
    } else {
        convergence_margin(g, &t)
    };
    Ok(SeriesValue { value, margin })
}

/// Imaginary time offsets `y_j` placing point `j` on `R^4 + i (y_j, 0, 0, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    pub y: Vec<f64>,
}

impl ContourSpec {
    pub fn new(y: Vec<f64>) -> Self {
        Self { y }
    }

    /// Offsets `0, gap, 2 gap, ...`.
    pub fn evenly_spaced(n: usize, gap: f64) -> Self {
        Self {
            y: (0..n).map(|j| j as f64 * gap).collect(),
        }
    }

    /// Smallest consecutive gap `y_{j+1} - y_j`.
    pub fn min_gap(&self) -> f64 {
        self.y
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Requires every consecutive gap to exceed `gap`.
    pub fn validate(&self, gap: f64) -> Result<()> {
        let g = self.min_gap();
        if self.y.len() > 1 && !(g > gap) {
            return Err(Error::Precondition(format!(
                "contour gap {g} does not exceed the required {gap}"
            )));
        }
        Ok(())
    }

    pub fn place(&self, x: &[[f64; 4]]) -> Result<Vec<ComplexFourVector>> {
        if x.len() != self.y.len() {
            return Err(Error::SizeMismatch {
                expected: self.y.len(),
                got: x.len(),
            });
        }
        Ok(x.iter()
            .zip(&self.y)
            .map(|(p, &y)| {
                let mut z = ComplexFourVector::from_real(*p);
                z.0[0].im = y;
                z
            })
            .collect())
    }
}

/// `min_{j<k} (1 - 2 l^2 |D(z_j - z_k)|)` for the real points `x` placed
/// on `contour`.
pub fn holomorphy_margin(
    l: f64,
    m: Mass,
    contour: &ContourSpec,
    x: &[[f64; 4]],
    q: &QuadratureConfig,
) -> Result<f64> {
    let points = contour.place(x)?;
    if l == 0.0 {
        return Ok(1.0);
    }
    let d = pair_propagators(m, &points, q)?;
    let mut margin = f64::INFINITY;
    for j in 0..points.len() {
        for k in j + 1..points.len() {
            margin = margin.min(1.0 - 2.0 * l * l * d[j][k].norm());
        }
    }
    Ok(margin.min(1.0))
}

/// Both sides of the derivative identity for the pair
/// `< rho(x) rho*(y) >` at `x - y = zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeqSides {
    /// `d_mu (1 - 4 l^4 D^2)^(-1/2)`.
    pub lhs: Complex64,
    /// `2 i l^2 < :(d_mu phi) phi rho:(x) rho*(y) >`, truncated.
    pub rhs: Complex64,
}

impl DeqSides {
    pub fn residual(&self) -> Complex64 {
        self.lhs - self.rhs
    }
}

pub fn deq_sides(
    l: f64,
    m: Mass,
    zeta: &ComplexFourVector,
    mu: usize,
    trunc: usize,
    q: &QuadratureConfig,
) -> Result<DeqSides> {
    if mu >= 4 {
        return Err(Error::Index { index: mu, size: 4 });
    }
    let d = d_minus(m, zeta, q)?;
    let grad = d_minus_grad(m, zeta, q)?;
    let l4 = l.powi(4);
    let lhs = 4.0 * l4 * d * grad[mu] * (1.0 - 4.0 * l4 * d * d).powf(-1.5);

    let g = l * l;
    let mut t = PairingMatrix::uniform(2, d);
    t.set_derivative(0, 1, grad);
    let series = [
        // :(d phi) phi^(2n+1): (i g)^n / n!  ->  b_{2n+2} = (i g)^n (2n+2)! / n!
        WickSeries::shifted_square(g, 2, trunc),
        WickSeries::exp_square(-g, trunc),
    ];
    let rhs = Complex64::new(0.0, 2.0 * g) * jaffe_vev_mixed(&series, 0, mu, &t, trunc)?;
    Ok(DeqSides { lhs, rhs })
}

/// Difference between the two sides of the derivative identity.
pub fn deq_residual(
    l: f64,
    m: Mass,
    zeta: &ComplexFourVector,
    mu: usize,
    trunc: usize,
    q: &QuadratureConfig,
) -> Result<Complex64> {
    Ok(deq_sides(l, m, zeta, mu, trunc, q)?.residual())
}
