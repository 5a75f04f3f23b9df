//! Two-point functional `int F(zeta) f(zeta) d^4 zeta` over the plane
//! `Im zeta^0 = -s`, with `F = (det A)^(-1/2)` for two exponential fields.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::amatrix::{det_inv_sqrt, phase_h, AMatrix, ChargeVector};
use crate::error::{Error, Result};
use crate::propagator::{d_minus_decomposed, ComplexFourVector, Mass, QuadratureConfig};
use crate::quad;

/// Holomorphic test function of the relative variable, with a Gaussian
/// envelope of width `envelope_width` on real arguments.
pub trait TestFunction4: Sync {
    fn eval(&self, z: &[Complex64; 4]) -> Complex64;
    fn envelope_width(&self) -> f64;
}

/// `exp(-sum_mu zeta_mu^2 / (2 w^2))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianTest {
    pub width: f64,
}

impl Default for GaussianTest {
    fn default() -> Self {
        Self { width: 1.0 }
    }
}

impl GaussianTest {
    /// `int f d^4 xi = (2 pi w^2)^2`.
    pub fn integral(&self) -> f64 {
        (2.0 * PI * self.width * self.width).powi(2)
    }
}

impl TestFunction4 for GaussianTest {
    fn eval(&self, z: &[Complex64; 4]) -> Complex64 {
        let s: Complex64 = z.iter().map(|c| c * c).sum();
        (-s / (2.0 * self.width * self.width)).exp()
    }

    fn envelope_width(&self) -> f64 {
        self.width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZeroTest;

impl TestFunction4 for ZeroTest {
    fn eval(&self, _: &[Complex64; 4]) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn envelope_width(&self) -> f64 {
        1.0
    }
}

/// Tensor Gauss-Hermite grid for the 4-dimensional functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalQuadrature {
    /// Nodes per axis (at most 12).
    pub nodes: usize,
    /// Settings for the two-point function at each node.
    pub propagator: QuadratureConfig,
}

impl Default for FunctionalQuadrature {
    fn default() -> Self {
        Self {
            nodes: 12,
            propagator: QuadratureConfig::default(),
        }
    }
}

/// Lower bound on `1 - 2 l^2 |D|` over the plane `Im zeta^0 = -s`, from
/// `|D| <= (2 pi s)^-2`.
pub fn plane_margin(l: f64, s: f64) -> f64 {
    1.0 - 2.0 * l * l * (2.0 * PI * s).powi(-2)
}

/// `int_{Im zeta^0 = -shift} (det A(zeta))^(-1/2) f(zeta) d^4 zeta` for the
/// two fields with charges `r`.
pub fn apply_functional_2pt(
    l: f64,
    m: Mass,
    r: &ChargeVector,
    testfn: &dyn TestFunction4,
    shift: f64,
    q4: &FunctionalQuadrature,
) -> Result<Complex64> {
    if r.len() != 2 {
        return Err(Error::SizeMismatch {
            expected: 2,
            got: r.len(),
        });
    }
    if !(shift > 0.0) {
        return Err(Error::Precondition(format!(
            "contour shift must be positive, got {shift}"
        )));
    }
    let margin = plane_margin(l, shift);
    if l != 0.0 && !(margin > 0.0) {
        return Err(Error::Margin { margin });
    }
    if q4.nodes == 0 || q4.nodes > 12 {
        return Err(Error::Precondition(format!(
            "1..=12 nodes per axis, got {}",
            q4.nodes
        )));
    }
    let rule = quad::gauss_hermite(q4.nodes);
    let w = testfn.envelope_width();
    let scale = 2f64.sqrt() * w;
    let coupling = 2.0 * phase_h(r.get(0)) * phase_h(r.get(1)) * (l * l);
    let n = rule.len();

    let slabs: Vec<Result<Complex64>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut acc = Complex64::new(0.0, 0.0);
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let xi = [
                            scale * rule.nodes[a],
                            scale * rule.nodes[b],
                            scale * rule.nodes[c],
                            scale * rule.nodes[d],
                        ];
                        let weight =
                            rule.weights[a] * rule.weights[b] * rule.weights[c] * rule.weights[d];
                        let mut zeta = xi.map(|v| Complex64::new(v, 0.0));
                        zeta[0].im = -shift;
                        let f = testfn.eval(&zeta);
                        if f == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        let kernel = if l == 0.0 {
                            Complex64::new(1.0, 0.0)
                        } else {
                            let dv =
                                d_minus_decomposed(m, &ComplexFourVector(zeta), &q4.propagator)?;
                            det_inv_sqrt(&AMatrix::from_fn(2, |_, _| coupling * dv))?
                        };
                        let envelope =
                            (xi.iter().map(|v| v * v).sum::<f64>() / (2.0 * w * w)).exp();
                        acc += kernel * f * envelope * weight;
                    }
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for s in slabs {
        total += s?;
    }
    Ok(total * scale.powi(4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn charges() -> ChargeVector {
        ChargeVector::new(vec![-1, 1]).unwrap()
    }

    #[test]
    fn zero_test_function() {
        let v = apply_functional_2pt(
            0.5,
            Mass::new(1.0).unwrap(),
            &charges(),
            &ZeroTest,
            0.7,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    /// Trapezoid in `xi^0` on the shifted line times the closed-form
    /// integral over the three real directions.
    fn free_oracle(w: f64, s: f64) -> Complex64 {
        let h = 1e-3;
        let mut acc = Complex64::new(0.0, 0.0);
        let k = (12.0 * w / h) as i64;
        for i in -k..=k {
            let z = Complex64::new(i as f64 * h, -s);
            acc += (-z * z / (2.0 * w * w)).exp();
        }
        acc * h * (2.0 * PI * w * w).powf(1.5)
    }

    #[test]
    fn free_case_matches_quadrature_oracle() {
        let m = Mass::new(1.0).unwrap();
        for (w, s) in [(1.0, 0.3), (0.8, 0.6)] {
            let f = GaussianTest { width: w };
            let v = apply_functional_2pt(0.0, m, &charges(), &f, s, &Default::default()).unwrap();
            let o = free_oracle(w, s);
            assert!((v - o).norm() < 1e-10 * o.norm(), "{v} vs {o}");
            assert!((o - f.integral()).norm() < 1e-10 * f.integral());
        }
    }

    #[test]
    fn margin_is_enforced() {
        let m = Mass::new(1.0).unwrap();
        let f = GaussianTest::default();
        // 1 - 2 l^2 / (2 pi s)^2 <= 0 for l = 1, s = 0.2
        assert!(matches!(
            apply_functional_2pt(1.0, m, &charges(), &f, 0.2, &Default::default()),
            Err(Error::Margin { .. })
        ));
        assert!(matches!(
            apply_functional_2pt(1.0, m, &charges(), &f, -0.2, &Default::default()),
            Err(Error::Precondition(_))
        ));
    }
}
