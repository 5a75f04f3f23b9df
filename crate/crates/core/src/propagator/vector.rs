use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of complexified Minkowski space, metric signature (+,-,-,-).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexFourVector(pub [Complex64; 4]);

impl ComplexFourVector {
    pub fn new(z0: Complex64, z1: Complex64, z2: Complex64, z3: Complex64) -> Self {
        Self([z0, z1, z2, z3])
    }

    pub fn from_real(x: [f64; 4]) -> Self {
        Self(x.map(|c| Complex64::new(c, 0.0)))
    }

    /// `(x0 - i eps, x1, x2, x3)`.
    pub fn with_time_damping(x: [f64; 4], eps: f64) -> Self {
        let mut z = Self::from_real(x);
        z.0[0].im = -eps;
        z
    }

    pub fn zero() -> Self {
        Self([Complex64::new(0.0, 0.0); 4])
    }

    pub fn time(&self) -> Complex64 {
        self.0[0]
    }

    pub fn real(&self) -> [f64; 4] {
        self.0.map(|c| c.re)
    }

    pub fn imag(&self) -> [f64; 4] {
        self.0.map(|c| c.im)
    }

    pub fn conj(&self) -> Self {
        Self(self.0.map(|c| c.conj()))
    }

    /// `z0^2 - z1^2 - z2^2 - z3^2`.
    pub fn minkowski_sq(&self) -> Complex64 {
        let [z0, z1, z2, z3] = self.0;
        z0 * z0 - z1 * z1 - z2 * z2 - z3 * z3
    }

    pub fn has_real_spatial_part(&self) -> bool {
        self.0[1..].iter().all(|c| c.im == 0.0)
    }

    /// Euclidean norm of the real spatial part.
    pub fn spatial_norm(&self) -> f64 {
        let [_, x1, x2, x3] = self.0;
        (x1.re * x1.re + x2.re * x2.re + x3.re * x3.re).sqrt()
    }

    /// Rejects spatial imaginary parts, which the radial integrals
    /// cannot handle.
    pub(crate) fn require_real_spatial(&self) -> Result<()> {
        if self.has_real_spatial_part() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "spatial components must be real, got imaginary parts {:?}",
                &self.imag()[1..]
            )))
        }
    }
}

impl Add for ComplexFourVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] + rhs.0[k]))
    }
}

impl Sub for ComplexFourVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self(std::array::from_fn(|k| self.0[k] - rhs.0[k]))
    }
}

impl Neg for ComplexFourVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self(self.0.map(|c| -c))
    }
}

/// Mass in inverse length units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Mass(f64);

impl Mass {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value >= 0.0 {
            Ok(Self(value))
        } else {
            Err(Error::Domain(format!(
                "mass must be finite and non-negative, got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Knobs for the radial quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Imaginary-time damping used by sweeps that need one.
    pub epsilon: f64,
    /// Largest admissible upper limit of the momentum integral.
    pub cutoff: f64,
    /// Gauss-Legendre nodes per panel.
    pub nodes: usize,
    pub rel_tol: f64,
    /// Number of damping values `1e-2, 1e-3, ...` used for `eps -> 0`
    /// extrapolation.
    pub extrapolation_steps: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.5,
            cutoff: 1.0e4,
            nodes: 16,
            rel_tol: 1.0e-10,
            extrapolation_steps: 3,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.cutoff > 0.0 && self.rel_tol > 0.0) || self.nodes == 0 {
            return Err(Error::Precondition(format!(
                "invalid quadrature config {self:?}"
            )));
        }
        Ok(())
    }

    /// Damping values used for `eps -> 0` extrapolation.
    pub fn extrapolation_epsilons(&self) -> Vec<f64> {
        (0..self.extrapolation_steps.max(1))
            .map(|k| 10f64.powi(-2 - k as i32))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minkowski_square_is_rotation_invariant() {
        let z = ComplexFourVector::new(
            Complex64::new(1.0, -0.3),
            Complex64::new(0.4, 0.0),
            Complex64::new(0.2, 0.0),
            Complex64::new(0.1, 0.0),
        );
        // rotation by 90 degrees about the z axis
        let w = ComplexFourVector::new(z.0[0], -z.0[2], z.0[1], z.0[3]);
        assert!((z.minkowski_sq() - w.minkowski_sq()).norm() < 1e-15);
        assert!((z.spatial_norm() - w.spatial_norm()).abs() < 1e-15);
    }

    #[test]
    fn mass_rejects_negative() {
        assert!(Mass::new(-1.0).is_err());
        assert!(Mass::new(f64::NAN).is_err());
        assert_eq!(Mass::new(0.0).unwrap().value(), 0.0);
    }

    #[test]
    fn imaginary_spatial_part_is_rejected() {
        let mut z = ComplexFourVector::from_real([0.0, 1.0, 0.0, 0.0]);
        assert!(z.require_real_spatial().is_ok());
        z.0[2].im = 0.1;
        assert!(matches!(z.require_real_spatial(), Err(Error::Domain(_))));
    }
}
