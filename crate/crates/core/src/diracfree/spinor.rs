use num_complex::Complex64;

use super::gamma::{CMatrix4, GammaBasis};
use crate::error::{Error, Result};
use crate::propagator::{
    boundary_grad, boundary_value, d_minus, d_minus_grad, ComplexFourVector, Mass, QuadratureConfig,
};

/// 4x4 matrix in spinor indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorMatrix(pub CMatrix4);

impl SpinorMatrix {
    pub fn get(&self, alpha: usize, beta: usize) -> Result<Complex64> {
        if alpha >= 4 || beta >= 4 {
            return Err(Error::Index {
                index: alpha.max(beta),
                size: 4,
            });
        }
        Ok(self.0[(alpha, beta)])
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }
}

/// `i gamma^mu grad_mu + sign * M * d`.
pub(crate) fn assemble(
    basis: &GammaBasis,
    dirac_mass: f64,
    d: Complex64,
    grad: &[Complex64; 4],
    sign: f64,
) -> SpinorMatrix {
    let i = Complex64::new(0.0, 1.0);
    let slash = basis.slash(grad) * i;
    SpinorMatrix(slash + CMatrix4::identity() * (d * sign * dirac_mass))
}

/// `<psi_alpha(z1) psibar_beta(z2)>` at `z = z1 - z2`:
/// `(i gamma^mu d_mu + M) D(z)` in the Dirac representation.
pub fn s_minus(
    dirac_mass: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<SpinorMatrix> {
    s_minus_with(&GammaBasis::dirac(), dirac_mass, z, q)
}

pub fn s_minus_with(
    basis: &GammaBasis,
    dirac_mass: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<SpinorMatrix> {
    let d = d_minus(dirac_mass, z, q)?;
    let grad = d_minus_grad(dirac_mass, z, q)?;
    Ok(assemble(basis, dirac_mass.value(), d, &grad, 1.0))
}

/// `<psibar_beta(z1) psi_alpha(z2)>` at `z = z1 - z2`, indexed `[alpha, beta]`:
/// `(i gamma^mu d_mu - M) D(z)`.
pub fn s_bar_minus_with(
    basis: &GammaBasis,
    dirac_mass: Mass,
    z: &ComplexFourVector,
    q: &QuadratureConfig,
) -> Result<SpinorMatrix> {
    let d = d_minus(dirac_mass, z, q)?;
    let grad = d_minus_grad(dirac_mass, z, q)?;
    Ok(assemble(basis, dirac_mass.value(), d, &grad, -1.0))
}

/// Real-argument boundary values of `s_minus` (`sign = 1`) or of the
/// reversed-order function (`sign = -1`) at a spacelike point.
pub fn s_boundary_with(
    basis: &GammaBasis,
    dirac_mass: Mass,
    x: [f64; 4],
    sign: f64,
    q: &QuadratureConfig,
) -> Result<SpinorMatrix> {
    let d = boundary_value(dirac_mass, x, q)?;
    let grad = boundary_grad(dirac_mass, x, q)?;
    Ok(assemble(basis, dirac_mass.value(), d, &grad, sign))
}
