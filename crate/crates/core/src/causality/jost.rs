use num_complex::Complex64;
use serde::Serialize;

use crate::diracfree::{s_boundary_with, GammaBasis};
use crate::error::{Error, Result};
use crate::gaussmodel::{det_inv_sqrt, AMatrix};
use crate::propagator::{
    boundary_value, boundary_value_order, ComplexFourVector, Mass, QuadratureConfig,
};

/// Denominator floor for relative residuals.
pub const RESIDUAL_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JostReport {
    /// Boundary value of `D` at `zeta`.
    pub forward: Complex64,
    /// Boundary value of `D` at `-zeta`.
    pub backward: Complex64,
    pub rel_diff: f64,
}

fn require_spacelike(zeta: [f64; 4]) -> Result<()> {
    let sq = ComplexFourVector::from_real(zeta).minkowski_sq().re;
    if !(sq < 0.0) {
        return Err(Error::Domain(format!(
            "{zeta:?} is not spacelike (minkowski square {sq})"
        )));
    }
    Ok(())
}

fn neg(x: [f64; 4]) -> [f64; 4] {
    x.map(|v| -v)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(RESIDUAL_FLOOR)
}

/// Compares the boundary values of `D` at `zeta` and `-zeta` for a real
/// spacelike `zeta`.
pub fn jost_symmetry(m: Mass, zeta: [f64; 4], q: &QuadratureConfig) -> Result<JostReport> {
    let order = q.extrapolation_epsilons().len() - 1;
    jost_symmetry_order(m, zeta, q, order)
}

/// [`jost_symmetry`] with an explicit extrapolation order.
pub fn jost_symmetry_order(
    m: Mass,
    zeta: [f64; 4],
    q: &QuadratureConfig,
    order: usize,
) -> Result<JostReport> {
    require_spacelike(zeta)?;
    let forward = boundary_value_order(m, zeta, q, order)?;
    let backward = boundary_value_order(m, neg(zeta), q, order)?;
    Ok(JostReport {
        forward,
        backward,
        rel_diff: rel(forward, backward),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AntisymReport {
    /// `<psi_alpha(x) psibar_beta(y)>` in the full model, `x - y = zeta`.
    pub w: Complex64,
    /// `<psibar_beta(y) psi_alpha(x)>`.
    pub w_swapped: Complex64,
    /// `|w + w_swapped| / max(|w|, floor)`.
    pub residual: f64,
}

/// Spacelike anticommutation check for the two-point function of the
/// product field, from extrapolated boundary values.
pub fn antisym_check_2pt(
    l: f64,
    m: Mass,
    dirac_mass: Mass,
    zeta: [f64; 4],
    spinors: (usize, usize),
    q: &QuadratureConfig,
) -> Result<AntisymReport> {
    require_spacelike(zeta)?;
    antisym_residual_2pt(l, m, dirac_mass, zeta, spinors, q)
}

/// The same residual without the spacelike precondition, for contrast
/// runs at timelike separation.
pub fn antisym_residual_2pt(
    l: f64,
    m: Mass,
    dirac_mass: Mass,
    zeta: [f64; 4],
    (alpha, beta): (usize, usize),
    q: &QuadratureConfig,
) -> Result<AntisymReport> {
    if alpha >= 4 || beta >= 4 {
        return Err(Error::Index {
            index: alpha.max(beta),
            size: 4,
        });
    }
    let basis = GammaBasis::dirac();
    // psi then psibar at zeta, psibar then psi at -zeta
    let s_fwd = s_boundary_with(&basis, dirac_mass, zeta, 1.0, q)?.0[(alpha, beta)];
    let s_bwd = s_boundary_with(&basis, dirac_mass, neg(zeta), -1.0, q)?.0[(alpha, beta)];
    let rho = |x: [f64; 4]| -> Result<Complex64> {
        if l == 0.0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let d = boundary_value(m, x, q)?;
        let a = AMatrix::from_fn(2, |_, _| 2.0 * l * l * d);
        det_inv_sqrt(&a)
    };
    let w = s_fwd * rho(zeta)?;
    let w_swapped = s_bwd * rho(neg(zeta))?;
    Ok(AntisymReport {
        w,
        w_swapped,
        residual: (w + w_swapped).norm() / w.norm().max(RESIDUAL_FLOOR),
    })
}
