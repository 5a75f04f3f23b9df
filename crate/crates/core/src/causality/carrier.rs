use std::f64::consts::{PI, SQRT_2};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussmodel::{apply_functional_2pt, ChargeVector, FunctionalQuadrature, TestFunction4};
use crate::propagator::{
    boundary_value, d_minus_decomposed, epsilon_deform, ComplexFourVector, Mass, QuadratureConfig,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarrierReport {
    /// `1 - 2 l^2 |D(x0 - i eps(x), x)|`, one per grid point.
    pub margins: Vec<f64>,
    pub min_margin: f64,
    pub all_positive: bool,
}

/// Margin of the deformed contour `x0 - i eps_{ell''}(x)` at each grid point.
pub fn carrier_margin(
    l: f64,
    m: Mass,
    ell_pp: f64,
    grid: &[[f64; 4]],
    q: &QuadratureConfig,
) -> Result<CarrierReport> {
    if !(m.value() * l < 2.0) {
        return Err(Error::Precondition(format!(
            "m l = {} must be below 2",
            m.value() * l
        )));
    }
    let floor = l / (SQRT_2 * PI);
    if !(ell_pp > floor) {
        return Err(Error::Precondition(format!(
            "deformation length {ell_pp} must exceed l/(sqrt2 pi) = {floor}"
        )));
    }
    let margins: Vec<f64> = if l == 0.0 {
        vec![1.0; grid.len()]
    } else {
        grid.par_iter()
            .map(|&x| {
                let eps = epsilon_deform(ell_pp, x);
                let d = if eps > 0.0 {
                    d_minus_decomposed(m, &ComplexFourVector::with_time_damping(x, eps), q)?
                } else {
                    boundary_value(m, x, q)?
                };
                Ok(1.0 - 2.0 * l * l * d.norm())
            })
            .collect::<Result<_>>()?
    };
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CarrierReport {
        all_positive: margins.iter().all(|&v| v > 0.0),
        min_margin,
        margins,
    })
}

/// Relative difference of the two-point functional between two contour
/// shifts.
pub fn deform_invariance(
    l: f64,
    m: Mass,
    r: &ChargeVector,
    testfn: &dyn TestFunction4,
    shifts: (f64, f64),
    q4: &FunctionalQuadrature,
) -> Result<f64> {
    let a = apply_functional_2pt(l, m, r, testfn, shifts.0, q4)?;
    if shifts.0 == shifts.1 {
        return Ok(0.0);
    }
    let b = apply_functional_2pt(l, m, r, testfn, shifts.1, q4)?;
    Ok((a - b).norm() / a.norm().max(b.norm()).max(super::RESIDUAL_FLOOR))
}
