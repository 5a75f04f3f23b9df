//! Exponential Wick fields `:exp(+/- i l^2 phi^2):`: the determinant
//! closed form for their vacuum expectations, its series cross-check,
//! the derivative identity and the two-point contour functional.

mod amatrix;
mod coords;
mod functional;
mod vev;

pub use amatrix::{
    build_a, continue_branch, det_inv_sqrt, phase_h, q_perturbation, AMatrix, BranchState,
    ChargeVector,
};
pub use coords::{chi_inv, chi_map, z_from_zeta, zeta_from_z};
pub use functional::{
    apply_functional_2pt, plane_margin, FunctionalQuadrature, GaussianTest, TestFunction4, ZeroTest,
};
pub use vev::{
    deq_residual, deq_sides, holomorphy_margin, rho_vev, rho_vev_series, ContourSpec, DeqSides,
    SeriesValue,
};
