//! Jost-point symmetry, spacelike anticommutation, carrier margins of
//! the deformed contour and contour-shift independence.

mod carrier;
mod jost;

pub use carrier::{carrier_margin, deform_invariance, CarrierReport};
pub use jost::{
    antisym_check_2pt, antisym_residual_2pt, jost_symmetry, jost_symmetry_order, AntisymReport,
    JostReport, RESIDUAL_FLOOR,
};
