//! The complex-argument scalar two-point function, its derivatives and
//! the light-cone geometry used by the bounds.

mod decomposed;
mod direct;
mod geometry;
mod vector;

pub use decomposed::{
    boundary_grad, boundary_value, boundary_value_order, d_minus_decomposed,
    d_minus_decomposed_grad, g_m,
};
pub use direct::{d_minus, d_minus_grad, d_minus_time_derivative_weighted};
pub use geometry::{bound_estimate, dist_to_lightcone, ell_fundamental, epsilon_deform, BoundKind};
pub use vector::{ComplexFourVector, Mass, QuadratureConfig};

/// Below this spatial radius the coincidence-axis limits are used.
pub const COINCIDENCE_RADIUS: f64 = 1e-8;

/// Smallest admissible `|z0 -/+ |x||` for the decomposed form.
pub const SINGULARITY_FLOOR: f64 = 1e-6;
