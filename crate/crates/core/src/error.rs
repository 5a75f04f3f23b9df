use thiserror::Error;

/// Errors raised by the numerical and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: {0}")]
    Convergence(String),

    #[error(
        "singular evaluation point: |z0 -/+ |x|| = {distance:.3e} is below the floor {floor:.1e}"
    )]
    Singularity { distance: f64, floor: f64 },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("enumeration budget exceeded: {legs} legs (limit {limit})")]
    Budget { legs: usize, limit: usize },

    #[error("missing contraction channel: {0}")]
    MissingChannel(String),

    #[error("empty coefficient window [{lo}, {hi}]")]
    EmptyWindow { lo: usize, hi: usize },

    #[error("determinant vanishes along the continuation path near s = {s:.6}")]
    Branch { s: f64 },

    #[error("index {index} out of range for size {size}")]
    Index { index: usize, size: usize },

    #[error("holomorphy margin {margin:.3e} is not positive")]
    Margin { margin: f64 },

    #[error("radius {radius} is not inside the strip of half-width {half_width}")]
    Radius { radius: f64, half_width: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("Clifford relation violated at (mu, nu) = ({mu}, {nu}): {detail}")]
    Algebra {
        mu: usize,
        nu: usize,
        detail: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
