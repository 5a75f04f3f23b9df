//! One-dimensional localization demo: the series `sum (a^n/n!) delta^(n)`
//! applied to strip-holomorphic test functions converges exactly when the
//! shift stays inside the strip.

mod series;
mod strip;

pub use series::{
    cauchy_nodes, delta_series_apply, localization_report, localization_report_with, taylor_coeffs,
    working_radius, DeltaSeries, DeltaSums, LocalizationEntry, LocalizationReport, Verdict,
    DEFAULT_TOL, DIVERGENCE_THRESHOLD, MIN_CAUCHY_NODES,
};
pub use strip::StripTestFunction;
