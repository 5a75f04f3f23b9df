//! Wick power series: the multi-index vacuum-expectation formula, a
//! brute-force pairing oracle, the exponential closed form and
//! coefficient growth.

mod growth;
mod jaffe;
mod oracle;
mod pairing;
mod series;

pub use growth::{convergence_margin, exp_vev_closed, sigma_growth, SigmaEstimate};
pub use jaffe::{jaffe_partial_sums, jaffe_vev, jaffe_vev_mixed, ContractionIndex};
pub use oracle::{mixed_monomial_vev_oracle, monomial_vev_oracle, pairing_sum, Leg, LEG_BUDGET};
pub use pairing::PairingMatrix;
pub use series::WickSeries;
