// `!(x > y)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod causality;
pub mod checks;
pub mod diracfree;
pub mod error;
pub mod gaussmodel;
pub mod localize1d;
pub mod propagator;
pub mod quad;
pub mod report;
pub mod wickcomb;

pub use error::{Error, Result};
