//! Special-function kernel: integer-order Bessel functions, their zeros,
//! and log-space binomial machinery. Everything here is a pure function of
//! its arguments and safe to call concurrently.

mod bessel;
mod binomial;
mod zeros;

pub use bessel::{bessel_j, BesselEvaluator, MAX_BESSEL_ORDER};
pub use binomial::log_binomial;
pub use zeros::{bessel_zero, BesselZeroTable};
