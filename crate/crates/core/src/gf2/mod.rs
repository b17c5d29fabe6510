//! Exact sparse polynomial arithmetic over the two-element field, with a
//! per-variable degree weighting and truncated power-series inversion. This
//! is the currency every other module trades in.

mod poly;
mod series;
mod table;
pub mod text;

pub use poly::{GradedPoly, Monomial};
pub use series::TruncatedSeries;
pub use table::VariableTable;

/// Binomial coefficient mod 2 by the Lucas rule: odd exactly when the binary
/// digits of `b` are a subset of those of `a`. Out-of-range arguments
/// (`b > a`, negatives) give 0.
pub fn binom_mod2(a: i64, b: i64) -> bool {
    if b > a || a < 0 || b < 0 {
        return false;
    }
    (b & !a) == 0
}
