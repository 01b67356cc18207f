//! Fixed inputs shared by the benchmarks.

use beta_forge::geometry::ExpansionParams;
use beta_forge::numeric::rat;
use beta_forge::Digit;

/// Rational bases used for the dimension bounds.
pub const DIMENSION_CASES: [(Digit, i64, i64); 4] = [(1, 3, 2), (2, 9, 5), (3, 13, 5), (4, 29, 10)];

pub fn rational_params(m: Digit, num: i64, den: i64) -> ExpansionParams {
    ExpansionParams::rational(m, rat::r(num, den)).expect("base in range")
}
