//! Constants, expansions and dimension bounds for β-expansions over the
//! integer alphabets `{0, …, m}`.

pub mod constants;
pub mod dimension;
pub mod expansions;
pub mod geometry;
pub mod numeric;
pub mod oracle;
pub mod sequence;

pub use numeric::{AlgebraicNumber, CertifiedValue, IntPolynomial, NumberField, Rational, Scalar};
pub use sequence::{Digit, DigitSequence};
