//! Exact and certified arithmetic: rationals, `Q(beta)`, root isolation and
//! tail-bounded series.

pub mod algebraic;
pub mod certified;
pub mod poly;
pub mod rat;
pub mod scalar;

pub use algebraic::{isolate_root, AlgebraicNumber, NumberField};
pub use certified::{eval_tail_bounded_series, CertifiedValue, RatInterval};
pub use poly::{IntPolynomial, RatPoly};
pub use scalar::Scalar;

use thiserror::Error;

pub type Rational = num_rational::BigRational;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("polynomial does not change sign on the interval")]
    NoSignChange,
    #[error("interval contains {count} roots")]
    MultipleRoots { count: usize },
    #[error("interval contains no root")]
    NoRoot,
    #[error("empty interval")]
    EmptyInterval,
    #[error("elements belong to different number fields")]
    IncompatibleField,
    #[error("division by zero")]
    DivisionByZero,
    #[error("sign could not be determined")]
    SignUndetermined,
    #[error("certified lower edge of beta is not greater than one")]
    BetaNotGreaterThanOne,
}

/// Compares two algebraic numbers exactly.
pub fn algebraic_compare(
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
) -> Result<std::cmp::Ordering, NumericError> {
    a.compare(b)
}
