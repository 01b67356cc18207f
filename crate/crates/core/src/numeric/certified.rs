//! Certified approximations: rational balls and outward-rounded intervals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat;
use super::{NumericError, Rational};
use crate::sequence::DigitSequence;

/// Working precision (in bits) of interval endpoints after rounding.
pub const BALL_BITS: u32 = 160;

/// Intervals whose gap is narrower than this are treated as touching.
pub fn separation_margin() -> Rational {
    rat::r(1, 1_000_000_000_000)
}

/// A value known to lie in `[value - error_bound, value + error_bound]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CertifiedValue {
    pub value: Rational,
    pub error_bound: Rational,
}

impl CertifiedValue {
    pub fn exact(value: Rational) -> Self {
        Self { value, error_bound: Rational::zero() }
    }

    pub fn new(value: Rational, error_bound: Rational) -> Self {
        assert!(!error_bound.is_negative(), "negative error bound");
        Self { value, error_bound }
    }

    pub fn from_bounds(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted bounds");
        let two = rat::int(2);
        let value = (&lo + &hi) / &two;
        let error_bound = (hi - lo) / two;
        Self { value, error_bound }
    }

    pub fn lo(&self) -> Rational {
        &self.value - &self.error_bound
    }

    pub fn hi(&self) -> Rational {
        &self.value + &self.error_bound
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo() <= *q && *q <= self.hi()
    }

    pub fn to_interval(&self) -> RatInterval {
        RatInterval::new(self.lo(), self.hi())
    }

    pub fn to_f64(&self) -> f64 {
        rat::to_f64(&self.value)
    }

    /// Certified strict comparison; `None` when the enclosures overlap.
    pub fn compare(&self, other: &CertifiedValue) -> Option<Ordering> {
        if self.hi() < other.lo() {
            Some(Ordering::Less)
        } else if self.lo() > other.hi() {
            Some(Ordering::Greater)
        } else if self.error_bound.is_zero() && other.error_bound.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

impl serde::Serialize for CertifiedValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CertifiedValue", 2)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("error_bound", &self.error_bound.to_string())?;
        st.end()
    }
}

impl fmt::Display for CertifiedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ± {:.3e}",
            rat::format_decimal(&self.value, 12),
            rat::to_f64(&self.error_bound)
        )
    }
}

/// Closed rational interval with endpoints kept on a dyadic grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Self { lo, hi }
    }

    pub fn point(q: Rational) -> Self {
        Self { lo: q.clone(), hi: q }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / rat::int(2)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &Rational) -> bool {
        self.lo <= *q && *q <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Rounds outward onto the `2^-bits` grid.
    pub fn rounded(self, bits: u32) -> Self {
        let lo = if rat::is_integer(&self.lo) { self.lo } else { rat::floor_dyadic(&self.lo, bits) };
        let hi = if rat::is_integer(&self.hi) { self.hi } else { rat::ceil_dyadic(&self.hi, bits) };
        Self { lo, hi }
    }

    fn tidy(self) -> Self {
        let small = |q: &Rational| q.denom().bits() <= BALL_BITS as u64;
        if small(&self.lo) && small(&self.hi) {
            self
        } else {
            self.rounded(BALL_BITS)
        }
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }.tidy()
    }

    pub fn sub(&self, other: &RatInterval) -> RatInterval {
        RatInterval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }.tidy()
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add_rational(&self, q: &Rational) -> RatInterval {
        RatInterval { lo: &self.lo + q, hi: &self.hi + q }.tidy()
    }

    pub fn scale(&self, q: &Rational) -> RatInterval {
        let a = &self.lo * q;
        let b = &self.hi * q;
        if q.is_negative() {
            RatInterval { lo: b, hi: a }.tidy()
        } else {
            RatInterval { lo: a, hi: b }.tidy()
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().cloned().unwrap_or_default();
        let hi = products.iter().max().cloned().unwrap_or_default();
        RatInterval { lo, hi }.tidy()
    }

    pub fn recip(&self) -> Result<RatInterval, NumericError> {
        if self.contains_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(RatInterval { lo: self.hi.recip(), hi: self.lo.recip() }.tidy())
    }

    /// Certified comparison. Overlapping intervals, or disjoint ones closer
    /// than the separation margin, are undetermined unless both are the
    /// same point.
    pub fn compare(&self, other: &RatInterval) -> Option<Ordering> {
        if self.is_point() && other.is_point() && self.lo == other.lo {
            return Some(Ordering::Equal);
        }
        let margin = separation_margin();
        if &self.hi + &margin < other.lo {
            Some(Ordering::Less)
        } else if &other.hi + &margin < self.lo {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// `sum_{i=1}^{n_terms} digits_i / beta^i`, with a bound covering rounding
/// and the tail `m * beta^{-n_terms} / (beta - 1)`.
pub fn eval_tail_bounded_series(
    digits: &DigitSequence,
    beta: &CertifiedValue,
    n_terms: usize,
) -> Result<CertifiedValue, NumericError> {
    let bits = BALL_BITS.max(64 + 2 * n_terms.min(4096) as u32 / 3);
    let iv = series_enclosure(digits, &beta.lo(), &beta.hi(), n_terms, bits)?;
    Ok(CertifiedValue::from_bounds(iv.lo, iv.hi))
}

/// Enclosure of the series for `beta` in `[beta_lo, beta_hi]` from the first
/// `n_terms` digits; every later digit is bounded by `alphabet_max`.
pub(crate) fn series_enclosure(
    digits: &DigitSequence,
    beta_lo: &Rational,
    beta_hi: &Rational,
    n_terms: usize,
    bits: u32,
) -> Result<RatInterval, NumericError> {
    if *beta_lo <= Rational::one() {
        return Err(NumericError::BetaNotGreaterThanOne);
    }
    // Digits are nonnegative, so the partial sum is decreasing in beta:
    // evaluate at both ends with outward rounding.
    let partial_at = |b: &Rational, upward: bool| -> Rational {
        let y = b.recip();
        let mut acc = Rational::zero();
        for i in (0..n_terms).rev() {
            let d = digits.digit(i).unwrap_or(0);
            acc = (acc + Rational::from_integer(BigInt::from(d))) * &y;
            acc = if upward { rat::ceil_dyadic(&acc, bits) } else { rat::floor_dyadic(&acc, bits) };
        }
        acc
    };
    let lower = partial_at(beta_hi, false);
    let upper_partial = partial_at(beta_lo, true);
    let m = Rational::from_integer(BigInt::from(digits.alphabet_max()));
    let pow = num_traits::pow(beta_lo.clone(), n_terms);
    let tail_terms = m / (pow * (beta_lo - Rational::one()));
    let upper = rat::ceil_dyadic(&(upper_partial + tail_terms), bits);
    Ok(RatInterval::new(lower, upper))
}
