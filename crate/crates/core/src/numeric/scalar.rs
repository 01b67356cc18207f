//! Points and interval endpoints: exact elements of `Q(beta)` or certified
//! rational enclosures.

use std::cmp::Ordering;
use std::fmt;

use super::rat;
use super::{AlgebraicNumber, NumericError, RatInterval, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Exact(AlgebraicNumber),
    Ball(RatInterval),
}

impl Scalar {
    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&AlgebraicNumber> {
        match self {
            Scalar::Exact(a) => Some(a),
            Scalar::Ball(_) => None,
        }
    }

    /// Rational enclosure (a point for rational exact values).
    pub fn enclosure(&self) -> RatInterval {
        match self {
            Scalar::Exact(a) => match a.as_rational() {
                Some(q) => RatInterval::point(q),
                None => {
                    let (lo, hi) = a.enclosure(&rat::pow2(-(super::certified::BALL_BITS as i64)));
                    RatInterval::new(lo, hi).rounded(super::certified::BALL_BITS)
                }
            },
            Scalar::Ball(b) => b.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(a) => a.to_f64(),
            Scalar::Ball(b) => rat::to_f64(&b.midpoint()),
        }
    }

    fn ball_pair(&self, other: &Scalar) -> (RatInterval, RatInterval) {
        (self.enclosure(), other.enclosure())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
            _ => {
                let (a, b) = self.ball_pair(other);
                Scalar::Ball(a.add(&b))
            }
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a - b),
            _ => {
                let (a, b) = self.ball_pair(other);
                Scalar::Ball(a.sub(&b))
            }
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
            _ => {
                let (a, b) = self.ball_pair(other);
                Scalar::Ball(a.mul(&b))
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, NumericError> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a.checked_div(b)?)),
            _ => {
                let (a, b) = self.ball_pair(other);
                Ok(Scalar::Ball(a.mul(&b.recip()?)))
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Ball(b) => Scalar::Ball(b.neg()),
        }
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.scale(q)),
            Scalar::Ball(b) => Scalar::Ball(b.scale(q)),
        }
    }

    pub fn add_rational(&self, q: &Rational) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(a.add_rational(q)),
            Scalar::Ball(b) => Scalar::Ball(b.add_rational(q)),
        }
    }

    /// Exact comparison when both sides are exact; certified otherwise.
    /// `None` means the order could not be decided.
    pub fn compare(&self, other: &Scalar) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a.compare(b).ok(),
            _ => {
                let (a, b) = self.ball_pair(other);
                a.compare(&b)
            }
        }
    }

    pub fn compare_rational(&self, q: &Rational) -> Option<Ordering> {
        match self {
            Scalar::Exact(a) => a.compare_rational(q).ok(),
            Scalar::Ball(b) => b.compare(&RatInterval::point(q.clone())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(a) => match a.as_rational() {
                Some(q) => write!(f, "{q}"),
                None => write!(f, "{}", rat::format_decimal(&a.to_certified(&rat::pow2(-60)).value, 15)),
            },
            Scalar::Ball(b) => write!(
                f,
                "[{}, {}]",
                rat::format_decimal(b.lo(), 15),
                rat::format_decimal(b.hi(), 15)
            ),
        }
    }
}
