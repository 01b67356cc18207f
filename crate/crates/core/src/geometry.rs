//! Interval geometry of the maps `T_i(x) = beta x - i` on
//! `I = [0, m/(beta-1)]`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::numeric::{rat, AlgebraicNumber, CertifiedValue, IntPolynomial, NumberField, NumericError, Rational, Scalar};
use crate::sequence::Digit;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error("beta must satisfy 1 < beta <= m + 1")]
    BetaOutOfRange,
    #[error("alphabet maximum must be positive")]
    InvalidAlphabet,
    #[error("digit {digit} outside 0..={max}")]
    DigitOutOfRange { digit: Digit, max: Digit },
    #[error("comparison too close to call at certified precision")]
    Undetermined,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// The base: an exact generator of `Q(beta)` or a certified enclosure.
#[derive(Clone, Debug)]
pub enum Beta {
    Exact(NumberField),
    Certified(CertifiedValue),
}

impl Beta {
    pub fn rational(q: Rational) -> Beta {
        Beta::Exact(NumberField::rational(&q))
    }

    pub fn algebraic(a: &AlgebraicNumber) -> Result<Beta, NumericError> {
        // A generator is needed; when `a` is not the generator of its field,
        // only rational values can be re-expressed.
        if a.representation() == &crate::numeric::RatPoly::x() {
            Ok(Beta::Exact(a.field().clone()))
        } else if let Some(q) = a.as_rational() {
            Ok(Beta::rational(q))
        } else {
            Err(NumericError::IncompatibleField)
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Beta::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Beta::Exact(f) => f.generator().to_f64(),
            Beta::Certified(c) => c.to_f64(),
        }
    }

    pub fn certified(&self, tol: &Rational) -> CertifiedValue {
        match self {
            Beta::Exact(f) => f.generator().to_certified(tol),
            Beta::Certified(c) => c.clone(),
        }
    }
}

/// Alphabet `{0, …, m}` together with the base.
#[derive(Clone, Debug)]
pub struct ExpansionParams {
    m: Digit,
    beta: Beta,
    beta_scalar: Scalar,
    right_end: Scalar,
}

impl ExpansionParams {
    pub fn new(m: Digit, beta: Beta) -> Result<Self, GeometryError> {
        if m == 0 {
            return Err(GeometryError::InvalidAlphabet);
        }
        let beta_scalar = match &beta {
            Beta::Exact(f) => Scalar::Exact(f.generator()),
            Beta::Certified(c) => Scalar::Ball(c.to_interval()),
        };
        let one = rat::int(1);
        let top = rat::int(m as i64 + 1);
        let above_one = match &beta_scalar {
            Scalar::Exact(b) => b.compare_rational(&one)? == Ordering::Greater,
            Scalar::Ball(b) => *b.lo() > one,
        };
        let below_top = match &beta_scalar {
            Scalar::Exact(b) => b.compare_rational(&top)? != Ordering::Greater,
            Scalar::Ball(b) => *b.hi() <= top,
        };
        if !above_one || !below_top {
            return Err(GeometryError::BetaOutOfRange);
        }
        let right_end = Self::scalar_in(&beta_scalar, rat::int(m as i64))
            .div(&beta_scalar.add_rational(&-one))?;
        Ok(Self { m, beta, beta_scalar, right_end })
    }

    pub fn rational(m: Digit, q: Rational) -> Result<Self, GeometryError> {
        Self::new(m, Beta::rational(q))
    }

    pub fn exact(m: Digit, beta: &AlgebraicNumber) -> Result<Self, GeometryError> {
        Self::new(m, Beta::algebraic(beta)?)
    }

    pub fn m(&self) -> Digit {
        self.m
    }

    pub fn k(&self) -> Digit {
        self.m / 2
    }

    pub fn is_even(&self) -> bool {
        self.m.is_multiple_of(2)
    }

    pub fn beta(&self) -> &Beta {
        &self.beta
    }

    pub fn beta_scalar(&self) -> &Scalar {
        &self.beta_scalar
    }

    pub fn is_exact(&self) -> bool {
        self.beta.is_exact()
    }

    pub fn beta_f64(&self) -> f64 {
        self.beta.to_f64()
    }

    fn scalar_in(beta: &Scalar, q: Rational) -> Scalar {
        match beta {
            Scalar::Exact(b) => Scalar::Exact(b.field().element(q)),
            Scalar::Ball(_) => Scalar::Ball(crate::numeric::RatInterval::point(q)),
        }
    }

    /// A rational constant in the same arithmetic mode as `beta`.
    pub fn constant(&self, q: Rational) -> Scalar {
        Self::scalar_in(&self.beta_scalar, q)
    }

    pub fn integer(&self, n: i64) -> Scalar {
        self.constant(rat::int(n))
    }

    /// `(a beta + b) / (c beta + d)`.
    pub fn mobius(&self, a: i64, b: i64, c: i64, d: i64) -> Scalar {
        let num = self.beta_scalar.scale(&rat::int(a)).add_rational(&rat::int(b));
        let den = self.beta_scalar.scale(&rat::int(c)).add_rational(&rat::int(d));
        num.div(&den).expect("denominator is nonzero for beta > 1")
    }

    /// `(a beta + b) / (beta (beta - 1))`, the shape of most interval ends.
    pub fn over_beta_beta_minus_one(&self, a: i64, b: i64) -> Scalar {
        let num = self.beta_scalar.scale(&rat::int(a)).add_rational(&rat::int(b));
        let den = self.beta_scalar.mul(&self.beta_scalar.add_rational(&rat::int(-1)));
        num.div(&den).expect("beta(beta-1) is nonzero for beta > 1")
    }

    /// `q / beta`.
    pub fn over_beta(&self, q: i64) -> Scalar {
        self.integer(q).div(&self.beta_scalar).expect("beta is nonzero")
    }

    /// `m / (beta - 1)`, the right end of `I`.
    pub fn right_end(&self) -> &Scalar {
        &self.right_end
    }

    pub fn interval_i(&self) -> Interval {
        Interval::closed(self.integer(0), self.right_end.clone())
    }

    /// Lifts a rational point into the working arithmetic.
    pub fn point(&self, q: Rational) -> Scalar {
        self.constant(q)
    }
}

/// `T_i(x) = beta x - i`.
pub fn apply_map(params: &ExpansionParams, i: Digit, x: &Scalar) -> Result<Scalar, GeometryError> {
    if i > params.m() {
        return Err(GeometryError::DigitOutOfRange { digit: i, max: params.m() });
    }
    Ok(params.beta_scalar().mul(x).add_rational(&rat::int(-(i as i64))))
}

/// `T_i^{-1}(x) = (x + i) / beta`.
pub fn apply_inverse_map(params: &ExpansionParams, i: Digit, x: &Scalar) -> Result<Scalar, GeometryError> {
    if i > params.m() {
        return Err(GeometryError::DigitOutOfRange { digit: i, max: params.m() });
    }
    Ok(x.add_rational(&rat::int(i as i64)).div(params.beta_scalar())?)
}

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Scalar,
    pub hi: Scalar,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Scalar, hi: Scalar) -> Self {
        Self { lo, hi, lo_closed: true, hi_closed: true }
    }

    /// Membership; `None` when a certified comparison is too close to call.
    pub fn contains(&self, x: &Scalar) -> Option<bool> {
        let lo = x.compare(&self.lo)?;
        let above = match lo {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => return Some(false),
        };
        let hi = x.compare(&self.hi)?;
        let below = match hi {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => return Some(false),
        };
        Some(above && below)
    }

    /// Strict interior membership.
    pub fn contains_interior(&self, x: &Scalar) -> Option<bool> {
        Some(x.compare(&self.lo)? == Ordering::Greater && x.compare(&self.hi)? == Ordering::Less)
    }

    pub fn is_degenerate(&self) -> Option<bool> {
        Some(self.lo.compare(&self.hi)? == Ordering::Equal)
    }

    /// Whether `self` is a subset of `other`.
    pub fn is_subset_of(&self, other: &Interval) -> Option<bool> {
        Some(
            self.lo.compare(&other.lo)? != Ordering::Less
                && self.hi.compare(&other.hi)? != Ordering::Greater,
        )
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// Digit, choice, switch and fixed-digit intervals for one `(m, beta)`.
#[derive(Clone, Debug)]
pub struct IntervalCatalog {
    /// `digit[i]` for `i = 0..=m`.
    pub digit: Vec<Interval>,
    /// `choice[i - 1]` is the `i`-th choice interval, `i = 1..=m`.
    pub choice: Vec<Interval>,
    pub switch_region: Interval,
    /// `fixed_digit[i]`, present for `i = 0` and `i = m` always and for
    /// interior `i` iff `beta >= (m + 2) / 2`.
    pub fixed_digit: Vec<Option<Interval>>,
    /// `[0, m/(beta-1)]`.
    pub whole: Interval,
}

impl IntervalCatalog {
    pub fn choice_interval(&self, i: Digit) -> &Interval {
        &self.choice[i as usize - 1]
    }
}

pub fn build_catalog(params: &ExpansionParams) -> Result<IntervalCatalog, GeometryError> {
    let m = params.m() as i64;
    let digit: Vec<Interval> = (0..=m)
        .map(|i| Interval::closed(params.over_beta(i), params.over_beta_beta_minus_one(i, m - i)))
        .collect();
    let choice: Vec<Interval> = (1..=m)
        .map(|i| {
            Interval::closed(params.over_beta(i), params.over_beta_beta_minus_one(i - 1, m - i + 1))
        })
        .collect();
    let switch_region = Interval::closed(params.over_beta(1), params.over_beta_beta_minus_one(m - 1, 1));

    // beta >= (m + 2)/2  <=>  2 beta - m - 2 >= 0
    let interior_fixed = match params.beta_scalar().scale(&rat::int(2)).compare_rational(&rat::int(m + 2)) {
        Some(o) => o != Ordering::Less,
        None => return Err(GeometryError::Undetermined),
    };
    let mut fixed_digit = Vec::with_capacity(m as usize + 1);
    fixed_digit.push(Some(Interval::closed(params.integer(0), params.over_beta(1))));
    for i in 1..m {
        fixed_digit.push(interior_fixed.then(|| {
            Interval::closed(params.over_beta_beta_minus_one(i - 1, m - i + 1), params.over_beta(i + 1))
        }));
    }
    fixed_digit.push(Some(Interval::closed(
        switch_region.hi.clone(),
        params.right_end().clone(),
    )));
    Ok(IntervalCatalog { digit, choice, switch_region, fixed_digit, whole: params.interval_i() })
}

/// Where a point sits relative to the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Outside,
    /// Every choice interval (by index `1..=m`) and fixed-digit interval
    /// (by index `0..=m`) containing the point.
    Classified { choice: Vec<Digit>, fixed_digit: Vec<Digit> },
    Undetermined,
}

pub fn locate(catalog: &IntervalCatalog, x: &Scalar) -> Location {
    match catalog.whole.contains(x) {
        None => return Location::Undetermined,
        Some(false) => return Location::Outside,
        Some(true) => {}
    }
    let mut choice = Vec::new();
    for (idx, c) in catalog.choice.iter().enumerate() {
        match c.contains(x) {
            None => return Location::Undetermined,
            Some(true) => choice.push(idx as Digit + 1),
            Some(false) => {}
        }
    }
    let mut fixed_digit = Vec::new();
    for (idx, f) in catalog.fixed_digit.iter().enumerate() {
        if let Some(f) = f {
            match f.contains(x) {
                None => return Location::Undetermined,
                Some(true) => fixed_digit.push(idx as Digit),
                Some(false) => {}
            }
        }
    }
    Location::Classified { choice, fixed_digit }
}

/// Digits `i` with `T_i(x)` in `I`, in increasing order.
pub fn admissible_digits(params: &ExpansionParams, x: &Scalar) -> Result<Vec<Digit>, GeometryError> {
    let t = params.beta_scalar().mul(x);
    let right = params.right_end();
    let tf = t.to_f64();
    let rf = right.to_f64();
    let m = params.m() as i64;
    // Candidates from a float estimate, widened by one on each side; the
    // exact checks below decide.
    let lo = ((tf - rf).floor() as i64 - 1).clamp(0, m);
    let hi = (tf.ceil() as i64 + 1).clamp(0, m);
    let mut out = Vec::new();
    for i in lo..=hi {
        let y = t.add_rational(&rat::int(-i));
        let nonneg = match y.compare_rational(&rat::int(0)) {
            Some(o) => o != Ordering::Less,
            None => return Err(GeometryError::Undetermined),
        };
        if !nonneg {
            continue;
        }
        let inside = match y.compare(right) {
            Some(o) => o != Ordering::Greater,
            None => return Err(GeometryError::Undetermined),
        };
        if inside {
            out.push(i as Digit);
        }
    }
    Ok(out)
}

/// `(m + sqrt(m^2 + 4)) / 2`, the upper limit for the switch-region bounce.
pub fn switch_bounce_bound(m: Digit) -> AlgebraicNumber {
    let m = m as i64;
    let p = IntPolynomial::from_i64(&[-1, -m, 1]);
    NumberField::new(p, rat::int(m), rat::int(m + 1))
        .expect("x^2 - m x - 1 has one root in (m, m+1)")
        .generator()
}
