//! Exact arithmetic in a simple extension `Q(beta)`.
//!
//! `beta` is pinned down by an integer polynomial together with a rational
//! isolating interval containing exactly one of its real roots. Elements are
//! rational polynomials in `beta` reduced modulo the defining polynomial.
//! Equality is decided symbolically; strict order is decided by evaluating the
//! element over a (lazily refined) isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::poly::{sign_of, IntPolynomial, RatPoly};
use super::rat;
use super::{CertifiedValue, NumericError, Rational};

/// Bisection steps a single sign query may spend refining the isolating
/// interval before falling back to the symbolic zero test.
pub const MAX_SIGN_REFINEMENTS: usize = 256;

#[derive(Clone, Debug)]
struct Isolation {
    lo: Rational,
    hi: Rational,
    /// Set when a bisection midpoint turned out to be the root itself.
    exact: Option<Rational>,
}

struct FieldInner {
    minpoly: IntPolynomial,
    modulus: RatPoly,
    isolation: Mutex<Isolation>,
}

/// The field `Q(beta)` for one real root `beta` of an integer polynomial.
///
/// Cloning is cheap (shared handle). Refinements of the isolating interval
/// are cached and shared between clones; every cached interval still
/// brackets the same root, so results never depend on cache state.
#[derive(Clone)]
pub struct NumberField(Arc<FieldInner>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.isolating_interval();
        f.debug_struct("NumberField")
            .field("minpoly", &self.0.minpoly.to_string())
            .field("lo", &lo.to_string())
            .field("hi", &hi.to_string())
            .finish()
    }
}

impl NumberField {
    /// Builds the field for the unique root of `minpoly` in the open interval
    /// `(lo, hi)`.
    pub fn new(minpoly: IntPolynomial, lo: Rational, hi: Rational) -> Result<Self, NumericError> {
        if minpoly.degree() == 0 {
            return Err(NumericError::NoRoot);
        }
        if lo >= hi {
            return Err(NumericError::EmptyInterval);
        }
        let modulus = minpoly.to_rational().monic();
        let count = open_root_count(&modulus, &lo, &hi);
        match count {
            0 => return Err(NumericError::NoRoot),
            1 => {}
            n => return Err(NumericError::MultipleRoots { count: n }),
        }
        let exact = if minpoly.degree() == 1 {
            // a x + b = 0
            Some(-modulus.coefficient(0))
        } else {
            None
        };
        Ok(Self(Arc::new(FieldInner {
            minpoly,
            modulus,
            isolation: Mutex::new(Isolation { lo, hi, exact }),
        })))
    }

    /// `Q` itself, presented as `Q(q)` with defining polynomial `den*x - num`.
    pub fn rational(q: &Rational) -> Self {
        let minpoly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]);
        let modulus = minpoly.to_rational().monic();
        let one = Rational::one();
        Self(Arc::new(FieldInner {
            minpoly,
            modulus,
            isolation: Mutex::new(Isolation {
                lo: q - &one,
                hi: q + &one,
                exact: Some(q.clone()),
            }),
        }))
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.0.minpoly
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.degree()
    }

    pub(crate) fn modulus(&self) -> &RatPoly {
        &self.0.modulus
    }

    /// `Some(q)` when `beta` is the rational `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.lock().exact.clone()
    }

    /// Current (possibly refined) isolating interval.
    pub fn isolating_interval(&self) -> (Rational, Rational) {
        let iso = self.lock();
        match &iso.exact {
            Some(q) if self.degree() > 1 => (q.clone(), q.clone()),
            _ => (iso.lo.clone(), iso.hi.clone()),
        }
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Isolation> {
        match self.0.isolation.lock() {
            Ok(g) => g,
            Err(poisoned) => poisoned.into_inner(),
        }
    }

    /// One bisection step on the isolating interval; returns the new interval.
    fn refine_once(&self) -> Isolation {
        let current = self.lock().clone();
        if current.exact.is_some() {
            return current;
        }
        let mid = (&current.lo + &current.hi) / Rational::from_integer(BigInt::from(2));
        let at_mid = self.0.modulus.eval(&mid);
        let next = if at_mid.is_zero() {
            Isolation { lo: current.lo.clone(), hi: current.hi.clone(), exact: Some(mid) }
        } else {
            let at_lo = self.0.modulus.eval(&current.lo);
            if sign_of(&at_lo) != 0 && sign_of(&at_lo) != sign_of(&at_mid) {
                Isolation { lo: current.lo.clone(), hi: mid, exact: None }
            } else if sign_of(&at_lo) == 0 {
                // lo itself is not inside the open interval, so the root is
                // strictly inside; fall back to a Sturm count.
                if open_root_count(&self.0.modulus, &current.lo, &mid) == 1 {
                    Isolation { lo: current.lo.clone(), hi: mid, exact: None }
                } else {
                    Isolation { lo: mid, hi: current.hi.clone(), exact: None }
                }
            } else {
                Isolation { lo: mid, hi: current.hi.clone(), exact: None }
            }
        };
        let mut guard = self.lock();
        let narrower = guard.exact.is_none()
            && (next.exact.is_some() || &next.hi - &next.lo < &guard.hi - &guard.lo);
        if narrower {
            *guard = next.clone();
        }
        guard.clone()
    }

    /// Refines until the isolating interval is no wider than `width`.
    pub fn refine_to(&self, width: &Rational) -> (Rational, Rational) {
        loop {
            let iso = self.lock().clone();
            if let Some(q) = iso.exact {
                return (q.clone(), q);
            }
            if &iso.hi - &iso.lo <= *width {
                return (iso.lo, iso.hi);
            }
            self.refine_once();
        }
    }

    /// Whether two handles denote the same field (same polynomial, same root).
    pub fn same_as(&self, other: &NumberField) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.minpoly != other.0.minpoly {
            return false;
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a == b;
        }
        let (alo, ahi) = self.isolating_interval();
        let (blo, bhi) = other.isolating_interval();
        let lo = rat::max(&alo, &blo);
        let hi = rat::min(&ahi, &bhi);
        if lo > hi {
            return false;
        }
        if lo == hi {
            return self.0.modulus.eval(&lo).is_zero();
        }
        // Both intervals hold exactly one root; they name the same root iff
        // the overlap holds one.
        self.0.modulus.count_roots(&lo, &hi) >= 1
    }

    /// The field generated by `beta + shift`.
    pub fn translate(&self, shift: &Rational) -> NumberField {
        if let Some(q) = self.as_rational() {
            return NumberField::rational(&(q + shift));
        }
        let shifted = self.0.modulus.taylor_shift(&-shift);
        let minpoly = IntPolynomial::from_rational(&shifted);
        let (lo, hi) = self.isolating_interval();
        let modulus = minpoly.to_rational().monic();
        Self(Arc::new(FieldInner {
            minpoly,
            modulus,
            isolation: Mutex::new(Isolation { lo: lo + shift, hi: hi + shift, exact: None }),
        }))
    }

    pub fn generator(&self) -> AlgebraicNumber {
        AlgebraicNumber::from_poly(self, RatPoly::x())
    }

    pub fn element(&self, q: Rational) -> AlgebraicNumber {
        AlgebraicNumber::from_poly(self, RatPoly::constant(q))
    }

    pub fn integer(&self, n: i64) -> AlgebraicNumber {
        self.element(rat::int(n))
    }

    /// Sign of `q(beta)` for a rational polynomial `q`.
    pub(crate) fn sign_of_poly(&self, q: &RatPoly) -> Result<Ordering, NumericError> {
        let q = q.rem(&self.0.modulus);
        if q.is_zero() {
            return Ok(Ordering::Equal);
        }
        if q.degree() == 0 {
            return Ok(q.leading().cmp(&Rational::zero()));
        }
        for _ in 0..=MAX_SIGN_REFINEMENTS {
            let iso = self.lock().clone();
            if let Some(root) = &iso.exact {
                return Ok(q.eval(root).cmp(&Rational::zero()));
            }
            let (lo, hi) = eval_on_interval(&q, &iso.lo, &iso.hi);
            if lo.is_positive() {
                return Ok(Ordering::Greater);
            }
            if hi.is_negative() {
                return Ok(Ordering::Less);
            }
            self.refine_once();
        }
        // q(beta) = 0 iff gcd(q, minpoly) vanishes at beta; the gcd divides
        // the defining polynomial, so that happens iff it has a root inside
        // the isolating interval.
        let g = q.gcd(&self.0.modulus);
        if g.degree() >= 1 {
            let (lo, hi) = self.isolating_interval();
            if open_root_count(&g, &lo, &hi) >= 1 {
                return Ok(Ordering::Equal);
            }
        }
        Err(NumericError::SignUndetermined)
    }

    /// Rational enclosure of `q(beta)` no wider than `width`.
    pub(crate) fn enclose_poly(&self, q: &RatPoly, width: &Rational) -> (Rational, Rational) {
        let q = q.rem(&self.0.modulus);
        loop {
            let iso = self.lock().clone();
            if let Some(root) = &iso.exact {
                let v = q.eval(root);
                return (v.clone(), v);
            }
            let (lo, hi) = eval_on_interval(&q, &iso.lo, &iso.hi);
            if &hi - &lo <= *width {
                return (lo, hi);
            }
            self.refine_once();
        }
    }
}

/// Number of roots of `p` in the open interval `(lo, hi)`.
fn open_root_count(p: &RatPoly, lo: &Rational, hi: &Rational) -> usize {
    let half_open = p.count_roots(lo, hi);
    if p.eval(hi).is_zero() {
        half_open.saturating_sub(1)
    } else {
        half_open
    }
}

/// Interval Horner evaluation of `q` over `[lo, hi]`.
fn eval_on_interval(q: &RatPoly, lo: &Rational, hi: &Rational) -> (Rational, Rational) {
    let mut acc_lo = Rational::zero();
    let mut acc_hi = Rational::zero();
    for c in q.coefficients().iter().rev() {
        let products = [&acc_lo * lo, &acc_lo * hi, &acc_hi * lo, &acc_hi * hi];
        let mut pmin = products[0].clone();
        let mut pmax = products[0].clone();
        for p in &products[1..] {
            if *p < pmin {
                pmin = p.clone();
            }
            if *p > pmax {
                pmax = p.clone();
            }
        }
        acc_lo = pmin + c;
        acc_hi = pmax + c;
    }
    (acc_lo, acc_hi)
}

/// An element of `Q(beta)`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    field: NumberField,
    repr: RatPoly,
}

impl AlgebraicNumber {
    fn from_poly(field: &NumberField, repr: RatPoly) -> Self {
        let repr = repr.rem(field.modulus());
        Self { field: field.clone(), repr }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    /// Coefficients of the reduced representation in powers of `beta`.
    pub fn representation(&self) -> &RatPoly {
        &self.repr
    }

    /// The value as a rational when the representation is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.repr.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.repr.coefficient(0)),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    fn check_field(&self, other: &AlgebraicNumber) {
        assert!(
            self.field.same_as(&other.field),
            "arithmetic on elements of different fields"
        );
    }

    pub fn signum(&self) -> Result<Ordering, NumericError> {
        self.field.sign_of_poly(&self.repr)
    }

    /// Exact comparison of two elements of the same field.
    pub fn compare(&self, other: &AlgebraicNumber) -> Result<Ordering, NumericError> {
        if !self.field.same_as(&other.field) {
            return Err(NumericError::IncompatibleField);
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Ok(a.cmp(&b));
        }
        self.field.sign_of_poly(&self.repr.sub(&other.repr))
    }

    pub fn compare_rational(&self, q: &Rational) -> Result<Ordering, NumericError> {
        if let Some(a) = self.as_rational() {
            return Ok(a.cmp(q));
        }
        self.field
            .sign_of_poly(&self.repr.sub(&RatPoly::constant(q.clone())))
    }

    pub fn inverse(&self) -> Result<AlgebraicNumber, NumericError> {
        if let Some(a) = self.as_rational() {
            if a.is_zero() {
                return Err(NumericError::DivisionByZero);
            }
            return Ok(self.field.element(a.recip()));
        }
        let modulus = self.field.modulus();
        let (g, s) = self.repr.gcd_with_cofactor(modulus);
        if g.degree() == 0 {
            return Ok(AlgebraicNumber::from_poly(&self.field, s));
        }
        // Reducible defining polynomial: beta is a root of either g or
        // modulus/g. If it is a root of g the element vanishes.
        if self.field.sign_of_poly(&g)? == Ordering::Equal {
            return Err(NumericError::DivisionByZero);
        }
        let cofactor = modulus.div_rem(&g).0;
        let (g2, s2) = self.repr.gcd_with_cofactor(&cofactor);
        if g2.degree() != 0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(AlgebraicNumber::from_poly(&self.field, s2))
    }

    pub fn checked_div(&self, other: &AlgebraicNumber) -> Result<AlgebraicNumber, NumericError> {
        self.check_field(other);
        Ok(self * &other.inverse()?)
    }

    pub fn scale(&self, q: &Rational) -> AlgebraicNumber {
        AlgebraicNumber { field: self.field.clone(), repr: self.repr.scale(q) }
    }

    pub fn add_rational(&self, q: &Rational) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.clone(),
            repr: self.repr.add(&RatPoly::constant(q.clone())),
        }
    }

    pub fn pow(&self, e: u32) -> AlgebraicNumber {
        let mut acc = self.field.integer(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Rational enclosure of the value no wider than `width`.
    pub fn enclosure(&self, width: &Rational) -> (Rational, Rational) {
        self.field.enclose_poly(&self.repr, width)
    }

    pub fn to_certified(&self, tol: &Rational) -> CertifiedValue {
        let (lo, hi) = self.enclosure(&(tol * Rational::from_integer(BigInt::from(2))));
        CertifiedValue::from_bounds(lo, hi)
    }

    pub fn to_f64(&self) -> f64 {
        if let Some(q) = self.as_rational() {
            return rat::to_f64(&q);
        }
        let (lo, hi) = self.enclosure(&rat::pow2(-60));
        rat::to_f64(&((lo + hi) / Rational::from_integer(BigInt::from(2))))
    }

    /// `floor(value)` decided exactly.
    pub fn floor(&self) -> Result<BigInt, NumericError> {
        if let Some(q) = self.as_rational() {
            return Ok(q.floor().to_integer());
        }
        let (lo, hi) = self.enclosure(&rat::pow2(-20));
        let flo = lo.floor().to_integer();
        let fhi = hi.floor().to_integer();
        if flo == fhi {
            return Ok(flo);
        }
        let mut n = fhi;
        while n > flo {
            if self.compare_rational(&Rational::from_integer(n.clone()))? != Ordering::Less {
                return Ok(n);
            }
            n -= 1;
        }
        Ok(flo)
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraicNumber({} ≈ {})", self, self.to_f64())
    }
}

impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.repr.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.repr.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})b")?,
                _ => write!(f, "({c})b^{i}")?,
            }
        }
        Ok(())
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field.minpoly() == other.field.minpoly()
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl<'a> Add<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
        self.check_field(rhs);
        AlgebraicNumber { field: self.field.clone(), repr: self.repr.add(&rhs.repr) }
    }
}

impl<'a> Sub<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
        self.check_field(rhs);
        AlgebraicNumber { field: self.field.clone(), repr: self.repr.sub(&rhs.repr) }
    }
}

impl<'a> Mul<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &'a AlgebraicNumber) -> AlgebraicNumber {
        self.check_field(rhs);
        AlgebraicNumber::from_poly(&self.field, self.repr.mul(&rhs.repr))
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber { field: self.field.clone(), repr: self.repr.neg() }
    }
}

/// Isolates the unique root of `p` in `(lo, hi)` to an interval of width at
/// most `tol` and returns it as the generator of its field.
pub fn isolate_root(
    p: &IntPolynomial,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
) -> Result<AlgebraicNumber, NumericError> {
    if lo >= hi {
        return Err(NumericError::EmptyInterval);
    }
    let at_lo = p.eval(lo);
    let at_hi = p.eval(hi);
    if !(sign_of(&at_lo) * sign_of(&at_hi) < 0) {
        return Err(NumericError::NoSignChange);
    }
    let modulus = p.to_rational();
    let count = open_root_count(&modulus, lo, hi);
    if count > 1 {
        return Err(NumericError::MultipleRoots { count });
    }
    let lo_sign = sign_of(&at_lo);
    let two = Rational::from_integer(BigInt::from(2));
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while &b - &a > *tol {
        let mid = (&a + &b) / &two;
        let s = sign_of(&modulus.eval(&mid));
        if s == 0 {
            return Ok(NumberField::rational(&mid).generator());
        }
        if s == lo_sign {
            a = mid;
        } else {
            b = mid;
        }
    }
    if p.degree() == 1 {
        let q = -modulus.coefficient(0) / modulus.coefficient(1);
        return Ok(NumberField::rational(&q).generator());
    }
    Ok(NumberField::new(p.clone(), a, b)?.generator())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat::{int, r};

    fn golden() -> NumberField {
        NumberField::new(IntPolynomial::from_i64(&[-1, -1, 1]), int(1), int(2)).unwrap()
    }

    #[test]
    fn golden_ratio_isolates() {
        let tol = r(1, 1_000_000);
        let g = isolate_root(&IntPolynomial::from_i64(&[-1, -1, 1]), &int(1), &int(2), &tol).unwrap();
        let (lo, hi) = g.field().isolating_interval();
        assert!(&hi - &lo <= tol);
        assert!((g.to_f64() - 1.618_034).abs() < 1e-6);
    }

    #[test]
    fn linear_root_is_exact() {
        let two = isolate_root(&IntPolynomial::from_i64(&[-2, 1]), &int(1), &int(3), &r(1, 1000)).unwrap();
        assert_eq!(two.field().as_rational(), Some(int(2)));
        assert_eq!(two.compare_rational(&int(2)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn cubic_root_isolates() {
        let p = IntPolynomial::from_i64(&[-1, 1, -2, 1]);
        let b = isolate_root(&p, &int(1), &int(2), &r(1, 1_000_000)).unwrap();
        assert!((b.to_f64() - 1.754_878).abs() < 1e-6);
    }

    #[test]
    fn isolate_errors() {
        let p = IntPolynomial::from_i64(&[-1, -1, 1]);
        assert_eq!(
            isolate_root(&p, &int(2), &int(3), &r(1, 10)).unwrap_err(),
            NumericError::NoSignChange
        );
        // (x-1)(x-2)(x-3) changes sign across (0, 4) but has three roots.
        let q = IntPolynomial::from_i64(&[-6, 11, -6, 1]);
        assert_eq!(
            isolate_root(&q, &int(0), &int(4), &r(1, 10)).unwrap_err(),
            NumericError::MultipleRoots { count: 3 }
        );
    }

    #[test]
    fn reduction_modulo_minpoly() {
        let f = golden();
        let b = f.generator();
        let b2 = &b * &b;
        let b_plus_1 = b.add_rational(&int(1));
        assert_eq!(b2.compare(&b_plus_1).unwrap(), Ordering::Equal);
        assert_eq!(b2, b_plus_1);
    }

    #[test]
    fn reciprocal_of_beta_minus_one_is_beta() {
        let f = golden();
        let b = f.generator();
        let inv = b.add_rational(&int(-1)).inverse().unwrap();
        assert_eq!(inv.compare(&b).unwrap(), Ordering::Equal);
    }

    #[test]
    fn identity_compares_equal() {
        let b = golden().generator();
        assert_eq!(b.compare(&b.clone()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn strict_order_is_decided() {
        let b = golden().generator();
        assert_eq!(b.compare_rational(&r(1618, 1000)).unwrap(), Ordering::Greater);
        assert_eq!(b.compare_rational(&r(1619, 1000)).unwrap(), Ordering::Less);
        // Very close rational: needs refinement well past the initial interval.
        let near = r(1_618_033_988_749_894_848, 1_000_000_000_000_000_000);
        assert_eq!(b.compare_rational(&near).unwrap(), Ordering::Greater);
    }

    #[test]
    fn incompatible_fields_are_rejected() {
        let a = golden().generator();
        let other = NumberField::new(IntPolynomial::from_i64(&[-2, 0, 1]), int(1), int(2))
            .unwrap()
            .generator();
        assert_eq!(a.compare(&other).unwrap_err(), NumericError::IncompatibleField);
        // Same polynomial, other root.
        let conj = NumberField::new(IntPolynomial::from_i64(&[-1, -1, 1]), int(-1), int(0))
            .unwrap()
            .generator();
        assert_eq!(a.compare(&conj).unwrap_err(), NumericError::IncompatibleField);
    }

    #[test]
    fn independently_built_fields_agree() {
        let a = golden();
        let b = NumberField::new(IntPolynomial::from_i64(&[-1, -1, 1]), r(3, 2), r(5, 3)).unwrap();
        assert!(a.same_as(&b));
        assert_eq!(a.generator().compare(&b.generator()).unwrap(), Ordering::Equal);
    }

    #[test]
    fn zero_detected_symbolically_for_reducible_modulus() {
        // (x^2 - 2)(x - 3) with the root sqrt(2).
        let p = IntPolynomial::from_i64(&[6, -2, -3, 1]);
        let f = NumberField::new(p, int(1), int(2)).unwrap();
        let b = f.generator();
        // b^2 - 2 is not reduced to zero modulo the cubic but vanishes at beta.
        let e = (&b * &b).add_rational(&int(-2));
        assert!(!e.is_zero());
        assert_eq!(e.signum().unwrap(), Ordering::Equal);
        assert_eq!(e.inverse().unwrap_err(), NumericError::DivisionByZero);
        let inv = b.inverse().unwrap();
        assert_eq!((&inv * &b).compare_rational(&int(1)).unwrap(), Ordering::Equal);
    }

    #[test]
    fn translate_shifts_generator() {
        let f = golden();
        let g = f.translate(&r(1, 10));
        assert!((g.generator().to_f64() - 1.718_034).abs() < 1e-6);
        let fr = NumberField::rational(&r(9, 5)).translate(&r(1, 5));
        assert_eq!(fr.as_rational(), Some(int(2)));
    }

    #[test]
    fn floor_is_exact() {
        let b = golden().generator();
        assert_eq!(b.floor().unwrap(), BigInt::from(1));
        let b5 = b.pow(5); // 5b + 3 ≈ 11.09
        assert_eq!(b5.floor().unwrap(), BigInt::from(11));
    }
}
