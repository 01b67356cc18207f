//! Generalized golden ratios, bifurcation constants and generalized
//! Komornik–Loreti constants for the alphabet `{0, …, m}`.

use std::cmp::Ordering;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::certified::series_enclosure;
use crate::numeric::{rat, AlgebraicNumber, CertifiedValue, IntPolynomial, NumberField, NumericError, Rational};
use crate::sequence::{Digit, DigitSequence};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("alphabet maximum must be positive")]
    InvalidAlphabet,
    #[error("tolerance must be positive")]
    InvalidTolerance,
    #[error("series signs at the bracket ends are not opposite")]
    BracketFailure,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Default certified tolerance for constants.
pub fn default_tolerance() -> Rational {
    rat::r(1, 10_000_000_000)
}

/// Classical Thue–Morse bits `λ_0 λ_1 …` with a shared, growable cache.
pub struct ThueMorseGenerator {
    cache: Mutex<Vec<u8>>,
}

impl Default for ThueMorseGenerator {
    fn default() -> Self {
        Self::new()
    }
}

impl ThueMorseGenerator {
    pub fn new() -> Self {
        Self { cache: Mutex::new(vec![0]) }
    }

    /// Process-wide instance.
    pub fn global() -> &'static ThueMorseGenerator {
        static GLOBAL: OnceLock<ThueMorseGenerator> = OnceLock::new();
        GLOBAL.get_or_init(ThueMorseGenerator::new)
    }

    fn ensure(&self, n: usize) -> std::sync::MutexGuard<'_, Vec<u8>> {
        let mut cache = match self.cache.lock() {
            Ok(g) => g,
            Err(poisoned) => poisoned.into_inner(),
        };
        while cache.len() < n {
            let i = cache.len();
            let bit = if i % 2 == 0 { cache[i / 2] } else { 1 - cache[i / 2] };
            cache.push(bit);
        }
        cache
    }

    /// `λ_i`.
    pub fn get(&self, i: usize) -> u8 {
        self.ensure(i + 1)[i]
    }

    /// `λ_0, …, λ_{n-1}`.
    pub fn prefix(&self, n: usize) -> Vec<u8> {
        self.ensure(n)[..n].to_vec()
    }
}

/// `λ_1(m), …, λ_n(m)`: the classical sequence for `m = 1`, `k + λ_i - λ_{i-1}`
/// for `m = 2k` and `k + λ_i` for `m = 2k + 1`.
pub fn generalized_thue_morse(m: Digit, n: usize) -> DigitSequence {
    let lambda = ThueMorseGenerator::global().prefix(n + 1);
    let k = m / 2;
    let digits: Vec<Digit> = (1..=n)
        .map(|i| {
            let cur = lambda[i] as Digit;
            if m.is_multiple_of(2) {
                k + cur - lambda[i - 1] as Digit
            } else {
                k + cur
            }
        })
        .collect();
    DigitSequence::finite(digits, m).expect("digits lie in the alphabet")
}

fn check_m(m: Digit) -> Result<(), ConstantsError> {
    if m == 0 {
        Err(ConstantsError::InvalidAlphabet)
    } else {
        Ok(())
    }
}

/// Defining polynomial of `G(m)`: `x - (k+1)` or `x^2 - (k+1)x - (k+1)`.
pub fn golden_ratio_polynomial(m: Digit) -> IntPolynomial {
    let k = (m / 2) as i64;
    if m.is_multiple_of(2) {
        IntPolynomial::from_i64(&[-(k + 1), 1])
    } else {
        IntPolynomial::from_i64(&[-(k + 1), -(k + 1), 1])
    }
}

/// Defining polynomial of `beta_f(m)`: `x^2 - (k+1)x - k` for even `m`,
/// `x^3 - (k+2)x^2 + x - (k+1)` for odd `m`.
pub fn beta_f_polynomial(m: Digit) -> IntPolynomial {
    let k = (m / 2) as i64;
    if m.is_multiple_of(2) {
        IntPolynomial::from_i64(&[-k, -(k + 1), 1])
    } else {
        IntPolynomial::from_i64(&[-(k + 1), 1, -(k + 2), 1])
    }
}

/// The generalized golden ratio `G(m)` as the generator of its field.
pub fn golden_ratio(m: Digit) -> Result<AlgebraicNumber, ConstantsError> {
    check_m(m)?;
    let k = (m / 2) as i64;
    if m.is_multiple_of(2) {
        return Ok(NumberField::rational(&rat::int(k + 1)).generator());
    }
    let f = NumberField::new(golden_ratio_polynomial(m), rat::int(k + 1), rat::int(k + 2))?;
    Ok(f.generator())
}

/// `beta_f(m)`, the root of its defining polynomial in `(k+1, k+2)`.
pub fn beta_f(m: Digit) -> Result<AlgebraicNumber, ConstantsError> {
    check_m(m)?;
    let k = (m / 2) as i64;
    let f = NumberField::new(beta_f_polynomial(m), rat::int(k + 1), rat::int(k + 2))?;
    Ok(f.generator())
}

/// `(a + sqrt(d)) / 2` enclosed to `2^-bits` using integer square roots.
fn half_sum_with_sqrt(a: i64, d: i64, bits: u32) -> CertifiedValue {
    let scale = BigInt::one() << (2 * bits as usize);
    let s = (BigInt::from(d) * scale).sqrt();
    let denom = BigInt::one() << bits as usize;
    let lo = Rational::new(s.clone(), denom.clone());
    let hi = Rational::new(s + 1, denom);
    let a = rat::int(a);
    let two = rat::int(2);
    CertifiedValue::from_bounds((&a + lo) / &two, (a + hi) / two)
}

/// `G(m)` from its closed form, certified to `2^-bits`.
pub fn golden_ratio_closed_form(m: Digit, bits: u32) -> CertifiedValue {
    let k = (m / 2) as i64;
    if m.is_multiple_of(2) {
        CertifiedValue::exact(rat::int(k + 1))
    } else {
        half_sum_with_sqrt(k + 1, k * k + 6 * k + 5, bits)
    }
}

/// `beta_f(m)` from `(k + 1 + sqrt(k^2 + 6k + 1)) / 2`; even `m` only.
pub fn beta_f_closed_form(m: Digit, bits: u32) -> Option<CertifiedValue> {
    if !m.is_multiple_of(2) {
        return None;
    }
    let k = (m / 2) as i64;
    Some(half_sum_with_sqrt(k + 1, k * k + 6 * k + 1, bits))
}

/// Whether the generator of `a`'s field is a Pisot number with respect to
/// its defining polynomial: an algebraic integer above one whose other roots
/// lie strictly inside the unit disc.
pub fn is_pisot(a: &AlgebraicNumber) -> Result<bool, NumericError> {
    let field = a.field();
    let beta = field.generator();
    if a != &beta && a.as_rational().is_none() {
        return Err(NumericError::IncompatibleField);
    }
    if beta.compare_rational(&rat::int(1))? != Ordering::Greater {
        return Ok(false);
    }
    let p = field.minpoly();
    let lead = p.coefficients().last().cloned().unwrap_or_default();
    if !lead.abs().is_one() {
        return Ok(false);
    }
    if p.degree() == 1 {
        return Ok(true);
    }
    // Deflate p by (x - beta) over Q(beta), then run the Schur–Cohn test.
    let coeffs: Vec<AlgebraicNumber> = p
        .coefficients()
        .iter()
        .map(|c| field.element(Rational::from_integer(c.clone())))
        .collect();
    let n = coeffs.len() - 1;
    let mut quotient = vec![field.integer(0); n];
    let mut carry = field.integer(0);
    for i in (1..=n).rev() {
        carry = &(&carry * &beta) + &coeffs[i];
        quotient[i - 1] = carry.clone();
    }
    schur_cohn_inside(quotient)
}

/// All roots of `q` (ascending coefficients, real) strictly inside the unit
/// disc.
fn schur_cohn_inside(mut q: Vec<AlgebraicNumber>) -> Result<bool, NumericError> {
    while q.len() > 1 {
        let n = q.len() - 1;
        let a0 = q[0].clone();
        let an = q[n].clone();
        let abs = |v: &AlgebraicNumber| -> Result<AlgebraicNumber, NumericError> {
            Ok(if v.signum()? == Ordering::Less { -v } else { v.clone() })
        };
        if abs(&a0)?.compare(&abs(&an)?)? != Ordering::Less {
            return Ok(false);
        }
        // (a_n q(x) - a_0 q_rev(x)) / x
        let next: Vec<AlgebraicNumber> = (1..=n)
            .map(|i| &(&an * &q[i]) - &(&a0 * &q[n - i]))
            .collect();
        q = next;
    }
    Ok(true)
}

/// Monotone bisection for `sum λ_i(m) β^{-i} = 1`, recording every bracket.
pub fn beta_c_with_brackets(
    m: Digit,
    tol: &Rational,
) -> Result<(CertifiedValue, Vec<(Rational, Rational)>), ConstantsError> {
    check_m(m)?;
    if !tol.is_positive() {
        return Err(ConstantsError::InvalidTolerance);
    }
    let g = golden_ratio(m)?;
    let g_lo = g.to_certified(&rat::pow2(-40)).lo();
    let mut lambda = generalized_thue_morse(m, 64);
    // Try narrow brackets around a floating-point estimate first; each is
    // only used once both of its end signs are certified.
    let estimate = beta_c_estimate(m, &mut lambda);
    let mut bracket = None;
    for rel in [1e-12, 1e-9, 1e-6] {
        let delta = rel * estimate;
        let (Some(lo), Some(hi)) = (rat::from_f64(estimate - delta), rat::from_f64(estimate + delta)) else {
            continue;
        };
        let (lo, hi) = (rat::floor_dyadic(&lo, 64), rat::ceil_dyadic(&hi, 64));
        if lo > g_lo
            && series_sign(m, &mut lambda, &lo)? == Some(Ordering::Greater)
            && series_sign(m, &mut lambda, &hi)? == Some(Ordering::Less)
        {
            bracket = Some((lo, hi));
            break;
        }
    }
    let (mut lo, mut hi) = match bracket {
        Some(b) => b,
        None => {
            let lo = rat::floor_dyadic(&g_lo, 48);
            let hi = rat::int(m as i64 + 1);
            if series_sign(m, &mut lambda, &lo)? != Some(Ordering::Greater)
                || series_sign(m, &mut lambda, &hi)? != Some(Ordering::Less)
            {
                return Err(ConstantsError::BracketFailure);
            }
            (lo, hi)
        }
    };
    let mut brackets = vec![(lo.clone(), hi.clone())];
    let two = rat::int(2);
    let target = tol * &two;
    while &hi - &lo > target {
        let width = &hi - &lo;
        let mut mid = (&lo + &hi) / &two;
        let mut nudge = 3u32;
        let sign = loop {
            match series_sign(m, &mut lambda, &mid)? {
                Some(s) => break s,
                None => {
                    // Too close to the root to decide cheaply: try a nearby
                    // point inside the bracket instead.
                    mid = &lo + &width * Rational::new(BigInt::from((1u64 << nudge) - 1), BigInt::from(1u64 << (nudge + 1)));
                    nudge += 1;
                    if nudge > 40 {
                        return Err(ConstantsError::BracketFailure);
                    }
                }
            }
        };
        match sign {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => {
                lo = mid.clone();
                hi = mid;
            }
        }
        brackets.push((lo.clone(), hi.clone()));
    }
    Ok((CertifiedValue::from_bounds(lo, hi), brackets))
}

fn digit_of(m: Digit, lambda: &mut DigitSequence, i: usize) -> Digit {
    if lambda.len() <= i {
        *lambda = generalized_thue_morse(m, (2 * lambda.len()).max(i + 1));
    }
    lambda.digit(i).unwrap_or(0)
}

// Floating-point root of the series, for seeding the certified bisection.
fn beta_c_estimate(m: Digit, lambda: &mut DigitSequence) -> f64 {
    let f = |b: f64, lambda: &mut DigitSequence| -> f64 {
        let mut sum = 0.0;
        let mut w = 1.0;
        for i in 0..4096 {
            w /= b;
            if w < 1e-20 {
                break;
            }
            sum += digit_of(m, lambda, i) as f64 * w;
        }
        sum - 1.0
    };
    let (mut lo, mut hi) = ((m / 2) as f64 + 1.0, m as f64 + 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid, lambda) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `β_c(m)` certified to within `tol`.
pub fn beta_c(m: Digit, tol: &Rational) -> Result<CertifiedValue, ConstantsError> {
    Ok(beta_c_with_brackets(m, tol)?.0)
}

/// Maximum number of series terms per sign decision.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// Certified sign of `sum λ_i(m) c^{-i} - 1`; `None` if the term cap is hit.
fn series_sign(m: Digit, lambda: &mut DigitSequence, c: &Rational) -> Result<Option<Ordering>, ConstantsError> {
    let one = rat::int(1);
    let mut n = 32usize;
    let mut bits = 128u32;
    loop {
        if lambda.len() < n {
            *lambda = generalized_thue_morse(m, n.max(2 * lambda.len()));
        }
        let iv = series_enclosure(lambda, c, c, n, bits)?;
        if *iv.lo() > one {
            return Ok(Some(Ordering::Greater));
        }
        if *iv.hi() < one {
            return Ok(Some(Ordering::Less));
        }
        if n >= MAX_SERIES_TERMS {
            return Ok(None);
        }
        n = (n * 2).min(MAX_SERIES_TERMS);
        bits = bits.saturating_add(bits / 2).min(4096);
    }
}

/// `G(m) < β_f(m) < β_c(m)` together.
#[derive(Clone, Debug)]
pub struct ConstantTriple {
    pub m: Digit,
    pub g: AlgebraicNumber,
    pub beta_f: AlgebraicNumber,
    pub beta_c: CertifiedValue,
}

impl ConstantTriple {
    pub fn compute(m: Digit, tol: &Rational) -> Result<Self, ConstantsError> {
        Ok(Self { m, g: golden_ratio(m)?, beta_f: beta_f(m)?, beta_c: beta_c(m, tol)? })
    }

    /// Certified strict chain `G < β_f < β_c < m + 1`.
    pub fn ordering_certified(&self) -> bool {
        let w = rat::pow2(-60);
        let g_hi = self.g.enclosure(&w).1;
        let (f_lo, f_hi) = self.beta_f.enclosure(&w);
        g_hi < f_lo && f_hi < self.beta_c.lo() && self.beta_c.hi() < rat::int(self.m as i64 + 1)
    }
}

/// Printable summary row used by the CLI and tests.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantRow {
    pub m: Digit,
    pub golden_ratio: CertifiedValue,
    pub beta_f: CertifiedValue,
    pub beta_c: CertifiedValue,
}

impl ConstantRow {
    pub fn compute(m: Digit, tol: &Rational) -> Result<Self, ConstantsError> {
        let t = ConstantTriple::compute(m, tol)?;
        Ok(Self {
            m,
            golden_ratio: t.g.to_certified(tol),
            beta_f: t.beta_f.to_certified(tol),
            beta_c: t.beta_c,
        })
    }
}
