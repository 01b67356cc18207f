//! Brute-force reference computations for tests. Nothing here reuses the
//! orbit enumeration of [`crate::expansions`]: prefixes are checked in the
//! digit-sum domain, and admissible words are found by listing short
//! eventually periodic words, skipping only strings with an inadmissible factor.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Pow, Signed};
use thiserror::Error;

use crate::expansions::{quasi_greedy_one, ExpansionError};
use crate::geometry::ExpansionParams;
use crate::numeric::{rat, AlgebraicNumber, NumericError, Scalar};
use crate::sequence::{Digit, DigitSequence};

/// Largest number of words `brute_force_prefixes` may range over, and of
/// strings `exhaustive_admissible_words` may visit.
pub const MAX_WORDS: u64 = 10_000_000;
/// Largest `preperiod + period` accepted by `exhaustive_admissible_words`.
pub const MAX_TOTAL_LENGTH: usize = 10;
/// Digits of the quasi-greedy expansion used when it is not periodic; the
/// longer horizon is only computed when the shorter one leaves a tie.
const QUASI_GREEDY_HORIZONS: [usize; 2] = [64, 512];

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("search space exceeds the oracle limit")]
    TooLarge,
    #[error("the oracle needs an exact beta")]
    InexactBeta,
    #[error("comparison undetermined")]
    Undetermined,
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    /// Sorted, duplicate-free.
    pub prefixes: Vec<Vec<Digit>>,
    pub count: usize,
}

fn word_space(m: Digit, n: usize) -> Option<u64> {
    (m as u64 + 1).checked_pow(u32::try_from(n).ok()?)
}

/// All words `e` of length `n` with
/// `0 <= x - sum e_i beta^-i <= m / (beta^n (beta - 1))`.
///
/// The condition at a shorter length is implied by the one at length `n`, so
/// the search skips every extension of a failing word.
pub fn brute_force_prefixes(params: &ExpansionParams, x: &Scalar, n: usize) -> Result<OracleResult, OracleError> {
    match word_space(params.m(), n) {
        Some(w) if w <= MAX_WORDS => {}
        _ => return Err(OracleError::TooLarge),
    }
    let mut prefixes = Vec::new();
    let mut word = Vec::with_capacity(n);
    let beta_q = params.beta_scalar().as_exact().and_then(AlgebraicNumber::as_rational);
    let x_q = x.as_exact().and_then(AlgebraicNumber::as_rational);
    match (beta_q, x_q) {
        (Some(b), Some(xq)) => {
            let s = IntSums::new(params.m(), b.numer(), b.denom(), xq.numer(), xq.denom(), n);
            s.search(0, &s.start, &mut word, &mut prefixes);
        }
        _ => {
            let s = ScalarSums::new(params, n)?;
            s.search(0, x, &mut word, &mut prefixes)?;
        }
    }
    prefixes.sort();
    prefixes.dedup();
    Ok(OracleResult { count: prefixes.len(), prefixes })
}

// Everything scaled by `b p^n` for `beta = p/q` and `x = a/b`. The remainder
// after `j` digits is `S_j = a p^n - b sum_{i<=j} e_i q^i p^(n-i)`, and the
// length-`j` condition is `0 <= S_j` and `(p - q) S_j <= m b q^(j+1) p^(n-j)`.
struct IntSums {
    m: Digit,
    n: usize,
    start: BigInt,
    weights: Vec<BigInt>,
    caps: Vec<BigInt>,
    gap: BigInt,
}

impl IntSums {
    fn new(m: Digit, p: &BigInt, q: &BigInt, a: &BigInt, b: &BigInt, n: usize) -> Self {
        let p_pow = |e: usize| -> BigInt { Pow::pow(p, e) };
        let q_pow = |e: usize| -> BigInt { Pow::pow(q, e) };
        let weights = (0..=n).map(|i| b * q_pow(i) * p_pow(n - i)).collect();
        let caps = (0..=n).map(|j| BigInt::from(m) * b * q_pow(j + 1) * p_pow(n - j)).collect();
        IntSums { m, n, start: a * p_pow(n), weights, caps, gap: p - q }
    }

    fn search(&self, j: usize, s: &BigInt, word: &mut Vec<Digit>, out: &mut Vec<Vec<Digit>>) {
        if s.is_negative() || &self.gap * s > self.caps[j] {
            return;
        }
        if j == self.n {
            out.push(word.clone());
            return;
        }
        for d in 0..=self.m {
            let s2 = s - &self.weights[j + 1] * BigInt::from(d);
            if s2.is_negative() {
                break;
            }
            word.push(d);
            self.search(j + 1, &s2, word, out);
            word.pop();
        }
    }
}

struct ScalarSums {
    m: Digit,
    n: usize,
    /// `beta^-i` for `i = 0..=n`.
    inv_pows: Vec<Scalar>,
    /// `m / (beta^j (beta - 1))` for `j = 0..=n`.
    caps: Vec<Scalar>,
}

impl ScalarSums {
    fn new(params: &ExpansionParams, n: usize) -> Result<Self, OracleError> {
        let beta = params.beta_scalar();
        let inv = params.integer(1).div(beta)?;
        let mut inv_pows = vec![params.integer(1)];
        for i in 0..n {
            inv_pows.push(inv_pows[i].mul(&inv));
        }
        let caps = inv_pows.iter().map(|w| w.mul(params.right_end())).collect();
        Ok(ScalarSums { m: params.m(), n, inv_pows, caps })
    }

    fn search(&self, j: usize, r: &Scalar, word: &mut Vec<Digit>, out: &mut Vec<Vec<Digit>>) -> Result<(), OracleError> {
        let sign = r.compare_rational(&rat::int(0)).ok_or(OracleError::Undetermined)?;
        if sign == Ordering::Less || r.compare(&self.caps[j]).ok_or(OracleError::Undetermined)? == Ordering::Greater {
            return Ok(());
        }
        if j == self.n {
            out.push(word.clone());
            return Ok(());
        }
        for d in 0..=self.m {
            let r2 = r.sub(&self.inv_pows[j + 1].scale(&rat::int(d as i64)));
            word.push(d);
            self.search(j + 1, &r2, word, out)?;
            word.pop();
        }
        Ok(())
    }
}

/// Minimal period and shortest preperiod describing the same infinite word.
fn canonical_pair(pre: &[Digit], per: &[Digit]) -> (Vec<Digit>, Vec<Digit>) {
    let n = per.len();
    let p = (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|i| per[i] == per[i % p])).unwrap_or(n);
    let mut per = per[..p].to_vec();
    let mut pre = pre.to_vec();
    while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
        if a != b {
            break;
        }
        pre.pop();
        per.rotate_right(1);
    }
    (pre, per)
}

// Digit `i` of `pre per per ...`.
fn digit_at(pre: &[Digit], per: &[Digit], i: usize) -> Digit {
    if i < pre.len() {
        pre[i]
    } else {
        per[(i - pre.len()) % per.len()]
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The quasi-greedy expansion of 1 as an explicit digit source.
struct Threshold {
    pre: Vec<Digit>,
    per: Vec<Digit>,
    /// Whether `pre per^inf` is the whole expansion, or only a known prefix.
    periodic: bool,
}

impl Threshold {
    fn of(params: &ExpansionParams, horizon: usize) -> Result<Self, OracleError> {
        let d = quasi_greedy_one(params, horizon)?;
        Ok(if d.is_finite() {
            Threshold { pre: d.preperiod().to_vec(), per: Vec::new(), periodic: false }
        } else {
            Threshold { pre: d.preperiod().to_vec(), per: d.period().to_vec(), periodic: true }
        })
    }

    fn digit(&self, i: usize, reflect: Option<Digit>) -> Digit {
        let d = if self.periodic { digit_at(&self.pre, &self.per, i) } else { self.pre[i] };
        reflect.map_or(d, |m| m - d)
    }

    // Compares the tail of `pre per^inf` starting at `s` with the threshold,
    // or with its reflection when `reflect` is `Some(m)`.
    fn compare_tail(&self, pre: &[Digit], per: &[Digit], s: usize, reflect: Option<Digit>) -> Result<Ordering, OracleError> {
        let horizon = if self.periodic {
            let l = per.len() / gcd(per.len(), self.per.len()) * self.per.len();
            pre.len() + self.pre.len() + l
        } else {
            self.pre.len()
        };
        for i in 0..horizon {
            let a = digit_at(pre, per, s + i);
            let b = self.digit(i, reflect);
            if a != b {
                return Ok(a.cmp(&b));
            }
        }
        if self.periodic {
            Ok(Ordering::Equal)
        } else {
            Err(OracleError::Undetermined)
        }
    }
}

/// Every eventually periodic word with `preperiod + period <= max_total_length`
/// all of whose tails lie strictly between the reflected quasi-greedy
/// expansion of 1 and that expansion. Words are listed once, in canonical
/// form, sorted.
pub fn exhaustive_admissible_words(params: &ExpansionParams, max_total_length: usize) -> Result<Vec<DigitSequence>, OracleError> {
    if !params.is_exact() {
        return Err(OracleError::InexactBeta);
    }
    let m = params.m();
    if max_total_length > MAX_TOTAL_LENGTH {
        return Err(OracleError::TooLarge);
    }
    let mut result = Err(OracleError::Undetermined);
    for horizon in QUASI_GREEDY_HORIZONS {
        result = words_against(&Threshold::of(params, horizon)?, m, max_total_length);
        if result != Err(OracleError::Undetermined) {
            break;
        }
    }
    result
}

fn words_against(threshold: &Threshold, m: Digit, max_total_length: usize) -> Result<Vec<DigitSequence>, OracleError> {
    // Every digit string `pre per` of an admissible word has each of its
    // factors `u[s..]` between the matching prefixes of the reflected
    // threshold and the threshold, so failing strings are not extended.
    let mut seen = BTreeSet::new();
    let mut visited = 0u64;
    let mut stack: Vec<Vec<Digit>> = vec![Vec::new()];
    while let Some(u) = stack.pop() {
        visited += 1;
        if visited > MAX_WORDS {
            return Err(OracleError::TooLarge);
        }
        for per_len in 1..=u.len() {
            let pre_len = u.len() - per_len;
            seen.insert(canonical_pair(&u[..pre_len], &u[pre_len..]));
        }
        if u.len() == max_total_length {
            continue;
        }
        for d in 0..=m {
            let mut v = u.clone();
            v.push(d);
            if prefix_feasible(threshold, &v, m) {
                stack.push(v);
            }
        }
    }
    let mut out = Vec::new();
    for (pre, per) in seen {
        let mut ok = true;
        for s in 0..pre.len() + per.len() {
            if threshold.compare_tail(&pre, &per, s, None)? != Ordering::Less
                || threshold.compare_tail(&pre, &per, s, Some(m))? != Ordering::Greater
            {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(DigitSequence::periodic(pre, per, m).expect("digits within alphabet"));
        }
    }
    Ok(out)
}

fn prefix_feasible(threshold: &Threshold, u: &[Digit], m: Digit) -> bool {
    (0..u.len()).all(|s| {
        let tail = &u[s..];
        let upper = tail.iter().enumerate().map(|(i, &a)| a.cmp(&threshold.digit(i, None))).find(|o| o.is_ne());
        let lower = tail.iter().enumerate().map(|(i, &a)| a.cmp(&threshold.digit(i, Some(m)))).find(|o| o.is_ne());
        upper != Some(Ordering::Greater) && lower != Some(Ordering::Less)
    })
}

/// Number of words the oracle would scan for a prefix search.
pub fn prefix_search_size(m: Digit, n: usize) -> Option<u64> {
    word_space(m, n)
}
