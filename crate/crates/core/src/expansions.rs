//! Enumeration, counting and classification of digit sequences.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{admissible_digits, apply_map, build_catalog, locate, Beta, ExpansionParams, GeometryError, Location};
use crate::numeric::{rat, NumericError, Rational, Scalar};
use crate::sequence::{Digit, DigitSequence};

/// Default horizon for uniqueness certificates.
pub const DEFAULT_MAX_STEPS: usize = 4096;
/// Default per-shift horizon for admissibility checks.
pub const DEFAULT_N_CHECK: usize = 256;
/// Suggested frontier size for [`count_prefixes_capped`] on deep counts.
pub const DEFAULT_FRONTIER_CAP: usize = 1 << 18;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("point lies outside [0, m/(beta-1)]")]
    PointOutsideI,
    #[error("comparison too close to call at certified precision")]
    Undetermined,
    #[error("lexicographic comparison still tied after {0} digits")]
    HorizonTooShort(usize),
    #[error("a boundary decision needs an exact point")]
    InexactPoint,
    #[error("beta must exceed the generalized golden ratio")]
    BetaBelowThreshold,
    #[error("quasi-greedy digit {} undetermined at certified precision", .determined.len() + 1)]
    QuasiGreedyUndetermined { determined: Vec<Digit> },
    #[error(transparent)]
    Geometry(GeometryError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

impl From<GeometryError> for ExpansionError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::Undetermined => ExpansionError::Undetermined,
            other => ExpansionError::Geometry(other),
        }
    }
}

fn check_in_i(params: &ExpansionParams, x: &Scalar) -> Result<(), ExpansionError> {
    match params.interval_i().contains(x) {
        Some(true) => Ok(()),
        Some(false) => Err(ExpansionError::PointOutsideI),
        None => Err(ExpansionError::Undetermined),
    }
}

/// One node of a [`BranchTree`].
#[derive(Clone, Debug)]
pub struct Node {
    /// Index of the parent in the previous level; `None` for the root.
    pub parent: Option<usize>,
    pub digit: Option<Digit>,
    /// Orbit point after applying the prefix.
    pub point: Scalar,
}

/// All prefixes of length `<= n` that keep the orbit inside `I`.
#[derive(Clone, Debug)]
pub struct BranchTree {
    pub root_point: Scalar,
    pub levels: Vec<Vec<Node>>,
}

impl BranchTree {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn leaf_count(&self) -> usize {
        self.levels.last().map_or(0, Vec::len)
    }

    /// Digit word of a node at `level`.
    pub fn prefix_of(&self, level: usize, index: usize) -> Vec<Digit> {
        let mut out = Vec::with_capacity(level);
        let (mut l, mut i) = (level, index);
        while l > 0 {
            let node = &self.levels[l][i];
            out.push(node.digit.expect("non-root nodes carry a digit"));
            i = node.parent.expect("non-root nodes have a parent");
            l -= 1;
        }
        out.reverse();
        out
    }

    /// Leaf prefixes, lexicographically sorted.
    pub fn prefixes(&self) -> Vec<Vec<Digit>> {
        let d = self.depth();
        let mut out: Vec<_> = (0..self.leaf_count()).map(|i| self.prefix_of(d, i)).collect();
        out.sort();
        out
    }
}

/// Complete branch tree of depth `n` for `x`.
pub fn expand_tree(params: &ExpansionParams, x: &Scalar, n: usize) -> Result<BranchTree, ExpansionError> {
    check_in_i(params, x)?;
    let mut levels = vec![vec![Node { parent: None, digit: None, point: x.clone() }]];
    for _ in 0..n {
        let prev = levels.last().expect("root level exists");
        let mut next = Vec::new();
        for (pi, node) in prev.iter().enumerate() {
            for d in admissible_digits(params, &node.point)? {
                let point = apply_map(params, d, &node.point)?;
                next.push(Node { parent: Some(pi), digit: Some(d), point });
            }
        }
        levels.push(next);
    }
    Ok(BranchTree { root_point: x.clone(), levels })
}

/// Number of prefixes at one depth.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Count {
    Exact(BigUint),
    /// A lower bound, reported once the frontier had to be truncated.
    AtLeast(BigUint),
}

impl Count {
    pub fn value(&self) -> &BigUint {
        match self {
            Count::Exact(v) | Count::AtLeast(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Count::Exact(_))
    }
}

/// `N_j(x)` for `j = 0..=n` and the growth proxies `log_{m+1} N_j / j`.
#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub counts: Vec<Count>,
    /// `growth[j] = log_{m+1}(N_j) / j`; entry 0 is 0.
    pub growth: Vec<f64>,
}

impl CountReport {
    pub fn last(&self) -> &Count {
        self.counts.last().expect("at least depth 0")
    }
}

pub(crate) fn log_biguint(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (v >> shift as usize).to_f64().unwrap_or(1.0).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Counts prefixes level by level, merging equal orbit points and carrying
/// word multiplicities. Every count is exact.
pub fn count_prefixes(params: &ExpansionParams, x: &Scalar, n: usize) -> Result<CountReport, ExpansionError> {
    count_prefixes_capped(params, x, n, usize::MAX)
}

/// As [`count_prefixes`], tracking at most `cap` distinct orbit points per
/// level. Every point of `I` has at least one admissible digit, so words
/// whose orbit point is dropped still extend to every later depth; their
/// multiplicity is kept as a settled lower-bound contribution and the count
/// is reported as [`Count::AtLeast`].
pub fn count_prefixes_capped(
    params: &ExpansionParams,
    x: &Scalar,
    n: usize,
    cap: usize,
) -> Result<CountReport, ExpansionError> {
    check_in_i(params, x)?;
    let counts = match (IntOrbit::new(params), IntOrbit::start(x)) {
        (Some(orbit), Some((num, den))) => {
            // Numerators at one level share a denominator; track it alongside.
            let den = std::cell::RefCell::new(den);
            count_levels(num, n, cap, |y: &BigInt| {
                let next = orbit.next_den(&den.borrow());
                Ok(orbit.children(y, &next).into_iter().map(|(_, c)| c).collect())
            }, || {
                let next = orbit.next_den(&den.borrow());
                *den.borrow_mut() = next;
            })?
        }
        (_, _) => count_levels(x.clone(), n, cap, |y: &Scalar| {
            admissible_digits(params, y)?
                .into_iter()
                .map(|d| apply_map(params, d, y).map_err(ExpansionError::from))
                .collect()
        }, || ())?,
    };
    let base = ((params.m() + 1) as f64).ln();
    let growth = counts
        .iter()
        .enumerate()
        .map(|(j, c)| if j == 0 { 0.0 } else { log_biguint(c.value()) / base / j as f64 })
        .collect();
    Ok(CountReport { counts, growth })
}

/// Orbit arithmetic for rational `beta = p/q` and rational points. A point
/// at level `j` is an integer numerator over the common denominator
/// `b q^j`, so children and equality need integer operations only.
#[derive(Clone, Debug)]
pub(crate) struct IntOrbit {
    p: BigInt,
    q: BigInt,
    m: i64,
    /// `p - q`, positive.
    gap: BigInt,
    /// `m q`.
    mq: BigInt,
}

impl IntOrbit {
    pub(crate) fn new(params: &ExpansionParams) -> Option<Self> {
        let beta = params.beta_scalar().as_exact()?.as_rational()?;
        let (p, q) = (beta.numer().clone(), beta.denom().clone());
        let m = params.m() as i64;
        Some(IntOrbit { gap: &p - &q, mq: &q * BigInt::from(m), p, q, m })
    }

    /// Numerator and denominator of a rational starting point.
    pub(crate) fn start(x: &Scalar) -> Option<(BigInt, BigInt)> {
        let q = x.as_exact()?.as_rational()?;
        Some((q.numer().clone(), q.denom().clone()))
    }

    pub(crate) fn next_den(&self, den: &BigInt) -> BigInt {
        den * &self.q
    }

    /// Admissible digits and child numerators of `n / den`, where `next_den`
    /// is the following level's denominator.
    pub(crate) fn children(&self, n: &BigInt, next_den: &BigInt) -> Vec<(Digit, BigInt)> {
        // Child numerator p n - d next_den must lie in [0, m q next_den / (p - q)].
        let t = &self.p * n;
        let hi = t.div_floor(next_den).to_i64().unwrap_or(i64::MAX).min(self.m);
        let excess = &self.gap * &t - &self.mq * next_den;
        let lo_den = &self.gap * next_den;
        let lo = (-((-excess).div_floor(&lo_den))).to_i64().unwrap_or(i64::MIN).max(0);
        (lo..=hi).map(|d| (d as Digit, &t - next_den * BigInt::from(d))).collect()
    }
}

// Level-by-level count; `advance` runs after each level is expanded.
fn count_levels<P, F, A>(start: P, n: usize, cap: usize, children: F, mut advance: A) -> Result<Vec<Count>, ExpansionError>
where
    P: Clone + Eq + std::hash::Hash,
    F: Fn(&P) -> Result<Vec<P>, ExpansionError>,
    A: FnMut(),
{
    let cap = cap.max(1);
    let mut frontier: Vec<(P, BigUint)> = vec![(start, BigUint::one())];
    let mut settled = BigUint::zero();
    let mut truncated = false;
    let mut counts = vec![Count::Exact(BigUint::one())];
    for _ in 0..n {
        let mut index: HashMap<P, usize> = HashMap::new();
        let mut next: Vec<(P, BigUint)> = Vec::new();
        for (point, mult) in &frontier {
            for y in children(point)? {
                match index.get(&y) {
                    Some(&i) => next[i].1 += mult,
                    None => {
                        index.insert(y.clone(), next.len());
                        next.push((y, mult.clone()));
                    }
                }
            }
        }
        advance();
        if next.len() > cap {
            truncated = true;
            // Keep the heaviest points; ties keep discovery order.
            let mut order: Vec<usize> = (0..next.len()).collect();
            order.sort_by(|&a, &b| next[b].1.cmp(&next[a].1).then(a.cmp(&b)));
            let mut keep = vec![false; next.len()];
            for &i in &order[..cap] {
                keep[i] = true;
            }
            let mut kept = Vec::with_capacity(cap);
            for (i, entry) in next.into_iter().enumerate() {
                if keep[i] {
                    kept.push(entry);
                } else {
                    settled += entry.1;
                }
            }
            next = kept;
        }
        frontier = next;
        let total: BigUint = frontier.iter().map(|(_, m)| m).sum::<BigUint>() + &settled;
        counts.push(if truncated { Count::AtLeast(total) } else { Count::Exact(total) });
    }
    Ok(counts)
}

/// Quasi-greedy expansion of 1: at every step the largest digit keeping the
/// partial sum strictly below 1. With exact `beta` the result closes into
/// its periodic form as soon as a remainder repeats; otherwise the first `n`
/// digits are returned as a finite word.
pub fn quasi_greedy_one(params: &ExpansionParams, n: usize) -> Result<DigitSequence, ExpansionError> {
    match params.beta() {
        Beta::Exact(_) => quasi_greedy_exact(params, n),
        Beta::Certified(c) => {
            let digits = quasi_greedy_certified(params.m(), &c.lo(), &c.hi(), n)?;
            Ok(DigitSequence::finite(digits, params.m()).expect("digits within alphabet"))
        }
    }
}

fn quasi_greedy_exact(params: &ExpansionParams, n: usize) -> Result<DigitSequence, ExpansionError> {
    let beta = params.beta_scalar().as_exact().expect("exact mode").clone();
    let m = params.m();
    let mut r = beta.field().integer(1);
    // Hashing reads only the reduced representation, never the cached isolation.
    #[allow(clippy::mutable_key_type)]
    let mut seen: HashMap<crate::numeric::AlgebraicNumber, usize> = HashMap::new();
    let mut digits = Vec::with_capacity(n);
    for step in 0..n {
        if let Some(&start) = seen.get(&r) {
            let period = digits[start..].to_vec();
            digits.truncate(start);
            return Ok(DigitSequence::periodic(digits, period, m).expect("digits within alphabet"));
        }
        seen.insert(r.clone(), step);
        let t = &r * &beta;
        let d = largest_digit_below(&t, m)?;
        digits.push(d);
        r = t.add_rational(&rat::int(-(d as i64)));
    }
    Ok(DigitSequence::finite(digits, m).expect("digits within alphabet"))
}

/// Largest `d <= m` with `t - d > 0`, for `t > 0`.
fn largest_digit_below(t: &crate::numeric::AlgebraicNumber, m: Digit) -> Result<Digit, ExpansionError> {
    let f = t.floor()?;
    let fl = f.to_i64().unwrap_or(i64::MAX);
    let d = if t.compare_rational(&rat::int(fl))? == Ordering::Equal { fl - 1 } else { fl };
    Ok(d.clamp(0, m as i64) as Digit)
}

/// Quasi-greedy digits valid for every `beta` in `[lo, hi]`.
///
/// Partial sums with a fixed digit history decrease in `beta`, so a digit is
/// forced once the choices at both ends agree.
pub fn quasi_greedy_certified(
    m: Digit,
    lo: &Rational,
    hi: &Rational,
    n: usize,
) -> Result<Vec<Digit>, ExpansionError> {
    let mut r_lo = rat::int(1);
    let mut r_hi = rat::int(1);
    let mut digits = Vec::with_capacity(n);
    let digit_for = |t: &Rational| -> Digit {
        let f = t.floor();
        let d = if &f == t { f - rat::int(1) } else { f };
        d.to_integer().to_i64().unwrap_or(i64::MAX).clamp(0, m as i64) as Digit
    };
    for _ in 0..n {
        let t_lo = &r_lo * lo;
        let t_hi = &r_hi * hi;
        let d_lo = digit_for(&t_lo);
        let d_hi = digit_for(&t_hi);
        if d_lo != d_hi {
            return Err(ExpansionError::QuasiGreedyUndetermined { determined: digits });
        }
        let d = rat::int(d_lo as i64);
        r_lo = t_lo - &d;
        r_hi = t_hi - d;
        digits.push(d_lo);
    }
    Ok(digits)
}

/// Exact lexicographic comparison of two words, deciding ties of eventually
/// periodic words exactly and of other words up to `horizon` digits.
fn lex_compare(a: &DigitSequence, b: &DigitSequence, horizon: usize) -> Result<Ordering, ExpansionError> {
    let decisive = if !a.is_finite() && !b.is_finite() {
        let l = lcm(a.period().len(), b.period().len());
        Some(a.preperiod().len().max(b.preperiod().len()) + l)
    } else {
        None
    };
    let n = decisive.unwrap_or(horizon);
    match a.cmp_prefix(b, n) {
        Ordering::Equal if decisive.is_none() => Err(ExpansionError::HorizonTooShort(horizon)),
        o => Ok(o),
    }
}

fn lcm(a: usize, b: usize) -> usize {
    let gcd = |mut x: usize, mut y: usize| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    a / gcd(a, b) * b
}

/// Parry-type criterion: every shift of `word` lies strictly between the
/// reflection of the quasi-greedy expansion of 1 and that expansion.
/// Finite words are read as followed by `0^∞`.
pub fn is_admissible(params: &ExpansionParams, word: &DigitSequence, n_check: usize) -> Result<bool, ExpansionError> {
    let d = quasi_greedy_one(params, n_check.max(1))?;
    is_admissible_against(&d, word, n_check)
}

/// [`is_admissible`] with a precomputed quasi-greedy expansion `d`.
pub fn is_admissible_against(d: &DigitSequence, word: &DigitSequence, n_check: usize) -> Result<bool, ExpansionError> {
    let word = if word.is_finite() {
        DigitSequence::periodic(word.preperiod().to_vec(), vec![0], word.alphabet_max())
            .expect("digits within alphabet")
    } else {
        word.clone()
    };
    let d_bar = d.reflection();
    let shifts = word.preperiod().len() + word.period().len();
    for s in 0..shifts {
        let w = word.shift(s);
        if lex_compare(&w, d, n_check)? != Ordering::Less {
            return Ok(false);
        }
        if lex_compare(&w, &d_bar, n_check)? != Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest admissible digit at every step.
pub fn greedy_expansion(params: &ExpansionParams, x: &Scalar, n: usize) -> Result<DigitSequence, ExpansionError> {
    check_in_i(params, x)?;
    let mut point = x.clone();
    let mut digits = Vec::with_capacity(n);
    for _ in 0..n {
        let d = *admissible_digits(params, &point)?.last().expect("every point of I has a digit");
        point = apply_map(params, d, &point)?;
        digits.push(d);
    }
    Ok(DigitSequence::finite(digits, params.m()).expect("digits within alphabet"))
}

/// One step of a uniqueness witness orbit.
#[derive(Clone, Debug)]
pub struct OrbitStep {
    pub point: Scalar,
    pub digit: Digit,
    /// Catalog classification of the point (outside the switch region or in
    /// a fixed-digit interval when only one digit is admissible).
    pub location: Location,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The orbit returned exactly to `orbit[cycle_start]`.
    Unique { cycle_start: usize, cycle_len: usize },
    /// The orbit point at `step` admits every digit in `digits`.
    NotUnique { step: usize, digits: Vec<Digit> },
    Undecided { horizon: usize },
}

#[derive(Clone, Debug)]
pub struct UniquenessCertificate {
    pub point: Scalar,
    pub verdict: Verdict,
    /// Forced orbit steps before the decision.
    pub orbit: Vec<OrbitStep>,
    /// For `NotUnique`, the orbit point admitting several digits.
    pub branch_point: Option<Scalar>,
}

impl UniquenessCertificate {
    pub fn is_unique(&self) -> bool {
        matches!(self.verdict, Verdict::Unique { .. })
    }

    pub fn is_not_unique(&self) -> bool {
        matches!(self.verdict, Verdict::NotUnique { .. })
    }
}

/// Follows the forced orbit of `x` until it branches, closes, or hits the
/// horizon.
pub fn uniqueness_certificate(
    params: &ExpansionParams,
    x: &Scalar,
    max_steps: usize,
) -> Result<UniquenessCertificate, ExpansionError> {
    check_in_i(params, x).map_err(|e| match e {
        ExpansionError::Undetermined => ExpansionError::InexactPoint,
        other => other,
    })?;
    let catalog = build_catalog(params).map_err(|e| match e {
        GeometryError::Undetermined => ExpansionError::InexactPoint,
        other => ExpansionError::Geometry(other),
    })?;
    let exact = x.is_exact();
    // Hashing reads only the reduced representation, never the cached isolation.
    #[allow(clippy::mutable_key_type)]
    let mut seen: HashMap<Scalar, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut point = x.clone();
    for step in 0..max_steps {
        if exact {
            if let Some(&start) = seen.get(&point) {
                return Ok(UniquenessCertificate {
                    point: x.clone(),
                    verdict: Verdict::Unique { cycle_start: start, cycle_len: step - start },
                    orbit,
                    branch_point: None,
                });
            }
            seen.insert(point.clone(), step);
        }
        let digits = admissible_digits(params, &point).map_err(|e| match e {
            GeometryError::Undetermined => ExpansionError::InexactPoint,
            other => ExpansionError::Geometry(other),
        })?;
        if digits.len() >= 2 {
            return Ok(UniquenessCertificate {
                point: x.clone(),
                verdict: Verdict::NotUnique { step, digits },
                orbit,
                branch_point: Some(point),
            });
        }
        let d = digits[0];
        let location = locate(&catalog, &point);
        let next = apply_map(params, d, &point)?;
        orbit.push(OrbitStep { point, digit: d, location });
        point = next;
    }
    Ok(UniquenessCertificate {
        point: x.clone(),
        verdict: Verdict::Undecided { horizon: max_steps },
        orbit,
        branch_point: None,
    })
}

/// The distinguished points with a unique expansion above `G(m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistinguishedPoint {
    /// `k/(beta-1)`, fixed by `T_k`.
    Center,
    /// `(k beta + k + 1)/(beta^2 - 1)`.
    Cycle2a,
    /// `((k+1) beta + k)/(beta^2 - 1)`.
    Cycle2b,
}

pub fn distinguished_point(params: &ExpansionParams, which: DistinguishedPoint) -> Scalar {
    let k = params.k() as i64;
    let b = params.beta_scalar();
    let b2m1 = b.mul(b).add_rational(&rat::int(-1));
    match which {
        DistinguishedPoint::Center => Ok(params.mobius(0, k, 1, -1)),
        DistinguishedPoint::Cycle2a => b.scale(&rat::int(k)).add_rational(&rat::int(k + 1)).div(&b2m1),
        DistinguishedPoint::Cycle2b => b.scale(&rat::int(k + 1)).add_rational(&rat::int(k)).div(&b2m1),
    }
    .expect("beta^2 - 1 is nonzero for beta > 1")
}

/// The base point with a unique expansion: `k/(beta-1)` for even `m`,
/// `(k beta + k + 1)/(beta^2 - 1)` for odd `m`.
pub fn base_unique_point(params: &ExpansionParams) -> Scalar {
    if params.is_even() {
        distinguished_point(params, DistinguishedPoint::Center)
    } else {
        distinguished_point(params, DistinguishedPoint::Cycle2a)
    }
}

/// Whether `beta > G(m)`: `beta > k + 1` for even `m`, and
/// `beta^2 - (k+1) beta - (k+1) > 0` for odd `m`.
pub fn beta_above_golden(params: &ExpansionParams) -> Option<bool> {
    let k = params.k() as i64;
    let b = params.beta_scalar();
    let q = if params.is_even() {
        b.add_rational(&rat::int(-(k + 1)))
    } else {
        b.mul(b).sub(&b.scale(&rat::int(k + 1))).add_rational(&rat::int(-(k + 1)))
    };
    q.compare_rational(&rat::int(0)).map(|o| o == Ordering::Greater)
}

/// Preimages `T_0^{-j}(x_0) = x_0 / beta^j` of the base unique point for
/// `j = 1..=depth` (or `x_0` itself when `depth = 0`).
pub fn uniqueness_preimage_family(params: &ExpansionParams, depth: usize) -> Result<Vec<Scalar>, ExpansionError> {
    match beta_above_golden(params) {
        Some(true) => {}
        Some(false) => return Err(ExpansionError::BetaBelowThreshold),
        None => return Err(ExpansionError::Undetermined),
    }
    let x0 = base_unique_point(params);
    if depth == 0 {
        return Ok(vec![x0]);
    }
    let mut out = Vec::with_capacity(depth);
    let mut x = x0;
    for _ in 0..depth {
        x = x.div(params.beta_scalar())?;
        out.push(x.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{beta_f, golden_ratio};
    use crate::numeric::rat::{int, r};

    fn golden1() -> ExpansionParams {
        ExpansionParams::exact(1, &golden_ratio(1).unwrap()).unwrap()
    }

    #[test]
    fn endpoint_has_single_path() {
        let p = golden1();
        let t = expand_tree(&p, &p.integer(0), 8).unwrap();
        assert_eq!(t.prefixes(), vec![vec![0; 8]]);
    }

    #[test]
    fn center_is_fixed_above_threshold() {
        let p = ExpansionParams::rational(2, r(5, 2)).unwrap();
        let x = distinguished_point(&p, DistinguishedPoint::Center);
        let t = expand_tree(&p, &x, 10).unwrap();
        assert_eq!(t.prefixes(), vec![vec![1; 10]]);
        let c = count_prefixes(&p, &x, 20).unwrap();
        assert!(c.counts.iter().all(|c| c == &Count::Exact(BigUint::one())));
    }

    #[test]
    fn tree_and_count_agree() {
        let p = ExpansionParams::rational(1, r(3, 2)).unwrap();
        let x = p.integer(1);
        let t = expand_tree(&p, &x, 10).unwrap();
        let c = count_prefixes(&p, &x, 10).unwrap();
        assert_eq!(c.last(), &Count::Exact(BigUint::from(t.leaf_count())));
        for w in c.counts.windows(2) {
            assert!(w[1].value() >= w[0].value());
        }
    }

    #[test]
    fn truncated_count_is_a_lower_bound() {
        let p = ExpansionParams::rational(2, r(13, 10)).unwrap();
        let x = p.point(r(7, 5));
        let full = count_prefixes(&p, &x, 9).unwrap();
        let capped = count_prefixes_capped(&p, &x, 9, 16).unwrap();
        assert!(!capped.last().is_exact());
        assert!(capped.last().value() <= full.last().value());
        assert!(capped.last().value() >= &BigUint::from(16u32));
    }

    #[test]
    fn depth_zero_counts_one() {
        let p = ExpansionParams::rational(3, r(5, 2)).unwrap();
        let c = count_prefixes(&p, &p.integer(1), 0).unwrap();
        assert_eq!(c.counts, vec![Count::Exact(BigUint::one())]);
    }

    #[test]
    fn quasi_greedy_at_golden() {
        let d = quasi_greedy_one(&golden1(), 20).unwrap();
        assert_eq!(d.preperiod(), &[] as &[Digit]);
        assert_eq!(d.period(), &[1, 0]);
    }

    #[test]
    fn quasi_greedy_at_beta_f() {
        for m in 1..=6u32 {
            let k = m / 2;
            let p = ExpansionParams::exact(m, &beta_f(m).unwrap()).unwrap();
            let d = quasi_greedy_one(&p, 64).unwrap().canonical();
            if m % 2 == 0 {
                assert_eq!(d.period(), &[k + 1, k - 1], "m={m}");
            } else {
                assert_eq!(d.period(), &[k + 1, k + 1, k, k], "m={m}");
            }
            assert!(d.preperiod().is_empty());
        }
    }

    #[test]
    fn quasi_greedy_at_integer_base() {
        // Base 3 with digits up to 2: quasi-greedy expansion of 1 is 2^∞.
        let p = ExpansionParams::rational(2, int(3)).unwrap();
        assert_eq!(quasi_greedy_one(&p, 10).unwrap().canonical().period(), &[2]);
    }

    #[test]
    fn certified_quasi_greedy_stops_at_jump() {
        // 1 = 1/g + 1/g^2 is finite at the golden ratio, so digit 2 jumps.
        let g = golden_ratio(1).unwrap();
        let c = g.to_certified(&rat::pow2(-80));
        match quasi_greedy_certified(1, &c.lo(), &c.hi(), 200) {
            Err(ExpansionError::QuasiGreedyUndetermined { determined }) => assert_eq!(determined, vec![1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn certified_quasi_greedy_matches_exact_for_point() {
        let b = rat::r(9, 5);
        let p = ExpansionParams::rational(1, b.clone()).unwrap();
        let exact = quasi_greedy_one(&p, 40).unwrap();
        let cert = quasi_greedy_certified(1, &b, &b, 40).unwrap();
        assert_eq!(cert, exact.prefix(40));
    }

    #[test]
    fn admissibility_at_beta_f() {
        let p = ExpansionParams::exact(2, &beta_f(2).unwrap()).unwrap();
        let w = |pre: Vec<Digit>, per: Vec<Digit>| DigitSequence::periodic(pre, per, 2).unwrap();
        assert!(is_admissible(&p, &w(vec![], vec![1]), 256).unwrap());
        assert!(!is_admissible(&p, &w(vec![], vec![2, 0]), 256).unwrap());
        let p = ExpansionParams::exact(3, &beta_f(3).unwrap()).unwrap();
        let w = |pre: Vec<Digit>, per: Vec<Digit>| DigitSequence::periodic(pre, per, 3).unwrap();
        assert!(is_admissible(&p, &w(vec![], vec![1, 2]), 256).unwrap());
        assert!(!is_admissible(&p, &w(vec![], vec![1]), 256).unwrap());
    }

    #[test]
    fn horizon_too_short_is_reported() {
        let d = DigitSequence::finite(vec![2, 1, 2, 1, 2, 1], 2).unwrap();
        let w = DigitSequence::periodic(vec![], vec![1], 2).unwrap();
        assert!(is_admissible_against(&d, &w, 6).unwrap());
        let d = DigitSequence::finite(vec![1; 10], 2).unwrap();
        assert_eq!(is_admissible_against(&d, &w, 10).unwrap_err(), ExpansionError::HorizonTooShort(10));
    }

    #[test]
    fn greedy_examples() {
        let p = ExpansionParams::rational(2, int(2)).unwrap();
        assert_eq!(greedy_expansion(&p, &p.integer(1), 5).unwrap().prefix(5), vec![2, 0, 0, 0, 0]);
        let right = p.right_end().clone();
        assert_eq!(greedy_expansion(&p, &right, 4).unwrap().prefix(4), vec![2; 4]);
    }

    #[test]
    fn certificates() {
        let p = ExpansionParams::rational(2, r(5, 2)).unwrap();
        let c = uniqueness_certificate(&p, &distinguished_point(&p, DistinguishedPoint::Center), 100).unwrap();
        assert_eq!(c.verdict, Verdict::Unique { cycle_start: 0, cycle_len: 1 });

        let p = ExpansionParams::rational(3, r(14, 5)).unwrap();
        let c = uniqueness_certificate(&p, &distinguished_point(&p, DistinguishedPoint::Cycle2a), 100).unwrap();
        assert_eq!(c.verdict, Verdict::Unique { cycle_start: 0, cycle_len: 2 });
        let b = distinguished_point(&p, DistinguishedPoint::Cycle2b);
        assert_eq!(c.orbit[1].point.compare(&b), Some(Ordering::Equal));

        let p = ExpansionParams::rational(2, r(19, 10)).unwrap();
        let c = uniqueness_certificate(&p, &distinguished_point(&p, DistinguishedPoint::Center), 64).unwrap();
        assert!(c.is_not_unique());
    }

    #[test]
    fn ball_mode_never_certifies_unique() {
        let beta = crate::numeric::CertifiedValue::new(r(5, 2), r(1, 1_000_000_000));
        let p = ExpansionParams::new(2, Beta::Certified(beta)).unwrap();
        let x = p.point(r(2, 3));
        match uniqueness_certificate(&p, &x, 50) {
            Ok(c) => assert!(!c.is_unique()),
            Err(e) => assert_eq!(e, ExpansionError::InexactPoint),
        }
    }

    #[test]
    fn preimage_family() {
        let p = ExpansionParams::rational(3, int(3)).unwrap();
        let fam = uniqueness_preimage_family(&p, 2).unwrap();
        assert_eq!(fam[0].compare(&p.point(r(5, 24))), Some(Ordering::Equal));
        assert_eq!(fam[1].compare(&p.point(r(5, 72))), Some(Ordering::Equal));
        for x in &fam {
            assert!(uniqueness_certificate(&p, x, 100).unwrap().is_unique());
        }
        let p = ExpansionParams::rational(2, r(5, 2)).unwrap();
        assert_eq!(uniqueness_preimage_family(&p, 0).unwrap().len(), 1);
        let low = ExpansionParams::rational(2, r(19, 10)).unwrap();
        assert_eq!(uniqueness_preimage_family(&low, 3).unwrap_err(), ExpansionError::BetaBelowThreshold);
    }
}
