//! Constructive lower bounds for the Hausdorff dimension of the set of
//! expansions of a point, for `beta` below the generalized golden ratio.
//!
//! An interval `[L, R]` inside `I` is built so that every point of it has two
//! different words of a common length `n(beta)` mapping it back into `[L, R]`.
//! The word length is certified by an exact cover of `[L, R]`, and the bound
//! `log_{m+1} 2 / n(beta)` follows by counting.

use std::cmp::Ordering;
use std::collections::HashSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::expansions::{count_prefixes_capped, distinguished_point, log_biguint, DistinguishedPoint, ExpansionError};
use crate::geometry::{admissible_digits, apply_map, ExpansionParams, GeometryError, Interval};
use crate::numeric::{rat, AlgebraicNumber, NumericError, Rational, Scalar};
use crate::sequence::Digit;

/// Largest word length tried by [`certify_n_beta`].
pub const MAX_N_BETA: usize = 48;
/// Depth used for the empirical growth comparison.
pub const DEFAULT_COUNT_DEPTH: usize = 40;
/// Frontier cap used for the empirical growth comparison.
pub const DEFAULT_COUNT_CAP: usize = 1 << 12;

const MAX_HALVINGS: u32 = 64;
const MAX_SPLIT_DEPTH: u32 = 48;
const MAX_COVER_PIECES: usize = 1 << 16;
const CERTIFY_RETRIES: u32 = 6;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum DimensionError {
    #[error("beta must lie below the generalized golden ratio")]
    NotBelowGoldenRatio,
    #[error("dimension bounds need an exact beta")]
    InexactBeta,
    #[error("point must lie in the open interval (0, m/(beta-1))")]
    PointNotInterior,
    #[error("doubling interval is degenerate")]
    DegenerateInterval,
    #[error("no doubling certificate found; uncovered piece [{lo}, {hi}]")]
    CertificationFailure { lo: f64, hi: f64 },
    #[error("point did not reach the doubling interval within {horizon} steps")]
    JxNotFound { horizon: usize },
    #[error("comparison undetermined")]
    Undetermined,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

type Result<T> = std::result::Result<T, DimensionError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParityCase {
    Even,
    /// Odd `m` with `beta < (2k+3)/2`.
    OddLow,
    /// Odd `m` with `beta >= (2k+3)/2`, where fixed digit intervals exist.
    OddHigh,
}

/// Which family of formulas defines the interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Construction {
    EvenFormulas,
    OddFormulas,
}

#[derive(Clone, Debug)]
pub struct Epsilons {
    pub parity_case: ParityCase,
    pub construction: Construction,
    pub eps0: Scalar,
    /// `eps[i - 1]` is the margin for index `i` in `1..m`.
    pub eps: Vec<Scalar>,
    /// Starred margins, used by the odd formulas for `i` in `1..k` and
    /// `k+2..m`; `None` elsewhere.
    pub eps_star: Vec<Option<Scalar>>,
    /// How many times every margin was halved from its default.
    pub halvings: u32,
}

impl Epsilons {
    pub fn eps(&self, i: Digit) -> &Scalar {
        &self.eps[i as usize - 1]
    }

    pub fn eps_star(&self, i: Digit) -> Option<&Scalar> {
        self.eps_star.get(i as usize - 1).and_then(Option::as_ref)
    }

    fn halved(&self) -> Epsilons {
        let h = rat::r(1, 2);
        Epsilons {
            parity_case: self.parity_case,
            construction: self.construction,
            eps0: self.eps0.scale(&h),
            eps: self.eps.iter().map(|e| e.scale(&h)).collect(),
            eps_star: self.eps_star.iter().map(|e| e.as_ref().map(|e| e.scale(&h))).collect(),
            halvings: self.halvings + 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DoublingInterval {
    pub interval: Interval,
    pub epsilons: Epsilons,
    pub parity_case: ParityCase,
    /// The pieces of the trimmed switch region used by the case analysis;
    /// their endpoints seed the certified cover.
    pub decomposition: Vec<Interval>,
}

impl DoublingInterval {
    pub fn lo(&self) -> &Scalar {
        &self.interval.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.interval.hi
    }
}

/// A piece of the cover of `[L, R]` with two words returning it.
#[derive(Clone, Debug)]
pub struct CoverPiece {
    pub lo: Scalar,
    pub hi: Scalar,
    pub words: [Vec<Digit>; 2],
}

#[derive(Clone, Debug)]
pub struct DoublingCertificate {
    pub n_beta: usize,
    /// Consecutive closed pieces, sorted, covering `[L, R]`.
    pub pieces: Vec<CoverPiece>,
}

impl DoublingCertificate {
    /// Index of a piece containing `y`.
    pub fn piece_for(&self, y: &Scalar) -> Result<Option<usize>> {
        for (i, p) in self.pieces.iter().enumerate() {
            if cmp(&p.lo, y)? != Ordering::Greater && cmp(y, &p.hi)? != Ordering::Greater {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

#[derive(Clone, Debug)]
pub struct DoublingData {
    pub interval: DoublingInterval,
    pub certificate: DoublingCertificate,
}

#[derive(Clone, Debug)]
pub struct DimensionBound {
    pub x: Scalar,
    /// Fewest maps sending `x` into the doubling interval.
    pub j_x: usize,
    pub n_beta: usize,
    /// `log_{m+1} 2 / n(beta)`.
    pub lower_bound: f64,
    /// `log_{m+1} N_j(x) / j` for `j = 0..=depth`.
    pub growth: Vec<f64>,
    /// Growth proxy at the final depth.
    pub empirical_lower: f64,
    /// False when the prefix count at the final depth is only a lower bound.
    pub empirical_exact: bool,
}

fn cmp(a: &Scalar, b: &Scalar) -> Result<Ordering> {
    a.compare(b).ok_or(DimensionError::Undetermined)
}

fn min_of(xs: Vec<Scalar>) -> Result<Scalar> {
    let mut it = xs.into_iter();
    let mut best = it.next().expect("nonempty candidate list");
    for x in it {
        if cmp(&x, &best)? == Ordering::Less {
            best = x;
        }
    }
    Ok(best)
}

fn max_of(xs: Vec<Scalar>) -> Result<Scalar> {
    let mut it = xs.into_iter();
    let mut best = it.next().expect("nonempty candidate list");
    for x in it {
        if cmp(&x, &best)? == Ordering::Greater {
            best = x;
        }
    }
    Ok(best)
}

fn half(x: Scalar) -> Scalar {
    x.scale(&rat::r(1, 2))
}

fn require_exact(params: &ExpansionParams) -> Result<()> {
    if params.is_exact() {
        Ok(())
    } else {
        Err(DimensionError::InexactBeta)
    }
}

/// Whether `beta < G(m)`.
pub fn below_golden(params: &ExpansionParams) -> Result<bool> {
    let k = params.k() as i64;
    let b = params.beta_scalar();
    let q = if params.is_even() {
        b.add_rational(&rat::int(-(k + 1)))
    } else {
        b.mul(b).sub(&b.scale(&rat::int(k + 1))).add_rational(&rat::int(-(k + 1)))
    };
    Ok(q.compare_rational(&Rational::zero()).ok_or(DimensionError::Undetermined)? == Ordering::Less)
}

pub fn parity_case(params: &ExpansionParams) -> Result<ParityCase> {
    if params.is_even() {
        return Ok(ParityCase::Even);
    }
    let k = params.k() as i64;
    let threshold = rat::r(2 * k + 3, 2);
    match params.beta_scalar().compare_rational(&threshold) {
        Some(Ordering::Less) => Ok(ParityCase::OddLow),
        Some(_) => Ok(ParityCase::OddHigh),
        None => Err(DimensionError::Undetermined),
    }
}

/// The odd formulas are used exactly in the odd high case with `m >= 3`.
/// For `m = 1` the even formulas already cover all of `(1, G(1))`.
pub fn default_construction(params: &ExpansionParams) -> Result<Construction> {
    Ok(match parity_case(params)? {
        ParityCase::OddHigh if params.m() >= 3 => Construction::OddFormulas,
        _ => Construction::EvenFormulas,
    })
}

// `((i-1) beta + m - (i-1)) / (beta (beta - 1))`: right end of the i-th
// choice interval.
fn choice_right(params: &ExpansionParams, i: Digit) -> Scalar {
    let m = params.m() as i64;
    let i = i as i64;
    params.over_beta_beta_minus_one(i - 1, m - i + 1)
}

fn switch_right(params: &ExpansionParams) -> Scalar {
    params.over_beta_beta_minus_one(params.m() as i64 - 1, 1)
}

// Half the slack in the requirements `T_0(1/beta + e) <= S_R - e` and
// `1 >= 1/beta + e`; the map `T_m` side is the mirror image.
fn default_eps0(params: &ExpansionParams) -> Result<Scalar> {
    let one_minus = params.integer(1).sub(&params.over_beta(1));
    let b_plus_one = params.beta_scalar().add_rational(&rat::int(1));
    let slack = switch_right(params).add_rational(&rat::int(-1)).div(&b_plus_one)?;
    Ok(half(min_of(vec![one_minus, slack])?))
}

fn raw_epsilons(params: &ExpansionParams, construction: Construction) -> Result<Epsilons> {
    let m = params.m();
    let k = params.k();
    let case = parity_case(params)?;
    let eps0 = default_eps0(params)?;
    let fixed = |i: Digit| params.mobius(0, i as i64, 1, -1);
    let mut eps = Vec::with_capacity(m as usize);
    let mut eps_star = vec![None; m.saturating_sub(1) as usize];
    match construction {
        Construction::EvenFormulas => {
            for i in 1..m {
                eps.push(half(choice_right(params, i).sub(&params.over_beta(i as i64 + 1))));
            }
        }
        Construction::OddFormulas => {
            if params.is_even() || m < 3 {
                return Err(DimensionError::DegenerateInterval);
            }
            for i in 1..m {
                let e = if i <= k {
                    choice_right(params, i).sub(&fixed(i))
                } else {
                    fixed(i).sub(&params.over_beta(i as i64 + 1))
                };
                eps.push(half(e));
            }
            let b = params.beta_scalar();
            let e_k = eps[k as usize - 1].clone();
            let e_k1 = eps[k as usize].clone();
            // T_i((i+1)/beta + e*) = 1 + beta e* must stay below (k+2)/beta + eps_{k+1}.
            let low_slack = params.over_beta(k as i64 + 2).add(&e_k1).add_rational(&rat::int(-1)).div(b)?;
            // T_i(A_i - e*) = (m+1-beta)/(beta-1) - beta e* must stay above A_k - eps_k.
            let mirror = params.mobius(-1, m as i64 + 1, 1, -1);
            let high_slack = mirror.sub(&choice_right(params, k)).add(&e_k).div(b)?;
            for i in (1..k).chain(k + 2..m) {
                let slack = if i < k { &low_slack } else { &high_slack };
                eps_star[i as usize - 1] = Some(half(slack.clone()));
            }
        }
    }
    Ok(Epsilons { parity_case: case, construction, eps0, eps, eps_star, halvings: 0 })
}

fn positive(x: &Scalar) -> Result<bool> {
    Ok(x.compare_rational(&Rational::zero()).ok_or(DimensionError::Undetermined)? == Ordering::Greater)
}

fn map(params: &ExpansionParams, d: Digit, x: &Scalar) -> Result<Scalar> {
    Ok(apply_map(params, d, x)?)
}

// L, R and the decomposition for a margin schedule.
fn layout(params: &ExpansionParams, e: &Epsilons) -> Result<(Scalar, Scalar, Vec<Interval>)> {
    let m = params.m();
    let k = params.k();
    let ob = |q: Digit| params.over_beta(q as i64);
    let a = |i: Digit| choice_right(params, i);
    let s_r = switch_right(params);
    let left = ob(1).add(&e.eps0);
    let right = s_r.sub(&e.eps0);
    let star = |i: Digit| e.eps_star(i).cloned().ok_or(DimensionError::DegenerateInterval);
    let mut lows = vec![map(params, 1, &left)?];
    let mut highs = vec![map(params, m - 1, &right)?];
    let mut pieces = Vec::new();
    match e.construction {
        Construction::EvenFormulas => {
            for i in 1..m {
                let p = ob(i + 1).add(e.eps(i));
                lows.push(map(params, i + 1, &p)?);
                highs.push(map(params, i - 1, &p)?);
            }
            if m == 1 {
                pieces.push(Interval::closed(left, right));
            } else {
                pieces.push(Interval::closed(left, ob(2)));
                pieces.push(Interval::closed(a(m - 1), right));
                for i in 1..m.saturating_sub(1) {
                    pieces.push(Interval::closed(a(i), ob(i + 2)));
                }
                for i in 1..m {
                    pieces.push(Interval::closed(ob(i + 1), a(i)));
                }
            }
        }
        Construction::OddFormulas => {
            let cycle_a = distinguished_point(params, DistinguishedPoint::Cycle2a);
            let cycle_b = distinguished_point(params, DistinguishedPoint::Cycle2b);
            lows.push(map(params, k + 1, &cycle_a)?);
            highs.push(map(params, k, &cycle_b)?);
            for i in 2..=k {
                lows.push(map(params, i, &ob(i).add(&star(i - 1)?))?);
            }
            for i in k + 2..=m {
                lows.push(map(params, i, &ob(i).add(e.eps(i - 1)))?);
            }
            for i in 1..=k {
                highs.push(map(params, i - 1, &a(i).sub(e.eps(i)))?);
            }
            for i in k + 2..m {
                highs.push(map(params, i - 1, &a(i).sub(&star(i)?))?);
            }
            pieces.push(Interval::closed(left, a(1).sub(e.eps(1))));
            pieces.push(Interval::closed(ob(m).add(e.eps(m - 1)), right));
            pieces.push(Interval::closed(a(k).sub(e.eps(k)), ob(k + 2).add(e.eps(k + 1))));
            for i in 2..=k {
                pieces.push(Interval::closed(ob(i).add(&star(i - 1)?), a(i).sub(e.eps(i))));
            }
            for i in k + 2..m {
                pieces.push(Interval::closed(ob(i).add(e.eps(i - 1)), a(i).sub(&star(i)?)));
            }
            for i in 1..k {
                pieces.push(Interval::closed(a(i).sub(e.eps(i)), ob(i + 1).add(&star(i)?)));
            }
            for i in k + 2..m {
                pieces.push(Interval::closed(a(i).sub(&star(i)?), ob(i + 1).add(e.eps(i))));
            }
        }
    }
    Ok((min_of(lows)?, max_of(highs)?, pieces))
}

fn layout_is_valid(params: &ExpansionParams, e: &Epsilons, lo: &Scalar, hi: &Scalar, pieces: &[Interval]) -> Result<bool> {
    let margins_positive = positive(&e.eps0)?
        && e.eps.iter().try_fold(true, |acc, x| Ok::<_, DimensionError>(acc && positive(x)?))?
        && e.eps_star.iter().flatten().try_fold(true, |acc, x| Ok::<_, DimensionError>(acc && positive(x)?))?;
    if !margins_positive {
        return Ok(false);
    }
    let zero = params.integer(0);
    let ok = cmp(&zero, lo)? == Ordering::Less
        && cmp(lo, hi)? == Ordering::Less
        && cmp(hi, params.right_end())? == Ordering::Less
        && cmp(lo, &params.over_beta(1))? != Ordering::Greater
        && cmp(hi, &switch_right(params))? != Ordering::Less;
    if !ok {
        return Ok(false);
    }
    for p in pieces {
        if cmp(&p.lo, &p.hi)? != Ordering::Less {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_preconditions(params: &ExpansionParams) -> Result<()> {
    require_exact(params)?;
    if !below_golden(params)? {
        return Err(DimensionError::NotBelowGoldenRatio);
    }
    Ok(())
}

fn shrink_until_valid(params: &ExpansionParams, mut e: Epsilons) -> Result<DoublingInterval> {
    for _ in 0..=MAX_HALVINGS {
        let (lo, hi, pieces) = layout(params, &e)?;
        if layout_is_valid(params, &e, &lo, &hi, &pieces)? {
            return Ok(DoublingInterval {
                interval: Interval::closed(lo, hi),
                parity_case: e.parity_case,
                epsilons: e,
                decomposition: pieces,
            });
        }
        e = e.halved();
    }
    Err(DimensionError::DegenerateInterval)
}

/// Margins for the default construction, shrunk until the interval layout
/// is valid.
pub fn epsilon_schedule(params: &ExpansionParams) -> Result<Epsilons> {
    Ok(build_doubling_interval(params)?.epsilons)
}

pub fn build_doubling_interval(params: &ExpansionParams) -> Result<DoublingInterval> {
    check_preconditions(params)?;
    build_doubling_interval_with(params, default_construction(params)?)
}

/// As [`build_doubling_interval`] with an explicit choice of formulas.
pub fn build_doubling_interval_with(params: &ExpansionParams, construction: Construction) -> Result<DoublingInterval> {
    check_preconditions(params)?;
    shrink_until_valid(params, raw_epsilons(params, construction)?)
}

/// Exact arithmetic used by the cover search.
trait Exact: Clone + Send + Sync + Sized {
    fn from_scalar(s: &Scalar) -> Option<Self>;
    fn to_scalar(&self, params: &ExpansionParams) -> Scalar;
    /// `beta * self - d`.
    fn step(&self, beta: &Self, d: Digit) -> Self;
    fn cmp_to(&self, other: &Self) -> Result<Ordering>;
    fn sub(&self, other: &Self) -> Self;
    fn mid(&self, other: &Self) -> Self;
}

impl Exact for Rational {
    fn from_scalar(s: &Scalar) -> Option<Self> {
        s.as_exact().and_then(AlgebraicNumber::as_rational)
    }

    fn to_scalar(&self, params: &ExpansionParams) -> Scalar {
        params.constant(self.clone())
    }

    fn step(&self, beta: &Self, d: Digit) -> Self {
        beta * self - Rational::from_integer((d as i64).into())
    }

    fn cmp_to(&self, other: &Self) -> Result<Ordering> {
        Ok(self.cmp(other))
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mid(&self, other: &Self) -> Self {
        (self + other) / Rational::from_integer(2.into())
    }
}

impl Exact for AlgebraicNumber {
    fn from_scalar(s: &Scalar) -> Option<Self> {
        s.as_exact().cloned()
    }

    fn to_scalar(&self, _params: &ExpansionParams) -> Scalar {
        Scalar::Exact(self.clone())
    }

    fn step(&self, beta: &Self, d: Digit) -> Self {
        (beta * self).add_rational(&rat::int(-(d as i64)))
    }

    fn cmp_to(&self, other: &Self) -> Result<Ordering> {
        Ok(self.compare(other)?)
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mid(&self, other: &Self) -> Self {
        (self + other).scale(&rat::r(1, 2))
    }
}

struct Frame<T> {
    m: Digit,
    beta: T,
    zero: T,
    top: T,
    lo: T,
    hi: T,
    width: T,
}

/// A certified piece `[lo, hi]` with its two returning words.
type Piece<T> = (T, T, [Vec<Digit>; 2]);
/// A full cover, or the first piece that could not be certified.
type CoverAttempt<T> = std::result::Result<Vec<Piece<T>>, (T, T)>;

impl<T: Exact> Frame<T> {
    fn new(params: &ExpansionParams, di: &DoublingInterval) -> Option<Self> {
        let conv = |s: &Scalar| T::from_scalar(s);
        let lo = conv(di.lo())?;
        let hi = conv(di.hi())?;
        Some(Frame {
            m: params.m(),
            beta: conv(params.beta_scalar())?,
            zero: conv(&params.integer(0))?,
            top: conv(params.right_end())?,
            width: hi.sub(&lo),
            lo,
            hi,
        })
    }

    /// Up to two words of length `n` mapping all of `[a, b]` into `[L, R]`
    /// while staying inside `I`, in lexicographic order.
    fn two_words(&self, a: &T, b: &T, n: usize) -> Result<Vec<Vec<Digit>>> {
        let mut found = Vec::new();
        let mut word = Vec::with_capacity(n);
        self.dfs(a, b, n, &mut word, &mut found)?;
        Ok(found)
    }

    fn dfs(&self, u: &T, v: &T, n: usize, word: &mut Vec<Digit>, found: &mut Vec<Vec<Digit>>) -> Result<()> {
        if word.len() == n {
            if u.cmp_to(&self.lo)? != Ordering::Less && v.cmp_to(&self.hi)? != Ordering::Greater {
                found.push(word.clone());
            }
            return Ok(());
        }
        // Images only grow, so a piece wider than [L, R] cannot fit later.
        if v.sub(u).cmp_to(&self.width)? == Ordering::Greater {
            return Ok(());
        }
        for d in 0..=self.m {
            let u2 = u.step(&self.beta, d);
            if u2.cmp_to(&self.zero)? == Ordering::Less {
                break;
            }
            let v2 = v.step(&self.beta, d);
            if v2.cmp_to(&self.top)? == Ordering::Greater {
                continue;
            }
            word.push(d);
            self.dfs(&u2, &v2, n, word, found)?;
            word.pop();
            if found.len() >= 2 {
                return Ok(());
            }
        }
        Ok(())
    }

    // A cover at word length `n`.
    fn cover(&self, seeds: &[T], n: usize) -> Result<CoverAttempt<T>> {
        enum Slot<T> {
            Done(T, T, [Vec<Digit>; 2]),
            Todo(T, T, u32),
        }
        let mut slots: Vec<Slot<T>> = seeds.windows(2).map(|w| Slot::Todo(w[0].clone(), w[1].clone(), 0)).collect();
        loop {
            let todo: Vec<(usize, &T, &T)> = slots
                .iter()
                .enumerate()
                .filter_map(|(i, s)| match s {
                    Slot::Todo(a, b, _) => Some((i, a, b)),
                    Slot::Done(..) => None,
                })
                .collect();
            if todo.is_empty() {
                break;
            }
            if slots.len() + todo.len() > MAX_COVER_PIECES {
                let (_, a, b) = todo[0];
                return Ok(Err((a.clone(), b.clone())));
            }
            let outcomes: Vec<Result<Vec<Vec<Digit>>>> =
                todo.par_iter().map(|&(_, a, b)| self.two_words(a, b, n)).collect();
            let mut results: Vec<Option<Vec<Vec<Digit>>>> = (0..slots.len()).map(|_| None).collect();
            for ((i, _, _), out) in todo.iter().zip(outcomes) {
                results[*i] = Some(out?);
            }
            let mut next = Vec::with_capacity(slots.len() + todo.len());
            for (slot, res) in slots.into_iter().zip(results) {
                match (slot, res) {
                    (Slot::Todo(a, b, _), Some(mut words)) if words.len() == 2 => {
                        let w1 = words.pop().expect("two words");
                        let w0 = words.pop().expect("two words");
                        next.push(Slot::Done(a, b, [w0, w1]));
                    }
                    (Slot::Todo(a, b, depth), Some(_)) => {
                        let c = a.mid(&b);
                        // If the midpoint itself lacks two words, no cover at
                        // this length exists.
                        if depth >= MAX_SPLIT_DEPTH || self.two_words(&c, &c, n)?.len() < 2 {
                            return Ok(Err((a, b)));
                        }
                        next.push(Slot::Todo(a, c.clone(), depth + 1));
                        next.push(Slot::Todo(c, b, depth + 1));
                    }
                    (slot, _) => next.push(slot),
                }
            }
            slots = next;
        }
        Ok(Ok(slots
            .into_iter()
            .map(|s| match s {
                Slot::Done(a, b, w) => (a, b, w),
                Slot::Todo(..) => unreachable!("all pieces processed"),
            })
            .collect()))
    }
}

fn seeds<T: Exact>(di: &DoublingInterval) -> Result<Vec<T>> {
    let conv = |s: &Scalar| T::from_scalar(s).ok_or(DimensionError::InexactBeta);
    let lo = conv(di.lo())?;
    let hi = conv(di.hi())?;
    let mut inner: Vec<T> = Vec::new();
    for p in &di.decomposition {
        for end in [&p.lo, &p.hi] {
            let t = conv(end)?;
            if t.cmp_to(&lo)? == Ordering::Greater && t.cmp_to(&hi)? == Ordering::Less {
                inner.push(t);
            }
        }
    }
    let mut err = None;
    inner.sort_by(|a, b| {
        a.cmp_to(b).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let mut out = vec![lo];
    for t in inner {
        if out.last().expect("nonempty").cmp_to(&t)? != Ordering::Equal {
            out.push(t);
        }
    }
    out.push(hi);
    Ok(out)
}

fn certify_generic<T: Exact>(params: &ExpansionParams, di: &DoublingInterval) -> Result<DoublingCertificate> {
    let frame = Frame::<T>::new(params, di).ok_or(DimensionError::InexactBeta)?;
    let seeds = seeds::<T>(di)?;
    let mut last_fail = None;
    for n in 1..=MAX_N_BETA {
        match frame.cover(&seeds, n)? {
            Ok(pieces) => {
                let pieces = pieces
                    .into_iter()
                    .map(|(a, b, words)| CoverPiece { lo: a.to_scalar(params), hi: b.to_scalar(params), words })
                    .collect();
                return Ok(DoublingCertificate { n_beta: n, pieces });
            }
            Err(piece) => last_fail = Some(piece),
        }
    }
    let (a, b) = last_fail.expect("at least one length tried");
    Err(DimensionError::CertificationFailure { lo: a.to_scalar(params).to_f64(), hi: b.to_scalar(params).to_f64() })
}

/// Smallest `n <= MAX_N_BETA` admitting a cover of the doubling interval by
/// closed pieces, each with two distinct words of length `n` whose exact
/// affine images of the piece lie in the interval.
pub fn certify_n_beta(di: &DoublingInterval, params: &ExpansionParams) -> Result<DoublingCertificate> {
    require_exact(params)?;
    let rational = params.beta_scalar().as_exact().and_then(AlgebraicNumber::as_rational).is_some();
    if rational {
        certify_generic::<Rational>(params, di)
    } else {
        certify_generic::<AlgebraicNumber>(params, di)
    }
}

/// Builds and certifies the doubling interval, halving all margins and
/// retrying when certification fails.
pub fn certified_doubling_interval(params: &ExpansionParams) -> Result<DoublingData> {
    check_preconditions(params)?;
    let mut di = build_doubling_interval(params)?;
    let mut attempt = 0;
    loop {
        match certify_n_beta(&di, params) {
            Ok(certificate) => return Ok(DoublingData { interval: di, certificate }),
            Err(DimensionError::CertificationFailure { .. }) if attempt < CERTIFY_RETRIES => {
                attempt += 1;
                di = shrink_until_valid(params, di.epsilons.halved())?;
            }
            Err(e) => return Err(e),
        }
    }
}

/// Re-checks a certificate with the public map functions: the pieces tile
/// `[L, R]`, each carries two distinct words of length `n(beta)`, and every
/// partial image of each piece stays in `I` with the full image in `[L, R]`.
pub fn verify_certificate(params: &ExpansionParams, di: &DoublingInterval, cert: &DoublingCertificate) -> Result<bool> {
    let Some(first) = cert.pieces.first() else {
        return Ok(false);
    };
    if cmp(&first.lo, di.lo())? != Ordering::Equal
        || cmp(&cert.pieces.last().expect("nonempty").hi, di.hi())? != Ordering::Equal
    {
        return Ok(false);
    }
    for w in cert.pieces.windows(2) {
        if cmp(&w[0].hi, &w[1].lo)? != Ordering::Equal {
            return Ok(false);
        }
    }
    let whole = params.interval_i();
    for p in &cert.pieces {
        if cmp(&p.lo, &p.hi)? == Ordering::Greater || p.words[0] == p.words[1] {
            return Ok(false);
        }
        for word in &p.words {
            if word.len() != cert.n_beta {
                return Ok(false);
            }
            let (mut u, mut v) = (p.lo.clone(), p.hi.clone());
            for &d in word {
                u = map(params, d, &u)?;
                v = map(params, d, &v)?;
                if !Interval::closed(u.clone(), v.clone()).is_subset_of(&whole).ok_or(DimensionError::Undetermined)? {
                    return Ok(false);
                }
            }
            if !Interval::closed(u, v).is_subset_of(&di.interval).ok_or(DimensionError::Undetermined)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_interior(params: &ExpansionParams, x: &Scalar) -> Result<()> {
    match params.interval_i().contains_interior(x) {
        Some(true) => Ok(()),
        Some(false) => Err(DimensionError::PointNotInterior),
        None => Err(DimensionError::Undetermined),
    }
}

/// Steps needed to leave the neighbourhoods of the ends of `I` before the
/// doubling interval is reached from `x`.
fn reach_horizon(params: &ExpansionParams, di: &DoublingInterval, x: &Scalar) -> usize {
    let top = params.right_end().to_f64();
    let lb = params.beta_f64().ln();
    let steps = |gap: f64| ((top / gap.max(f64::MIN_POSITIVE)).ln() / lb).ceil().max(0.0) as usize;
    let n_s = steps(di.lo().to_f64().min(top - di.hi().to_f64())) + 1;
    let xf = x.to_f64();
    n_s + 64 + steps(xf.min(top - xf))
}

/// `j(x)` with a word of that length mapping `x` into the doubling interval.
pub fn steps_to_interval(params: &ExpansionParams, di: &DoublingInterval, x: &Scalar) -> Result<(usize, Vec<Digit>)> {
    check_interior(params, x)?;
    let horizon = reach_horizon(params, di, x);
    let mut frontier: Vec<(Scalar, Vec<Digit>)> = vec![(x.clone(), Vec::new())];
    for j in 0..=horizon {
        for (y, w) in &frontier {
            if di.interval.contains(y).ok_or(DimensionError::Undetermined)? {
                return Ok((j, w.clone()));
            }
        }
        #[allow(clippy::mutable_key_type)]
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (y, w) in &frontier {
            for d in admissible_digits(params, y)? {
                let z = map(params, d, y)?;
                if seen.insert(z.clone()) {
                    let mut w2 = w.clone();
                    w2.push(d);
                    next.push((z, w2));
                }
            }
        }
        frontier = next;
    }
    Err(DimensionError::JxNotFound { horizon })
}

/// The `n`-prefixes produced by the doubling algorithm: the word reaching the
/// interval, followed by blocks chosen from the certificate.
pub fn generated_prefixes(params: &ExpansionParams, data: &DoublingData, x: &Scalar, n: usize) -> Result<Vec<Vec<Digit>>> {
    let (_, lead) = steps_to_interval(params, &data.interval, x)?;
    let mut y = x.clone();
    for &d in &lead {
        y = map(params, d, &y)?;
    }
    let mut leaves = vec![(y, lead)];
    while leaves[0].1.len() < n {
        let mut next = Vec::with_capacity(2 * leaves.len());
        for (y, w) in &leaves {
            let i = data.certificate.piece_for(y)?.ok_or(DimensionError::DegenerateInterval)?;
            for block in &data.certificate.pieces[i].words {
                let mut z = y.clone();
                for &d in block {
                    z = map(params, d, &z)?;
                }
                let mut w2 = w.clone();
                w2.extend_from_slice(block);
                next.push((z, w2));
            }
        }
        leaves = next;
    }
    let mut out: Vec<Vec<Digit>> = leaves.into_iter().map(|(_, mut w)| {
        w.truncate(n);
        w
    }).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Lower bound `2^(floor((n - j) / n_beta) - 1)` on the number of generated
/// prefixes of length `n >= j`.
pub fn minimal_prefix_bound(j: usize, n_beta: usize, n: usize) -> f64 {
    let blocks = (n.saturating_sub(j) / n_beta) as i32;
    2f64.powi(blocks - 1)
}

/// `log_{m+1} 2 / n_beta`.
pub fn bound_from_n_beta(m: Digit, n_beta: usize) -> f64 {
    std::f64::consts::LN_2 / ((m + 1) as f64).ln() / n_beta as f64
}

pub fn dimension_lower_bound(params: &ExpansionParams, x: &Scalar) -> Result<DimensionBound> {
    let data = certified_doubling_interval(params)?;
    dimension_lower_bound_with(params, &data, x, DEFAULT_COUNT_DEPTH, DEFAULT_COUNT_CAP)
}

/// As [`dimension_lower_bound`] with a precomputed certificate and explicit
/// settings for the empirical prefix count.
pub fn dimension_lower_bound_with(
    params: &ExpansionParams,
    data: &DoublingData,
    x: &Scalar,
    depth: usize,
    cap: usize,
) -> Result<DimensionBound> {
    check_interior(params, x)?;
    let (j_x, _) = steps_to_interval(params, &data.interval, x)?;
    let n_beta = data.certificate.n_beta;
    let report = count_prefixes_capped(params, x, depth, cap)?;
    let ln_base = ((params.m() + 1) as f64).ln();
    let growth: Vec<f64> = report
        .counts
        .iter()
        .enumerate()
        .map(|(j, c)| if j == 0 { 0.0 } else { log_biguint(c.value()) / ln_base / j as f64 })
        .collect();
    Ok(DimensionBound {
        x: x.clone(),
        j_x,
        n_beta,
        lower_bound: bound_from_n_beta(params.m(), n_beta),
        empirical_lower: *growth.last().expect("depth 0 present"),
        empirical_exact: report.last().is_exact(),
        growth,
    })
}
