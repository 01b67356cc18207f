//! Dense univariate polynomials over the integers and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{rat, Rational};

/// Integer polynomial with coefficients stored in ascending degree order.
///
/// The coefficient vector is always trimmed, so the leading coefficient is
/// nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    /// Convenience constructor from machine integers, ascending degree.
    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree of the polynomial; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.to_rational().eval(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(
            self.coefficients
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Clears denominators of a rational polynomial, producing a primitive
    /// integer polynomial with positive leading coefficient.
    pub fn from_rational(p: &RatPoly) -> IntPolynomial {
        if p.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let lcm = p
            .coefficients()
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let mut ints: Vec<BigInt> = p
            .coefficients()
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .fold(BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, c));
        if !g.is_zero() && !g.is_one() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        IntPolynomial::new(ints)
    }

    /// Sum of absolute values of the derivative's coefficients scaled by
    /// `bound^(j-1)`: a Lipschitz constant for the polynomial on `[-bound, bound]`.
    pub fn lipschitz_bound(&self, bound: &Rational) -> Rational {
        let bound = bound.abs();
        let d = self.derivative();
        let mut acc = Rational::zero();
        let mut power = Rational::one();
        for c in d.coefficients() {
            acc += Rational::from_integer(c.abs()) * &power;
            power *= &bound;
        }
        acc
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

/// Rational polynomial, ascending degree, trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coefficients: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self { coefficients: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coefficients.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, i: usize) -> Rational {
        self.coefficients.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rat::to_f64(c))
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.len().max(other.len());
        RatPoly::new(
            (0..n)
                .map(|i| self.coefficient(i) + other.coefficient(i))
                .collect(),
        )
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let n = self.len().max(other.len());
        RatPoly::new(
            (0..n)
                .map(|i| self.coefficient(i) - other.coefficient(i))
                .collect(),
        )
    }

    pub fn neg(&self) -> RatPoly {
        RatPoly::new(self.coefficients.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rational) -> RatPoly {
        RatPoly::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.len() + other.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coefficients.clone();
        let dlen = divisor.len();
        if rem.len() < dlen {
            return (RatPoly::zero(), self.clone());
        }
        let lead = divisor.leading();
        let mut quot = vec![Rational::zero(); rem.len() - dlen + 1];
        for shift in (0..quot.len()).rev() {
            let c = &rem[shift + dlen - 1] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coefficients.iter().enumerate() {
                    rem[shift + j] -= &c * d;
                }
            }
            quot[shift] = c;
        }
        rem.truncate(dlen - 1);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        if self.len() < divisor.len() {
            return self.clone();
        }
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self.leading();
        self.scale(&(Rational::one() / lead))
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s)` with `s * self ≡ g (mod modulus)`,
    /// `g` monic.
    pub fn gcd_with_cofactor(&self, modulus: &RatPoly) -> (RatPoly, RatPoly) {
        let mut r0 = modulus.clone();
        let mut r1 = self.rem(modulus);
        let mut s0 = RatPoly::zero();
        let mut s1 = RatPoly::constant(Rational::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.is_zero() {
            return (r0, s0);
        }
        let inv_lead = Rational::one() / r0.leading();
        (r0.scale(&inv_lead), s0.scale(&inv_lead))
    }

    /// Polynomial `p(x + shift)`.
    pub fn taylor_shift(&self, shift: &Rational) -> RatPoly {
        // Horner in the shifted variable: p(x+s) = (...(a_n (x+s) + a_{n-1})(x+s) ...)
        let xs = RatPoly::new(vec![shift.clone(), Rational::one()]);
        self.coefficients
            .iter()
            .rev()
            .fold(RatPoly::zero(), |acc, c| acc.mul(&xs).add(&RatPoly::constant(c.clone())))
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<RatPoly> {
        let mut seq = vec![self.clone()];
        let d = self.derivative();
        if d.is_zero() {
            return seq;
        }
        seq.push(d);
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.sturm_sequence();
        let variations = |x: &Rational| -> usize {
            let mut count = 0;
            let mut last = 0i8;
            for p in &seq {
                let v = p.eval(x);
                let s = sign_of(&v);
                if s != 0 {
                    if last != 0 && s != last {
                        count += 1;
                    }
                    last = s;
                }
            }
            count
        };
        variations(lo).saturating_sub(variations(hi))
    }
}

pub(crate) fn sign_of(v: &Rational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}
