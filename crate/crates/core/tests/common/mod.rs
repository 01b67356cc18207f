#![allow(dead_code)]

use beta_forge::geometry::ExpansionParams;
use beta_forge::numeric::rat::{int, r};
use beta_forge::{IntPolynomial, NumberField, Rational, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn golden_field() -> NumberField {
    NumberField::new(IntPolynomial::from_i64(&[-1, -1, 1]), int(1), int(2)).unwrap()
}

/// Root of `x^3 - 2x^2 + x - 1` near 1.7549.
pub fn cubic_field() -> NumberField {
    NumberField::new(IntPolynomial::from_i64(&[-1, 1, -2, 1]), int(1), int(2)).unwrap()
}

pub fn rational_params(m: u32, beta: Rational) -> ExpansionParams {
    ExpansionParams::rational(m, beta).unwrap()
}

/// A point `t * m/(beta-1)` with `t` drawn from `(0, 1)` on a grid of 10^4.
pub fn random_point(params: &ExpansionParams, rng: &mut ChaCha8Rng) -> Scalar {
    let t = rng.gen_range(1..10_000);
    params.right_end().scale(&r(t, 10_000))
}
