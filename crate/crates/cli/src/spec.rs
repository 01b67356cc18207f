//! Parsing of base and point arguments.

use beta_forge::constants::{beta_c, beta_f, golden_ratio};
use beta_forge::expansions::{distinguished_point, DistinguishedPoint};
use beta_forge::geometry::{Beta, ExpansionParams};
use beta_forge::numeric::rat;
use beta_forge::{Digit, Rational, Scalar};

use crate::error::{domain, CliError};

/// How the base was given on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaSpec {
    Rational(Rational),
    /// `golden`: the generalized golden ratio of the command's `m`.
    Golden,
    G(Digit),
    BetaF(Digit),
    BetaC(Digit),
}

impl BetaSpec {
    pub fn parse(s: &str) -> Result<BetaSpec, CliError> {
        let t = s.trim();
        if t == "golden" {
            return Ok(BetaSpec::Golden);
        }
        for (name, make) in [
            ("G", BetaSpec::G as fn(Digit) -> BetaSpec),
            ("beta_f", BetaSpec::BetaF),
            ("beta_c", BetaSpec::BetaC),
        ] {
            if let Some(arg) = t.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')')) {
                let m: Digit = arg
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad alphabet size in '{s}'")))?;
                if m == 0 {
                    return Err(CliError::Usage(format!("alphabet size must be positive in '{s}'")));
                }
                return Ok(make(m));
            }
        }
        rat::parse(t)
            .map(BetaSpec::Rational)
            .ok_or_else(|| CliError::Usage(format!("cannot parse base '{s}'")))
    }

    /// Builds the parameters; `tol` sets the enclosure width for `beta_c`.
    pub fn params(&self, m: Digit, tol: &Rational) -> Result<ExpansionParams, CliError> {
        let beta = match self {
            BetaSpec::Rational(q) => Beta::rational(q.clone()),
            BetaSpec::Golden => Beta::algebraic(&golden_ratio(m).map_err(domain)?).map_err(domain)?,
            BetaSpec::G(j) => Beta::algebraic(&golden_ratio(*j).map_err(domain)?).map_err(domain)?,
            BetaSpec::BetaF(j) => Beta::algebraic(&beta_f(*j).map_err(domain)?).map_err(domain)?,
            BetaSpec::BetaC(j) => Beta::Certified(beta_c(*j, tol).map_err(domain)?),
        };
        ExpansionParams::new(m, beta).map_err(domain)
    }
}

/// How the point was given.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointSpec {
    Rational(Rational),
    Distinguished(DistinguishedPoint),
}

impl PointSpec {
    pub fn parse(s: &str) -> Result<PointSpec, CliError> {
        match s.trim() {
            "center" => Ok(PointSpec::Distinguished(DistinguishedPoint::Center)),
            "cycle2a" => Ok(PointSpec::Distinguished(DistinguishedPoint::Cycle2a)),
            "cycle2b" => Ok(PointSpec::Distinguished(DistinguishedPoint::Cycle2b)),
            t => rat::parse(t)
                .map(PointSpec::Rational)
                .ok_or_else(|| CliError::Usage(format!("cannot parse point '{s}'"))),
        }
    }

    pub fn resolve(&self, params: &ExpansionParams) -> Scalar {
        match self {
            PointSpec::Rational(q) => params.point(q.clone()),
            PointSpec::Distinguished(which) => distinguished_point(params, *which),
        }
    }
}

/// `a..b`, `a..=b` (both inclusive) or a single value.
pub fn parse_m_range(s: &str) -> Result<(Digit, Digit), CliError> {
    let bad = || CliError::Usage(format!("cannot parse alphabet range '{s}'"));
    let num = |t: &str| t.trim().parse::<Digit>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo == 0 || hi > 10_000 || lo > hi {
        return Err(CliError::Usage(format!("alphabet range '{s}' must lie within 1..10000")));
    }
    Ok((lo, hi))
}

pub fn parse_tol(s: &str) -> Result<Rational, CliError> {
    match rat::parse(s) {
        Some(q) if rat::is_positive(&q) && q < rat::int(1) => Ok(q),
        _ => Err(CliError::Usage(format!("tolerance '{s}' must be a number in (0, 1)"))),
    }
}
