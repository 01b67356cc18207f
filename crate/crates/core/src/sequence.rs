//! Finite and eventually periodic digit words.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Digit = u32;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("digit {digit} exceeds alphabet maximum {max}")]
    DigitOutOfRange { digit: Digit, max: Digit },
}

/// `preperiod · period^∞`, or just `preperiod` when the period is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitSequence {
    preperiod: Vec<Digit>,
    period: Vec<Digit>,
    alphabet_max: Digit,
}

impl DigitSequence {
    pub fn finite(digits: Vec<Digit>, alphabet_max: Digit) -> Result<Self, SequenceError> {
        Self::periodic(digits, Vec::new(), alphabet_max)
    }

    pub fn periodic(
        preperiod: Vec<Digit>,
        period: Vec<Digit>,
        alphabet_max: Digit,
    ) -> Result<Self, SequenceError> {
        if let Some(&digit) = preperiod.iter().chain(&period).find(|&&d| d > alphabet_max) {
            return Err(SequenceError::DigitOutOfRange { digit, max: alphabet_max });
        }
        Ok(Self { preperiod, period, alphabet_max })
    }

    pub fn preperiod(&self) -> &[Digit] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Digit] {
        &self.period
    }

    pub fn alphabet_max(&self) -> Digit {
        self.alphabet_max
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of stored digits for a finite word; `preperiod + period` otherwise.
    pub fn len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Digit at 0-based position `i`; the conventional 1-based index is `i + 1`.
    pub fn digit(&self, i: usize) -> Option<Digit> {
        if i < self.preperiod.len() {
            Some(self.preperiod[i])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - self.preperiod.len()) % self.period.len()])
        }
    }

    /// First `n` digits (fewer if the word is finite and shorter).
    pub fn prefix(&self, n: usize) -> Vec<Digit> {
        (0..n).map_while(|i| self.digit(i)).collect()
    }

    /// Digit-wise reflection `m - d`.
    pub fn reflection(&self) -> DigitSequence {
        let flip = |v: &[Digit]| v.iter().map(|d| self.alphabet_max - d).collect();
        DigitSequence {
            preperiod: flip(&self.preperiod),
            period: flip(&self.period),
            alphabet_max: self.alphabet_max,
        }
    }

    /// Shift by `s` positions.
    pub fn shift(&self, s: usize) -> DigitSequence {
        if s <= self.preperiod.len() {
            return DigitSequence {
                preperiod: self.preperiod[s..].to_vec(),
                period: self.period.clone(),
                alphabet_max: self.alphabet_max,
            };
        }
        if self.period.is_empty() {
            return DigitSequence { preperiod: Vec::new(), period: Vec::new(), alphabet_max: self.alphabet_max };
        }
        let r = (s - self.preperiod.len()) % self.period.len();
        let mut period = self.period[r..].to_vec();
        period.extend_from_slice(&self.period[..r]);
        DigitSequence { preperiod: Vec::new(), period, alphabet_max: self.alphabet_max }
    }

    /// Canonical representation: primitive period, preperiod absorbed into
    /// the period as far as possible. Two infinite words are equal iff their
    /// canonical forms are.
    pub fn canonical(&self) -> DigitSequence {
        if self.period.is_empty() {
            return self.clone();
        }
        let mut period = self.period.clone();
        let n = period.len();
        for p in 1..=n {
            if n.is_multiple_of(p) && (0..n).all(|i| period[i] == period[i % p]) {
                period.truncate(p);
                break;
            }
        }
        let mut preperiod = self.preperiod.clone();
        while let Some(&last) = preperiod.last() {
            if last != *period.last().unwrap_or(&last) || period.is_empty() {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        DigitSequence { preperiod, period, alphabet_max: self.alphabet_max }
    }

    /// Lexicographic comparison of the first `n` digits.
    pub fn cmp_prefix(&self, other: &DigitSequence, n: usize) -> Ordering {
        for i in 0..n {
            match (self.digit(i), other.digit(i)) {
                (Some(a), Some(b)) if a != b => return a.cmp(&b),
                (Some(_), Some(_)) => {}
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for DigitSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet_max >= 10 { "," } else { "" };
        let join = |v: &[Digit]| v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(sep);
        write!(f, "{}", join(&self.preperiod))?;
        if !self.period.is_empty() {
            write!(f, "({})^inf", join(&self.period))?;
        }
        Ok(())
    }
}
