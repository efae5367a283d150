//! Words over a generating set and their inverses.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

/// A generator or its inverse. Letters order as `x0 < x0⁻¹ < x1 < x1⁻¹ < …`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(generator: usize, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub const fn pos(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub const fn neg(generator: usize) -> Self {
        Self::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Self::new(self.generator, !self.inverse)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.inverse { 'A' } else { 'a' };
        write!(f, "{c}{}", self.generator)
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
#[error("invalid letter {0:?}: expected `a<index>` or `A<index>`")]
pub struct WordParseError(pub String);

impl FromStr for Letter {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let inverse = match chars.next() {
            Some('a') => false,
            Some('A') => true,
            _ => return Err(WordParseError(s.to_string())),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(WordParseError(s.to_string()));
        }
        let generator = digits.parse().map_err(|_| WordParseError(s.to_string()))?;
        Ok(Letter { generator, inverse })
    }
}

/// A finite sequence of letters; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    /// `k`-fold concatenation; negative `k` uses the inverse word.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Self(v)
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &GroupWord) -> Self {
        c.inverse().concat(self).concat(c)
    }

    /// Largest generator index used plus one (0 for the empty word).
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Cancels adjacent `x x⁻¹` pairs until none remain.
    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Self(out)
    }

    /// Uniform random letters over `rank` generators.
    pub fn random<R: Rng + ?Sized>(rank: usize, len: usize, rng: &mut R) -> Self {
        Self(
            (0..len)
                .map(|_| Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5)))
                .collect(),
        )
    }

    /// Random freely reduced word of exactly `len` letters.
    pub fn random_reduced<R: Rng + ?Sized>(rank: usize, len: usize, rng: &mut R) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(len);
        while out.len() < len {
            let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
            if out.last().is_some_and(|t| t.cancels(l)) {
                continue;
            }
            out.push(l);
        }
        Self(out)
    }
}

impl From<Vec<Letter>> for GroupWord {
    fn from(v: Vec<Letter>) -> Self {
        Self(v)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for GroupWord {
    type Err = WordParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(Letter::from_str)
            .collect::<Result<Vec<_>, _>>()
            .map(GroupWord)
    }
}

impl Serialize for GroupWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
