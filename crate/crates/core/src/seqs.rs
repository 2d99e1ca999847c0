//! Real sequences given as finite sums Σ c·n^k with rational c and integer k.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::exactlinalg::{parse_rat, pow, rat_to_string, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MonomialSum {
    terms: Vec<(Rat, i32)>,
}

impl MonomialSum {
    pub fn new(terms: Vec<(Rat, i32)>) -> Self {
        let mut t: Vec<(Rat, i32)> = Vec::new();
        for (c, k) in terms {
            if let Some(slot) = t.iter_mut().find(|(_, e)| *e == k) {
                slot.0 += c;
            } else {
                t.push((c, k));
            }
        }
        t.retain(|(c, _)| !c.is_zero());
        t.sort_by(|a, b| b.1.cmp(&a.1));
        MonomialSum { terms: t }
    }

    pub fn zero() -> Self {
        MonomialSum { terms: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![(c, 0)])
    }

    pub fn monomial(c: Rat, k: i32) -> Self {
        Self::new(vec![(c, k)])
    }

    pub fn plus(&self, other: &MonomialSum) -> Self {
        let mut t = self.terms.clone();
        t.extend(other.terms.iter().cloned());
        Self::new(t)
    }

    pub fn times(&self, other: &MonomialSum) -> Self {
        let mut t = Vec::new();
        for (a, i) in &self.terms {
            for (b, j) in &other.terms {
                t.push((a * b, i + j));
            }
        }
        Self::new(t)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.terms.iter().map(|(a, k)| (a * c, *k)).collect())
    }

    pub fn terms(&self) -> &[(Rat, i32)] {
        &self.terms
    }

    pub fn eval(&self, n: u64) -> Rat {
        let nq = Rat::from_integer(BigInt::from(n));
        self.terms.iter().map(|(c, k)| c * pow(&nq, *k)).sum()
    }

    /// Highest-order term, if any.
    pub fn leading(&self) -> Option<&(Rat, i32)> {
        self.terms.first()
    }

    pub fn degree(&self) -> Option<i32> {
        self.leading().map(|t| t.1)
    }

    /// lim_{n→∞}, when finite.
    pub fn limit(&self) -> Option<Rat> {
        match self.degree() {
            None => Some(Rat::zero()),
            Some(d) if d > 0 => None,
            _ => Some(self.terms.iter().filter(|(_, k)| *k == 0).map(|(c, _)| c.clone()).sum()),
        }
    }

    pub fn diverges(&self) -> bool {
        self.degree().is_some_and(|d| d > 0)
    }

    /// Parses "c@k" terms separated by '+' or ','; a bare "c" is c·n⁰ and
    /// "n" is 1@1, e.g. "n", "2@3,-1@0", "1/2@-3".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for part in s.split([',', ' ']).filter(|p| !p.is_empty()) {
            let (c, k) = match part.split_once('@') {
                Some((c, k)) => (
                    parse_rat(c)?,
                    k.parse::<i32>().map_err(|_| Error::Parse(format!("bad exponent in '{part}'")))?,
                ),
                None if part == "n" => (crate::exactlinalg::one(), 1),
                None => (parse_rat(part)?, 0),
            };
            terms.push((c, k));
        }
        Ok(Self::new(terms))
    }

    pub fn to_json(&self) -> Value {
        json!(self.to_string())
    }
}

impl fmt::Display for MonomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(c, k)| format!("{}@{}", rat_to_string(c), k)).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MonomialSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
