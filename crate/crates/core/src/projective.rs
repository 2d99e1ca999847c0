//! Rational points of projective spaces in canonical integer form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::exactlinalg::{rat_from_json, Rat};
use crate::error::{Error, Result};

/// [x₀ : … : x_k] as a primitive integer tuple whose first nonzero entry is positive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    coords: Vec<BigInt>,
}

impl ProjPoint {
    pub fn new(xs: &[Rat]) -> Result<Self> {
        if xs.iter().all(Zero::is_zero) {
            return Err(Error::InvalidParameter("projective point with all coordinates zero".into()));
        }
        let l = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> =
            xs.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        for x in ints.iter_mut() {
            *x = &*x / &g;
            if neg {
                *x = -&*x;
            }
        }
        Ok(ProjPoint { coords: ints })
    }

    pub fn from_i64(xs: &[i64]) -> Result<Self> {
        let r: Vec<Rat> = xs.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect();
        Self::new(&r)
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn rats(&self) -> Vec<Rat> {
        self.coords.iter().map(|c| Rat::from_integer(c.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!(self.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("projective point must be an array".into()))?;
        let xs: Result<Vec<Rat>> = arr.iter().map(rat_from_json).collect();
        Self::new(&xs?)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(":"))
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::frac;

    #[test]
    fn canonical_form() {
        let p = ProjPoint::new(&[frac(-1, 2), frac(3, 4)]).unwrap();
        assert_eq!(p.to_string(), "[2:-3]");
        assert_eq!(p, ProjPoint::from_i64(&[-4, 6]).unwrap());
        assert_eq!(ProjPoint::from_i64(&[0, -7]).unwrap().to_string(), "[0:1]");
        assert!(ProjPoint::from_i64(&[0, 0]).is_err());
    }
}
