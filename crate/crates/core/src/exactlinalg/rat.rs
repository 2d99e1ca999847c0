//! Rational scalars and their textual form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses "p", "p/q", or a finite decimal such as "-0.25".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    if let Some((int_part, frac_part)) = t.split_once('.') {
        if frac_part.contains('/') {
            return Err(Error::Parse(format!("bad rational '{s}'")));
        }
        let neg = int_part.starts_with('-');
        let digits = format!("{}{}", int_part.trim_start_matches(['-', '+']), frac_part);
        let num: BigInt = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational '{s}'")))?;
        let den = num_traits::pow(BigInt::from(10), frac_part.len());
        let r = Rat::new(num, den);
        return Ok(if neg { -r } else { r });
    }
    t.parse::<Rat>()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))
}

/// "p/q", or "p" when q = 1.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back on scaling for ratios of huge integers.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()) as i64 - 1000;
    if shift <= 0 {
        return f64::NAN;
    }
    let ns = (n >> shift as usize).to_f64().unwrap_or(f64::NAN);
    let ds = (d >> shift as usize).to_f64().unwrap_or(f64::NAN);
    ns / ds
}

/// Exact rational value of a finite float.
pub fn from_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::InvalidParameter(format!("non-finite float {x}")))
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Integer power with a possibly negative exponent.
pub fn pow(r: &Rat, e: i32) -> Rat {
    num_traits::Pow::pow(r, e)
}

/// Height used for sampling bounds: max(|p|, q).
pub fn height(r: &Rat) -> BigInt {
    let p = r.numer().abs();
    let q = r.denom().clone();
    if p > q {
        p
    } else {
        q
    }
}

pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => parse_rat(&s).map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) => {
                parse_rat(&n.to_string()).map_err(serde::de::Error::custom)
            }
            other => Err(serde::de::Error::custom(format!(
                "expected rational string, got {other}"
            ))),
        }
    }
}

pub fn rat_json(r: &Rat) -> serde_json::Value {
    serde_json::Value::String(rat_to_string(r))
}

pub fn rat_from_json(v: &serde_json::Value) -> Result<Rat> {
    match v {
        serde_json::Value::String(s) => parse_rat(s),
        serde_json::Value::Number(n) => parse_rat(&n.to_string()),
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for s in ["0", "-3", "7/2", "-1/3"] {
            assert_eq!(rat_to_string(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("4/8").unwrap(), frac(1, 2));
        assert_eq!(parse_rat("-0.25").unwrap(), frac(-1, 4));
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn float_conversion_handles_huge_ratios() {
        let big = pow(&rat(10), 400);
        let r = (&big * rat(3)) / (&big * rat(4));
        assert!((to_f64(&r) - 0.75).abs() < 1e-15);
        let r = Rat::new(BigInt::from(3) * pow(&rat(10), 400).to_integer(), pow(&rat(10), 401).to_integer());
        assert!((to_f64(&r) - 0.3).abs() < 1e-12);
    }
}
