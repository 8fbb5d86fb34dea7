//! Exact rationals and their `"num/den"` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(v: impl Into<BigInt>) -> Q {
    Q::from_integer(v.into())
}

/// Always `num/den`, also for integers (`2/1`).
pub fn fmt_q(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?}")]
pub struct BadRational(pub String);

/// Accepts `a/b`, `a` and plain decimals such as `0.25`.
pub fn parse_q(text: &str) -> Result<Q, BadRational> {
    let bad = || BadRational(text.to_string());
    let t = text.trim();
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(a, b));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) || frac.len() > 30 {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let scale = BigInt::from(10u8).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = int.abs() * &scale + frac;
        return Ok(Q::new(if neg { -mag } else { mag }, scale));
    }
    t.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad())
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer `>= v`.
pub fn ceil_usize(v: &Q) -> usize {
    v.ceil().to_integer().to_usize().expect("ceiling out of range")
}

/// Largest integer `<= v`, clamped at zero.
pub fn floor_usize(v: &Q) -> usize {
    let f = v.floor().to_integer();
    if f.is_negative() {
        0
    } else {
        f.to_usize().expect("floor out of range")
    }
}

pub fn ratio(a: usize, b: usize) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

pub fn one() -> Q {
    Q::one()
}

/// Serde adapter storing a rational as a `"num/den"` string.
pub mod serde_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let text = String::deserialize(d)?;
        parse_q(&text).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_q`] for optional values.
pub mod serde_opt_q {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&fmt_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Q>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_q(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}
