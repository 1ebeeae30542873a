//! Rational coefficient type and small helpers shared by all modules.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact coefficient type used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn q_is_zero(x: &Q) -> bool {
    x.is_zero()
}

pub fn q_is_one(x: &Q) -> bool {
    x.is_one()
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// True iff `x` is a nonnegative integer.
pub fn q_is_nonneg_int(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

/// Renders `x` as `p` or `p/q`.
pub fn q_display(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

/// Serde adapter: rationals as `{ "num": "...", "den": "..." }` decimal strings,
/// lossless for arbitrary precision.
pub mod q_serde {
    use super::*;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: String,
        den: String,
    }

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let r = Repr::deserialize(d)?;
        let num: BigInt = r.num.parse().map_err(D::Error::custom)?;
        let den: BigInt = r.den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Q::new(num, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "-12", "3/2", "-21/4"] {
            let v = q_parse(s).unwrap();
            assert_eq!(q_display(&v), s);
        }
        assert_eq!(q_parse("4/8").unwrap(), q_ratio(1, 2));
        assert!(q_parse("1/0").is_none());
        assert!(q_parse("x").is_none());
    }

    #[test]
    fn nonneg_int_predicate() {
        assert!(q_is_nonneg_int(&q(0)));
        assert!(q_is_nonneg_int(&q(17)));
        assert!(!q_is_nonneg_int(&q(-1)));
        assert!(!q_is_nonneg_int(&q_ratio(1, 2)));
    }
}
