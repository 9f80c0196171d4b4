//! JSON helpers: big integers as plain JSON numbers and rationals as `[num, den]`.

use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Serde adapter writing a `BigInt` as an exact JSON integer.
pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let num = serde_json::Number::from_str(&n.to_string()).map_err(serde::ser::Error::custom)?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let num = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&num.to_string()).map_err(|_| D::Error::custom(format!("not an integer: {num}")))
    }
}

/// A rational on the wire: either an integer or a `[num, den]` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireRational(pub BigRational);

impl Serialize for WireRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Pair(#[serde(with = "bigint")] BigInt, #[serde(with = "bigint")] BigInt);
        Pair(self.0.numer().clone(), self.0.denom().clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for WireRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        let parse = |v: &serde_json::Value| -> Result<BigInt, D::Error> {
            match v {
                serde_json::Value::Number(n) => {
                    BigInt::from_str(&n.to_string()).map_err(|_| D::Error::custom(format!("not an integer: {n}")))
                }
                other => Err(D::Error::custom(format!("expected integer, got {other}"))),
            }
        };
        match &value {
            serde_json::Value::Number(_) => Ok(WireRational(BigRational::from_integer(parse(&value)?))),
            serde_json::Value::Array(items) if items.len() == 2 => {
                let num = parse(&items[0])?;
                let den = parse(&items[1])?;
                if den.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(WireRational(BigRational::new(num, den)))
            }
            other => Err(D::Error::custom(format!("expected integer or [num, den], got {other}"))),
        }
    }
}

impl From<BigRational> for WireRational {
    fn from(q: BigRational) -> Self {
        WireRational(q)
    }
}

/// An exact JSON number for a big integer.
pub fn big_value(n: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(serde_json::Number::from_str(&n.to_string()).expect("integer literal"))
}

pub fn is_integer(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Canonical JSON text: object keys sorted, no insignificant whitespace.
pub fn canonical_string<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string(&v).expect("serializable")
}

pub fn canonical_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&v).expect("serializable")
}

/// Hex SHA-256 of the canonical JSON text.
pub fn input_hash<T: Serialize>(value: &T) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(canonical_string(value).as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_round_trip() {
        let q: WireRational = serde_json::from_str("[6, -4]").unwrap();
        assert_eq!(q.0, rat(-3, 2));
        assert_eq!(serde_json::to_string(&q).unwrap(), "[-3,2]");
        let n: WireRational = serde_json::from_str("7").unwrap();
        assert_eq!(n.0, int(7));
        assert!(serde_json::from_str::<WireRational>("[1, 0]").is_err());
        assert!(serde_json::from_str::<WireRational>("1.5").is_err());
    }

    #[test]
    fn big_integers_stay_exact() {
        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "bigint")] BigInt);
        let big = BigInt::from_str("-123456789012345678901234567890").unwrap();
        let text = serde_json::to_string(&W(big.clone())).unwrap();
        assert_eq!(text, "-123456789012345678901234567890");
        assert_eq!(serde_json::from_str::<W>(&text).unwrap().0, big);
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let v = serde_json::json!({"b": 1, "a": [2, {"d": 3, "c": 4}]});
        assert_eq!(canonical_string(&v), r#"{"a":[2,{"c":4,"d":3}],"b":1}"#);
    }
}
