//! Number formatting shared by the file writers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a hexadecimal float image: {0:?}")]
pub struct HexFloatError(pub String);

/// Exact bit image of `x`, as `0x` followed by 16 hex digits.
pub fn f64_to_hex(x: f64) -> String {
    format!("0x{:016x}", x.to_bits())
}

pub fn hex_to_f64(s: &str) -> Result<f64, HexFloatError> {
    let digits = s
        .strip_prefix("0x")
        .filter(|d| d.len() == 16)
        .ok_or_else(|| HexFloatError(s.to_string()))?;
    u64::from_str_radix(digits, 16)
        .map(f64::from_bits)
        .map_err(|_| HexFloatError(s.to_string()))
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn sci17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serde adapter for `f64` fields that may be infinite or NaN, which JSON
/// numbers cannot carry. Non-finite values are written as the strings
/// `"inf"`, `"-inf"` and `"nan"`.
pub mod nonfinite {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Number(f64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if *x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                _ => Err(serde::de::Error::custom(format!("expected a number, got {t:?}"))),
            },
        }
    }
}
