//! Exact rational scalars and their canonical `"p/q"` string form.
//!
//! Every rational crossing a serialization boundary is written as a decimal
//! digit string, `"p/q"` or plain `"p"`, with the fraction reduced and the
//! denominator positive. JSON numbers are never used for rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Build a rational from an integer pair. Panics on a zero denominator; meant
/// for literals in code and tests, not for untrusted input.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Build a rational from an integer.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// Canonical string form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_ratio(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parse `"p"` or `"p/q"`. The sign may sit on either component; the result
/// is reduced with a positive denominator.
pub fn parse_ratio(text: &str) -> Result<BigRational, String> {
    let mut parts = text.splitn(3, '/');
    let numer_text = parts.next().unwrap_or("");
    let numer: BigInt = numer_text
        .parse()
        .map_err(|_| format!("invalid rational {text:?}: bad numerator"))?;
    let denom: BigInt = match parts.next() {
        None => BigInt::one(),
        Some(denom_text) => denom_text
            .parse()
            .map_err(|_| format!("invalid rational {text:?}: bad denominator"))?,
    };
    if parts.next().is_some() {
        return Err(format!("invalid rational {text:?}: too many '/'"));
    }
    if denom.is_zero() {
        return Err(format!("invalid rational {text:?}: zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

/// Serde adapter serializing a rational as its canonical string.
pub mod serde_str {
    use super::{format_ratio, parse_ratio};
    use num_rational::BigRational;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_ratio(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(de)?;
        parse_ratio(&text).map_err(de::Error::custom)
    }
}
