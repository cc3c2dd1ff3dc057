//! JSON encodings shared by reports and certificates.
//!
//! Integers are emitted as JSON numbers when they fit in an `i64` and as
//! decimal strings otherwise; rationals are always strings such as
//! `"240941/91000"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::{IntMatrix, IntPoly, RationalInterval};

pub const SCHEMA: &str = "dyndeg/1";

pub fn bigint_to_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => Value::from(small),
        None => Value::String(v.to_string()),
    }
}

pub fn bigint_from_value(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("expected an integer, found {n}")))
            }
        }
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("expected an integer, found {s:?}"))),
        other => Err(Error::Parse(format!("expected an integer, found {other}"))),
    }
}

pub fn rational_to_value(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

pub fn rational_from_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(_) => Ok(BigRational::from_integer(bigint_from_value(v)?)),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

/// Parses `"a"`, `"a/b"` or a terminating decimal such as `"1e-6"` or
/// `"0.001"` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::Parse(format!("cannot parse rational {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let digits = if digits == "-" || digits == "+" || digits.is_empty() {
        return Err(bad());
    } else {
        digits
    };
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, shift as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-shift) as usize))
    })
}

pub fn interval_to_value(iv: &RationalInterval) -> Value {
    json!({ "lo": rational_to_value(iv.lo()), "hi": rational_to_value(iv.hi()) })
}

pub fn interval_from_value(v: &Value) -> Result<RationalInterval> {
    let field = |k: &str| {
        v.get(k)
            .ok_or_else(|| Error::Parse(format!("interval is missing {k:?}")))
            .and_then(rational_from_value)
    };
    RationalInterval::new(field("lo")?, field("hi")?)
}

pub fn poly_to_value(p: &IntPoly) -> Value {
    Value::Array(p.coeffs().iter().map(bigint_to_value).collect())
}

pub fn poly_from_value(v: &Value) -> Result<IntPoly> {
    match v {
        Value::Array(items) => Ok(IntPoly::new(
            items.iter().map(bigint_from_value).collect::<Result<_>>()?,
        )),
        Value::String(s) => s.parse(),
        other => Err(Error::Parse(format!(
            "expected a polynomial, found {other}"
        ))),
    }
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.dim())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

pub fn matrix_from_value(v: &Value) -> Result<IntMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| Error::Parse("expected a row array".into()))?
                .iter()
                .map(bigint_from_value)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

/// Wraps a report object with the schema tag and its kind.
pub fn envelope(kind: &str, body: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), Value::from(SCHEMA));
    out.insert("type".into(), Value::from(kind));
    if let Value::Object(fields) = body {
        out.extend(fields);
    } else {
        out.insert("value".into(), body);
    }
    Value::Object(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bigints_round_trip() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        for v in [BigInt::from(-7), big] {
            assert_eq!(bigint_from_value(&bigint_to_value(&v)).unwrap(), v);
        }
        assert_eq!(bigint_to_value(&BigInt::from(5)), json!(5));
    }

    #[test]
    fn rationals_from_text() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(parse_rational("1e-6").unwrap(), q(1, 1_000_000));
        assert_eq!(parse_rational("0.001").unwrap(), q(1, 1000));
        assert_eq!(parse_rational("-3/6").unwrap(), q(-1, 2));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn envelope_tags_schema() {
        let v = envelope("classify", json!({"kind": "Salem"}));
        assert_eq!(v["schema"], "dyndeg/1");
        assert_eq!(v["kind"], "Salem");
    }
}
