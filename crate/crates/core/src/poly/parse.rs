//! Polynomial text format.
//!
//! Two spellings are accepted: human syntax (`x^10 + x^9 - x^7 + 1`, with
//! optional `*` between coefficient and variable, `X` or `x`) and a
//! constant-first coefficient list (`1,1,0,-1`). The canonical output is the
//! human syntax produced by `Display`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::Poly;
use crate::error::Error;

impl FromStr for Poly<BigInt> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let text = s.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if text.contains(['x', 'X']) {
            parse_human(text)
        } else if text.contains(',') {
            parse_list(text)
        } else {
            // A bare integer is a constant polynomial in either syntax.
            parse_human(text)
        }
    }
}

fn parse_list(text: &str) -> Result<Poly<BigInt>, Error> {
    let body = text.trim_start_matches('[').trim_end_matches(']');
    let coeffs = body
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad coefficient {t:?}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

fn parse_human(text: &str) -> Result<Poly<BigInt>, Error> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'+' => (false, &rest[1..]),
            b'-' => (true, &rest[1..]),
            _ => (false, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        if end == 0 {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        let (coeff, exp) = parse_term(&body[..end])?;
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        if neg {
            coeffs[exp] -= coeff;
        } else {
            coeffs[exp] += coeff;
        }
        rest = &body[end..];
    }
    Ok(Poly::new(coeffs))
}

fn parse_term(term: &str) -> Result<(BigInt, usize), Error> {
    let bad = || Error::Parse(format!("cannot parse term {term:?}"));
    match term.find(['x', 'X']) {
        None => Ok((term.parse().map_err(|_| bad())?, 0)),
        Some(pos) => {
            let head = term[..pos].trim_end_matches('*');
            let coeff = if head.is_empty() {
                BigInt::from(1)
            } else {
                head.parse().map_err(|_| bad())?
            };
            let tail = &term[pos + 1..];
            let exp = if tail.is_empty() {
                1
            } else {
                let digits = tail
                    .strip_prefix('^')
                    .or_else(|| tail.strip_prefix("**"))
                    .ok_or_else(bad)?;
                digits.parse().map_err(|_| bad())?
            };
            Ok((coeff, exp))
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::IntPoly;

    #[test]
    fn parses_human_syntax() {
        let p: IntPoly = "x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1"
            .parse()
            .unwrap();
        assert_eq!(
            p,
            IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
        );
        let q: IntPoly = "-3*x^2 + 2x - 7".parse().unwrap();
        assert_eq!(q, IntPoly::from_i64s(&[-7, 2, -3]));
        let r: IntPoly = "X**3 - X - 1".parse().unwrap();
        assert_eq!(r, IntPoly::from_i64s(&[-1, -1, 0, 1]));
    }

    #[test]
    fn parses_coefficient_lists() {
        let p: IntPoly = "1,-3,1".parse().unwrap();
        assert_eq!(p, IntPoly::from_i64s(&[1, -3, 1]));
        let q: IntPoly = "[-1, -1, 0, 1,]".parse().unwrap();
        assert_eq!(q.to_string(), "x^3 - x - 1");
    }

    #[test]
    fn canonical_round_trip() {
        for text in ["x^3 - x - 1", "x^4 - x^2 + 1", "-2*x + 5", "7", "x"] {
            let p: IntPoly = text.parse().unwrap();
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!("x^".parse::<IntPoly>().is_err());
        assert!("".parse::<IntPoly>().is_err());
        assert!("x +- 1".parse::<IntPoly>().is_err());
        assert!("1,a,2".parse::<IntPoly>().is_err());
        assert!("2y".parse::<IntPoly>().is_err());
    }
}
