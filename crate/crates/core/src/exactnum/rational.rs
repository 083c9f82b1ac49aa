use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for small literals, mostly in tests. Panics on a zero denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"n"`, `"p/q"` or a finite decimal such as `"-0.125"` into an exact
/// rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty rational"));
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_int(p)?;
        let q = parse_int(q)?;
        if q.is_zero() {
            return Err(Error::invalid(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::invalid(format!("malformed decimal {s:?}")));
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_abs = whole.trim_start_matches(['-', '+']);
        let whole_abs = if whole_abs.is_empty() { "0" } else { whole_abs };
        let w = parse_int(whole_abs)?;
        let f = parse_int(frac)?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let mut value = Rational::new(w * &scale + f, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    Ok(Rational::from_integer(parse_int(s)?))
}

fn parse_int(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse::<BigInt>()
        .map_err(|_| Error::invalid(format!("not an integer: {s:?}")))
}

/// `"n"` for integers, `"p/q"` otherwise; the denominator is always positive.
pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Canonical order on rationals: by `max(|p|, q)`, then `|p|`, then `q`, with
/// the positive sign before the negative one. Zero sorts first.
///
/// Within a fixed height this is the enumeration order of
/// [`enumerate_bounded_height`](super::enumerate_bounded_height).
pub fn canonical_cmp(a: &Rational, b: &Rational) -> Ordering {
    let key = |x: &Rational| {
        let p = x.numer().abs();
        let q = x.denom().clone();
        let m = if p > q { p.clone() } else { q.clone() };
        (m, p, q, x.is_negative())
    };
    key(a).cmp(&key(b))
}

/// Natural logarithm of a positive big integer, accurate to double precision.
pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        if let Some(f) = n.to_f64() {
            if f.is_finite() {
                return f.ln();
            }
        }
    }
    let shift = bits.saturating_sub(64);
    let top = (n >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn abs_biguint(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

/// `max(|p|, q)` for a reduced fraction `p/q`.
pub(crate) fn height_integer(x: &Rational) -> BigUint {
    let p = abs_biguint(x.numer());
    let q = abs_biguint(x.denom());
    p.max(q)
}

pub(crate) fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Serde helpers writing rationals as `"p/q"` strings.
pub mod serde_q {
    use super::{format_rational, parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }

    pub mod vec {
        use super::super::{format_rational, parse_rational, Rational};
        use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&format_rational(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let items = Vec::<String>::deserialize(d)?;
            items
                .iter()
                .map(|t| parse_rational(t).map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use super::super::{format_rational, Rational};
        use serde::Serializer;

        pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&format_rational(v)),
                None => s.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("12/5").unwrap(), rat(12, 5));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7, 1));
        assert_eq!(parse_rational("+3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("0.1").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("-2.50").unwrap(), rat(-5, 2));
        assert_eq!(parse_rational("-.5").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&rat(8, 2)), "4");
    }

    #[test]
    fn canonical_order_small_heights() {
        let mut xs = [rat(-2, 1), rat(1, 2), rat(1, 1), rat(2, 1), rat(-1, 1), rat(0, 1), rat(-1, 2)];
        xs.sort_by(canonical_cmp);
        let shown: Vec<_> = xs.iter().map(format_rational).collect();
        assert_eq!(shown, ["0", "1", "-1", "1/2", "-1/2", "2", "-2"]);
    }

    #[test]
    fn ln_of_huge_integer() {
        let n = BigUint::from(3u32).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_biguint(&n) - expected).abs() < 1e-9 * expected);
        assert_eq!(ln_biguint(&BigUint::one()), 0.0);
    }
}
