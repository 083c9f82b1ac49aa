use std::fmt;

use num_bigint::BigUint;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::rational::{height_integer, ln_biguint, parse_rational, Rational};
use crate::error::{Error, Result};

/// Absolute logarithmic Weil height, natural-log scale.
///
/// `log_of` holds `N` when the value is exactly `log N` for an explicitly
/// held integer; every height of a rational is of that form.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightValue {
    pub value: f64,
    pub log_of: Option<BigUint>,
}

impl HeightValue {
    pub fn zero() -> Self {
        HeightValue { value: 0.0, log_of: Some(BigUint::one()) }
    }

    pub fn log_of(n: BigUint) -> Self {
        HeightValue { value: ln_biguint(&n), log_of: Some(n) }
    }

    /// Height of a rational; zero maps to zero by convention.
    pub fn of_rational(x: &Rational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        Self::log_of(height_integer(x))
    }

    pub fn is_exact(&self) -> bool {
        self.log_of.is_some()
    }
}

impl Serialize for HeightValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.value)
    }
}

/// `h(p/q) = log max(|p|, |q|)` for `p/q` in lowest terms.
pub fn height(x: &Rational) -> Result<HeightValue> {
    if x.is_zero() {
        return Err(Error::invalid("height of zero is undefined"));
    }
    Ok(HeightValue::of_rational(x))
}

/// `log* x = max(1, log x)`.
pub fn log_star(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::invalid(format!("log* needs a positive finite argument, got {x}")));
    }
    Ok(x.ln().max(1.0))
}

/// An upper bound `log(scale) + extra` on heights.
///
/// Heights of rationals are logs of integers, so `h(x) ≤ bound` is decided
/// exactly by comparing `max(|p|, |q|)` with the integer cap
/// `floor(scale · e^extra)`. Bounds written as `log(N)` carry no real part
/// and their caps are exact.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightBound {
    scale: BigUint,
    extra: f64,
}

impl HeightBound {
    pub fn zero() -> Self {
        HeightBound { scale: BigUint::one(), extra: 0.0 }
    }

    /// The bound `log n`, exactly.
    pub fn log_of(n: impl Into<BigUint>) -> Result<Self> {
        let scale = n.into();
        if scale.is_zero() {
            return Err(Error::invalid("log(0) is not a height bound"));
        }
        Ok(HeightBound { scale, extra: 0.0 })
    }

    pub fn real(h: f64) -> Result<Self> {
        if !(h >= 0.0) || !h.is_finite() {
            return Err(Error::invalid(format!("height bound must be finite and nonnegative, got {h}")));
        }
        Ok(HeightBound { scale: BigUint::one(), extra: h })
    }

    /// Parses `log(N)`, `ln(N)`, `log(N)+r` or a plain nonnegative decimal.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::invalid("empty height bound"));
        }
        let mut bound = HeightBound::zero();
        for term in s.split('+') {
            let inner = term
                .strip_prefix("log(")
                .or_else(|| term.strip_prefix("ln("))
                .and_then(|t| t.strip_suffix(')'));
            let part = match inner {
                Some(n) => {
                    let n: BigUint = n
                        .parse()
                        .map_err(|_| Error::invalid(format!("log argument must be a positive integer: {term:?}")))?;
                    HeightBound::log_of(n)?
                }
                None => {
                    let q = parse_rational(term)?;
                    let h = q.to_f64().ok_or_else(|| Error::invalid(format!("bad height {term:?}")))?;
                    HeightBound::real(h)?
                }
            };
            bound = bound.plus(&part);
        }
        Ok(bound)
    }

    pub fn plus(&self, other: &Self) -> Self {
        HeightBound { scale: &self.scale * &other.scale, extra: self.extra + other.extra }
    }

    /// `self + r · log(g)`.
    pub fn plus_log_multiple(&self, r: usize, g: &BigUint) -> Self {
        HeightBound { scale: &self.scale * g.pow(r as u32), extra: self.extra }
    }

    /// The integer `N` of the `log N` part.
    pub fn scale(&self) -> &BigUint {
        &self.scale
    }

    /// The real part added to `log N`.
    pub fn extra(&self) -> f64 {
        self.extra
    }

    pub fn value(&self) -> f64 {
        ln_biguint(&self.scale) + self.extra
    }

    /// True when the bound is `log N` for an integer `N`.
    pub fn is_exact(&self) -> bool {
        self.extra == 0.0
    }

    /// Largest `N` with `log N ≤ self`.
    pub fn cap(&self) -> BigUint {
        if self.extra == 0.0 {
            return self.scale.clone();
        }
        if let Some(s) = self.scale.to_f64().filter(|&s| s < 9.0e15) {
            let x = s * self.extra.exp();
            if x.is_finite() {
                return BigUint::from_f64(x.floor()).unwrap_or_else(BigUint::one).max(BigUint::one());
            }
        }
        // Beyond f64 range: e^v = e^{v - k log 2} · 2^k, approximately.
        let v = self.value();
        let k = ((v - 40.0) / std::f64::consts::LN_2).floor().max(0.0);
        let mantissa = (v - k * std::f64::consts::LN_2).exp();
        BigUint::from_f64(mantissa.floor()).unwrap_or_else(BigUint::one) << (k as u64)
    }

    pub fn admits(&self, h: &HeightValue) -> bool {
        match &h.log_of {
            Some(n) => *n <= self.cap(),
            None => h.value <= self.value(),
        }
    }

    pub fn admits_rational(&self, x: &Rational) -> bool {
        x.is_zero() || height_integer(x) <= self.cap()
    }
}

impl fmt::Display for HeightBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.scale.is_one(), self.extra == 0.0) {
            (true, true) => write!(f, "0"),
            (true, false) => write!(f, "{}", self.extra),
            (false, true) => write!(f, "log({})", self.scale),
            (false, false) => write!(f, "log({})+{}", self.scale, self.extra),
        }
    }
}

impl Serialize for HeightBound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HeightBound", 4)?;
        st.serialize_field("expr", &self.to_string())?;
        st.serialize_field("value", &self.value())?;
        st.serialize_field("integer_cap", &self.cap().to_string())?;
        st.serialize_field("exact", &self.is_exact())?;
        st.end()
    }
}
