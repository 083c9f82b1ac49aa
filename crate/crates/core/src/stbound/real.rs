use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{abs_biguint, HeightBound, Rational};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision and constant cache for log-space evaluation.
pub(crate) struct Ctx {
    pub p: usize,
    cc: Consts,
}

impl Ctx {
    pub fn new(precision: usize) -> Result<Self> {
        if precision < 64 {
            return Err(Error::invalid(format!("precision must be at least 64 bits, got {precision}")));
        }
        let cc = Consts::new().map_err(|e| Error::resource(format!("arbitrary precision setup failed: {e:?}")))?;
        Ok(Ctx { p: precision, cc })
    }

    pub fn int(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.p)
    }

    pub fn float(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.p)
    }

    pub fn big(&mut self, v: &BigUint) -> BigFloat {
        match u64::try_from(v) {
            Ok(small) => self.int(small),
            Err(_) => BigFloat::parse(&v.to_string(), Radix::Dec, self.p, RM, &mut self.cc),
        }
    }

    pub fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.p, RM, &mut self.cc)
    }

    pub fn ln_int(&mut self, v: u64) -> BigFloat {
        let x = self.int(v);
        self.ln(&x)
    }

    pub fn ln_big(&mut self, v: &BigUint) -> BigFloat {
        let x = self.big(v);
        self.ln(&x)
    }

    /// `log q` for a positive rational.
    pub fn ln_rational(&mut self, q: &Rational) -> BigFloat {
        let a = self.ln_big(&abs_biguint(q.numer()));
        let b = self.ln_big(&abs_biguint(q.denom()));
        self.sub(&a, &b)
    }

    /// `log log* q = log max(1, log q)`.
    pub fn ln_log_star(&mut self, q: &Rational) -> BigFloat {
        let l = self.ln_rational(q);
        if less(&l, &self.int(1)) {
            self.int(0)
        } else {
            self.ln(&l)
        }
    }

    pub fn height(&mut self, h: &HeightBound) -> BigFloat {
        let scale = if h.scale().is_one() { self.int(0) } else { self.ln_big(h.scale()) };
        let extra = self.float(h.extra());
        self.add(&scale, &extra)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    /// `Σ cᵢ · xᵢ` with nonnegative integer coefficients.
    pub fn lin(&self, terms: &[(u64, &BigFloat)]) -> BigFloat {
        terms
            .iter()
            .fold(self.int(0), |acc, (c, x)| self.add(&acc, &self.mul(&self.int(*c), x)))
    }

    pub fn digits(&mut self, x: &BigFloat, sig: usize) -> String {
        format_significant(x, sig, &mut self.cc)
    }
}

pub(crate) fn less(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b).is_some_and(|c| c < 0)
}

/// Decimal rendering with `sig` significant digits, rounded half up.
pub(crate) fn format_significant(x: &BigFloat, sig: usize, cc: &mut Consts) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let Ok((sign, digits, exp)) = x.convert_to_radix(Radix::Dec, RM, cc) else {
        return "NaN".to_string();
    };
    let mut d: Vec<u8> = digits.into_iter().take(sig + 1).collect();
    d.resize(sig + 1, 0);
    let round_up = d[sig] >= 5;
    d.truncate(sig);
    let mut exp = exp as i64;
    if round_up {
        let mut i = sig;
        loop {
            if i == 0 {
                d.insert(0, 1);
                d.truncate(sig);
                exp += 1;
                break;
            }
            i -= 1;
            if d[i] == 9 {
                d[i] = 0;
            } else {
                d[i] += 1;
                break;
            }
        }
    }
    let text: String = d.iter().map(|v| char::from(b'0' + v)).collect();
    let body = if exp > 0 && exp as usize <= sig {
        let (int, frac) = text.split_at(exp as usize);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() { int.to_string() } else { format!("{int}.{frac}") }
    } else if exp <= 0 && exp > -6 {
        format!("0.{}{}", "0".repeat((-exp) as usize), text.trim_end_matches('0'))
    } else {
        let (first, rest) = text.split_at(1);
        let rest = rest.trim_end_matches('0');
        let mant = if rest.is_empty() { first.to_string() } else { format!("{first}.{rest}") };
        format!("{mant}e{}", exp - 1)
    };
    match sign {
        astro_float::Sign::Neg => format!("-{body}"),
        astro_float::Sign::Pos => body,
    }
}

/// Nearest `f64`, through the 20-digit decimal rendering.
pub(crate) fn to_f64(x: &BigFloat, cc: &mut Consts) -> f64 {
    format_significant(x, 20, cc).parse().unwrap_or(f64::NAN)
}

pub(crate) fn require_at_least(name: &str, q: &Rational, min: i64) -> Result<()> {
    if *q < Rational::from_integer(min.into()) {
        Err(Error::invalid(format!("{name} must be at least {min}, got {q}")))
    } else {
        Ok(())
    }
}

pub(crate) fn require_positive(name: &str, q: &Rational) -> Result<()> {
    if q.is_positive() && !q.is_zero() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive, got {q}")))
    }
}

impl Ctx {
    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        to_f64(x, &mut self.cc)
    }
}
