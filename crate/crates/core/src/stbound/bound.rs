use astro_float::BigFloat;
use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::real::{less, require_at_least, require_positive, Ctx};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, HeightBound, Rational};

/// Default mantissa precision in bits.
pub const DEFAULT_PRECISION: usize = 128;

/// Significant digits of every logged constant in a report.
pub const REPORT_DIGITS: usize = 30;

/// Inputs of the exponent bound for `f(x) = b yᵐ` over `O_S`.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundInputs {
    /// `deg f`.
    pub n: u64,
    /// `#S`, archimedean places included.
    pub s: u64,
    /// Field degree.
    pub d: u64,
    pub h_f: HeightBound,
    pub abs_disc: Rational,
    pub p_s: Rational,
    pub n_s_b: Rational,
}

impl BoundInputs {
    /// Inputs over ℚ: `d = 1`, `|D_K| = 1`.
    pub fn rational(n: u64, s: u64, h_f: HeightBound, p_s: Rational, n_s_b: Rational) -> Self {
        BoundInputs { n, s, d: 1, h_f, abs_disc: Rational::one(), p_s, n_s_b }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid(format!("n must be at least 2, got {}", self.n)));
        }
        if self.s < 1 {
            return Err(Error::invalid("s must be at least 1"));
        }
        if self.d < 1 {
            return Err(Error::invalid("d must be at least 1"));
        }
        if self.d > 2 * self.s {
            return Err(Error::invalid(format!("d = {} exceeds 2s = {}", self.d, 2 * self.s)));
        }
        if self.h_f.value() < 0.0 {
            return Err(Error::invalid("h_f must be nonnegative"));
        }
        require_at_least("abs_disc", &self.abs_disc, 1)?;
        if self.d == 1 && !self.abs_disc.is_one() {
            return Err(Error::invalid("abs_disc must be 1 when d = 1"));
        }
        require_at_least("p_s", &self.p_s, 1)?;
        require_positive("n_s_b", &self.n_s_b)
    }
}

impl Serialize for BoundInputs {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundInputs", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("h_f", &self.h_f.to_string())?;
        st.serialize_field("abs_disc", &format_rational(&self.abs_disc))?;
        st.serialize_field("p_s", &format_rational(&self.p_s))?;
        st.serialize_field("n_s_b", &format_rational(&self.n_s_b))?;
        st.end()
    }
}

/// Natural logs of `C₀ … C₆`, `C`, the threshold on `m`, and the
/// bound `2C log C`.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub inputs: BoundInputs,
    pub precision: usize,
    pub log_c_parts: [BigFloat; 7],
    pub log_c: BigFloat,
    /// Read-only: lower threshold on `m`.
    pub log_threshold: BigFloat,
    pub log_m_bound: BigFloat,
    /// `2C log C` when it fits an `f64`.
    pub m_bound: Option<f64>,
    digits: Vec<String>,
    /// `log(6n²s) + log C₅ + log C₆ + n² log P_S ≤ log C`.
    pub chain_holds: bool,
    /// `z / log z ≥ C` for `z = 2C log C`.
    pub fixed_point_holds: bool,
}

impl BoundReport {
    pub fn log_c_f64(&self) -> f64 {
        self.digits[7].parse().unwrap_or(f64::NAN)
    }

    pub fn log_m_bound_f64(&self) -> f64 {
        self.digits[9].parse().unwrap_or(f64::NAN)
    }

    /// Decimal rendering of `log Cᵢ` (index 7 is `log C`).
    pub fn log_text(&self, i: usize) -> &str {
        &self.digits[i]
    }

    /// Whether `m ≤ 2C log C`.
    pub fn admits(&self, m: u64) -> bool {
        match self.m_bound {
            Some(b) => (m as f64) <= b,
            None => true,
        }
    }
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundReport", 16)?;
        st.serialize_field("inputs", &self.inputs)?;
        st.serialize_field("precision_bits", &self.precision)?;
        const NAMES: [&str; 7] = ["log_C0", "log_C1", "log_C2", "log_C3", "log_C4", "log_C5", "log_C6"];
        for (name, text) in NAMES.iter().zip(&self.digits) {
            st.serialize_field(name, text)?;
        }
        st.serialize_field("log_C", &self.digits[7])?;
        st.serialize_field("log_threshold", &self.digits[8])?;
        st.serialize_field("log_m_bound", &self.digits[9])?;
        st.serialize_field("m_bound", &self.m_bound)?;
        st.serialize_field("m_bound_overflows_f64", &self.m_bound.is_none())?;
        st.serialize_field("chain_holds", &self.chain_holds)?;
        st.serialize_field("fixed_point_holds", &self.fixed_point_holds)?;
        st.end()
    }
}

pub fn compute_constants(inputs: &BoundInputs) -> Result<BoundReport> {
    compute_constants_with(inputs, DEFAULT_PRECISION)
}

pub fn compute_constants_with(inputs: &BoundInputs, precision: usize) -> Result<BoundReport> {
    inputs.validate()?;
    let mut ctx = Ctx::new(precision)?;
    let (n, s, d) = (inputs.n, inputs.s, inputs.d);
    let ns = n * s;
    let l2 = ctx.ln_int(2);
    let l4 = ctx.ln_int(4);
    let l32 = ctx.ln_int(32);
    let l1200 = ctx.ln_int(1200);
    let ln = ctx.ln_int(n);
    let ls = ctx.ln_int(s);
    let l10n2s = ctx.ln_int(10 * n * n * s);
    let h = ctx.height(&inputs.h_f);
    let ld = ctx.ln_rational(&inputs.abs_disc);
    let lp = ctx.ln_rational(&inputs.p_s);
    let lsp = ctx.ln_log_star(&inputs.p_s);
    let lsn = ctx.ln_log_star(&inputs.n_s_b);
    let one = ctx.int(1);

    let c0 = {
        let inner = ctx.lin(&[(n, &l4), (3, &ln), (1, &ls)]);
        ctx.lin(&[(2 * ns, &inner), ((2 * n - 2) * d, &h), (n, &ld)])
    };
    let c1 = {
        let inner = ctx.lin(&[(2 * n, &l4), (9, &ln), (4, &ls)]);
        ctx.lin(&[(1, &l1200), (ns, &inner), ((2 * n - 2) * d, &h), (n, &ld), (ns - 1, &lsp)])
    };
    let c2_4_inner = ctx.lin(&[(n, &l4), (4, &ln), (1, &ls)]);
    let c2 = ctx.lin(&[(4 * ns, &c2_4_inner), (4 * n * d, &h), (2 * n, &ld), (1, &lsp), (1, &lsn)]);
    let c3 = ctx.lin(&[
        (4 * n * n * s, &l4),
        (37 * ns, &l10n2s),
        (11 * n * d, &h),
        (6 * n, &ld),
        (n * n, &lp),
        (1, &lsn),
    ]);
    let c4 = ctx.lin(&[(4 * ns, &c2_4_inner), (4 * n * d, &h), (2 * n, &ld), (ns - 1, &lsp)]);
    let c5 = {
        let inner = ctx.lin(&[(6 * n, &l4), (25, &ln), (8, &ls)]);
        ctx.lin(&[
            (1, &l2),
            (2, &l1200),
            (2 * ns, &inner),
            (12 * n * d, &h),
            (6 * n, &ld),
            (3 * ns, &lsp),
            (1, &lsn),
        ])
    };
    let c6 = {
        let inner = ctx.lin(&[(1, &l32), (1, &one), (2, &ln), (1, &ls)]);
        ctx.lin(&[(6 * ns + 3, &inner)])
    };
    let c = ctx.lin(&[
        (12 * n * n * s, &l4),
        (38 * ns, &l10n2s),
        (12 * n * d, &h),
        (6 * n, &ld),
        (n * n, &lp),
        (3 * ns, &lsp),
        (1, &lsn),
    ]);
    let threshold = ctx.lin(&[
        (4 * n * n * s, &l4),
        (38 * ns, &l10n2s),
        (11 * n * d, &h),
        (6 * n, &ld),
        (n * n, &lp),
        (1, &lsn),
    ]);
    let log_m = log_two_c_log_c(&mut ctx, &c);

    let chain_lhs = {
        let l6n2s = ctx.ln_int(6 * n * n * s);
        ctx.lin(&[(1, &l6n2s), (1, &c5), (1, &c6), (n * n, &lp)])
    };
    let chain_holds = !less(&c, &chain_lhs);
    let fixed_point_holds = {
        let ll = ctx.ln(&log_m);
        !less(&ctx.sub(&log_m, &ll), &c)
    };

    let parts = [c0, c1, c2, c3, c4, c5, c6];
    let mut digits: Vec<String> = parts.iter().map(|x| ctx.digits(x, REPORT_DIGITS)).collect();
    digits.push(ctx.digits(&c, REPORT_DIGITS));
    digits.push(ctx.digits(&threshold, REPORT_DIGITS));
    digits.push(ctx.digits(&log_m, REPORT_DIGITS));
    let log_m_f = ctx.to_f64(&log_m);
    let m_bound = (log_m_f < 709.0).then(|| log_m_f.exp());

    Ok(BoundReport {
        inputs: inputs.clone(),
        precision,
        log_c_parts: parts,
        log_c: c,
        log_threshold: threshold,
        log_m_bound: log_m,
        m_bound,
        digits,
        chain_holds,
        fixed_point_holds,
    })
}

/// `log(2 C log C) = log 2 + L + log L` for `L = log C`.
fn log_two_c_log_c(ctx: &mut Ctx, log_c: &BigFloat) -> BigFloat {
    let l2 = ctx.ln_int(2);
    let ll = ctx.ln(log_c);
    ctx.add(&ctx.add(&l2, log_c), &ll)
}

/// `2C log C` in log form, with the plain value when it fits an `f64`.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentBound {
    pub log_m_bound: String,
    pub m_bound: Option<f64>,
    pub overflows_f64: bool,
}

pub fn exponent_bound(inputs: &BoundInputs) -> Result<ExponentBound> {
    let r = compute_constants(inputs)?;
    Ok(ExponentBound { log_m_bound: r.digits[9].clone(), m_bound: r.m_bound, overflows_f64: r.m_bound.is_none() })
}

/// Log of the discriminant bound for the field generated by `k` roots of a
/// degree-`n` polynomial; `k = 1` uses the sharper form with `[L:K] = n`.
pub fn lemma27_rhs(
    n: u64,
    k: u64,
    d: u64,
    h_f: &HeightBound,
    abs_disc: &Rational,
    precision: usize,
) -> Result<(BigFloat, String)> {
    if n < 1 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if k < 1 || k > n {
        return Err(Error::invalid(format!("k must lie in 1..={n}, got {k}")));
    }
    if d < 1 {
        return Err(Error::invalid("d must be at least 1"));
    }
    require_at_least("abs_disc", abs_disc, 1)?;
    let mut ctx = Ctx::new(precision)?;
    let l2 = ctx.ln_int(2);
    let ln = ctx.ln_int(n);
    let h = ctx.height(h_f);
    let ld = ctx.ln_rational(abs_disc);
    let value = if k == 1 {
        ctx.lin(&[((2 * n - 2) * n * d, &l2), ((2 * n - 1) * d, &ln), ((2 * n - 2) * d, &h), (n, &ld)])
    } else {
        let nk = n
            .checked_pow(k as u32)
            .ok_or_else(|| Error::resource(format!("n^k overflows for n = {n}, k = {k}")))?;
        let inner = ctx.lin(&[(n, &l2), (1, &ln), (1, &h)]);
        ctx.lin(&[(2 * k * nk * d, &inner), (nk, &ld)])
    };
    let text = ctx.digits(&value, REPORT_DIGITS);
    Ok((value, text))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn base(n: u64, s: u64, d: u64, h: &str, p: i64, nb: i64) -> BoundInputs {
        BoundInputs {
            n,
            s,
            d,
            h_f: HeightBound::parse(h).unwrap(),
            abs_disc: if d == 1 { rat(1, 1) } else { rat(5, 1) },
            p_s: rat(p, 1),
            n_s_b: rat(nb, 1),
        }
    }

    #[test]
    fn trivial_inputs_match_closed_form() {
        let r = compute_constants(&base(2, 1, 1, "0", 1, 1)).unwrap();
        let expected = 48.0 * 4f64.ln() + 76.0 * 40f64.ln();
        assert!((r.log_c_f64() - expected).abs() < 1e-9);
        assert!(r.log_text(7).starts_with("346.896967846"));
        let lm = 2f64.ln() + expected + expected.ln();
        assert!((r.log_m_bound_f64() - lm).abs() < 1e-9);
        assert!((r.log_m_bound_f64() - 353.4).abs() < 0.1);
        assert!(r.m_bound.is_some());
        assert!(r.chain_holds && r.fixed_point_holds);
    }

    #[test]
    fn height_shift_is_linear() {
        let a = compute_constants(&base(2, 1, 1, "0", 1, 1)).unwrap();
        let b = compute_constants(&base(2, 1, 1, "1", 1, 1)).unwrap();
        assert!((b.log_c_f64() - a.log_c_f64() - 24.0).abs() < 1e-12);
    }

    #[test]
    fn c2_below_c_and_c3_definition() {
        let r = compute_constants(&base(3, 2, 2, "1.5", 97, 10)).unwrap();
        assert!(!less(&r.log_c, &r.log_c_parts[2]));
        let n = 3.0f64;
        let s = 2.0f64;
        let c3 = 4.0 * n * n * s * 4f64.ln()
            + 37.0 * n * s * (10.0 * n * n * s).ln()
            + 11.0 * n * 2.0 * 1.5
            + 6.0 * n * 5f64.ln()
            + n * n * 97f64.ln()
            + 10f64.ln().ln();
        let got: f64 = r.log_text(3).parse().unwrap();
        assert!((got - c3).abs() < 1e-9 * c3);
    }

    #[test]
    fn validation_names_fields() {
        let mut i = base(2, 1, 1, "0", 1, 1);
        i.n = 1;
        assert!(compute_constants(&i).unwrap_err().to_string().contains("n must"));
        let mut i = base(2, 1, 1, "0", 1, 1);
        i.d = 3;
        assert!(compute_constants(&i).unwrap_err().to_string().contains("2s"));
        let mut i = base(2, 1, 1, "0", 1, 1);
        i.abs_disc = rat(3, 1);
        assert!(compute_constants(&i).unwrap_err().to_string().contains("abs_disc"));
        let mut i = base(2, 1, 1, "0", 1, 1);
        i.n_s_b = rat(0, 1);
        assert!(compute_constants(&i).unwrap_err().to_string().contains("n_s_b"));
        let mut i = base(2, 1, 1, "0", 1, 1);
        i.p_s = rat(1, 2);
        assert!(compute_constants(&i).unwrap_err().to_string().contains("p_s"));
    }

    #[test]
    fn discriminant_bound_examples() {
        let zero = HeightBound::zero();
        let (_, t) = lemma27_rhs(2, 1, 1, &zero, &rat(1, 1), 128).unwrap();
        let v: f64 = t.parse().unwrap();
        assert!((v - 7.0 * 2f64.ln()).abs() < 1e-12);
        let (_, t) = lemma27_rhs(3, 2, 1, &zero, &rat(1, 1), 128).unwrap();
        let v: f64 = t.parse().unwrap();
        let expected = 2.0 * 2.0 * 9.0 * (8f64 * 3.0).ln();
        assert!((v - expected).abs() < 1e-9);
        assert!(lemma27_rhs(2, 3, 1, &zero, &rat(1, 1), 128).is_err());
        assert!(lemma27_rhs(2, 0, 1, &zero, &rat(1, 1), 128).is_err());
    }

    #[test]
    fn serialises_thirty_digits() {
        let r = compute_constants(&base(2, 1, 1, "0", 1, 1)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let text = v["log_C"].as_str().unwrap();
        let digits = text.chars().filter(|c| c.is_ascii_digit()).count();
        assert_eq!(digits, 30);
        assert_eq!(v["inputs"]["n"], 2);
    }
}
