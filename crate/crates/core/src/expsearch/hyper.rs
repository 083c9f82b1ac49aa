use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    canonical_cmp, checked_limit, count_bounded_height, format_rational, lcm_denominators, s_norm, serde_q,
    FactoredRational, HeightBound, PlaceSet, Rational, DEFAULT_ENUMERATION_CAP, p_s_q_s,
};
use crate::polyrat::{poly_heights, squarefree_decompose, Poly};
use crate::stbound::{compute_constants, BoundInputs, BoundReport};

/// A solution of `f(x) = b·yᵐ` with `x, y ∈ O_S`, `y ∉ O_S*`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperSolution {
    #[serde(with = "serde_q")]
    pub x: Rational,
    #[serde(with = "serde_q")]
    pub y: Rational,
    pub m: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperReport {
    pub solutions: Vec<HyperSolution>,
    /// Candidates with `f(x) = 0`.
    #[serde(with = "serde_q::vec")]
    pub skipped_roots: Vec<Rational>,
    pub candidates: usize,
}

impl HyperReport {
    /// One solution per `x > 0` with the largest `m` and `y > 0`.
    pub fn primitive(&self) -> Vec<(Rational, Rational, u32)> {
        let mut out: Vec<(Rational, Rational, u32)> = Vec::new();
        for s in &self.solutions {
            if !s.x.is_positive() || !s.y.is_positive() {
                continue;
            }
            match out.iter_mut().find(|(x, _, _)| *x == s.x) {
                Some(entry) if entry.2 < s.m => *entry = (s.x.clone(), s.y.clone(), s.m),
                Some(_) => {}
                None => out.push((s.x.clone(), s.y.clone(), s.m)),
            }
        }
        out
    }
}

/// S-integers of height at most `bound`, with 0 first and the rest in
/// canonical order.
pub fn s_integers_up_to(places: &PlaceSet, bound: &HeightBound, cap: usize) -> Result<Vec<Rational>> {
    let n = checked_limit(&bound.cap(), cap)?;
    if count_bounded_height(n) > cap as u128 && places.t() > 0 {
        return Err(Error::resource(format!("S-integer box of height {bound} exceeds the cap {cap}")));
    }
    let denominators: Vec<u64> = (1..=n)
        .filter(|&d| {
            let f = FactoredRational::from_i64(d as i64).expect("positive");
            places.is_s_integer(&f.inv())
        })
        .collect();
    let mut out = vec![Rational::zero()];
    for d in &denominators {
        for a in 1..=n {
            if a.gcd(d) == 1 {
                let x = Rational::new(BigInt::from(a), BigInt::from(*d));
                out.push(x.clone());
                out.push(-x);
            }
        }
    }
    out.sort_by(canonical_cmp);
    Ok(out)
}

/// All `(x, y, m)` with `f(x) = b yᵐ`, `x, y ∈ O_S`, `y ∉ O_S*`,
/// `h(x) ≤ H` and `3 ≤ m ≤ m_max`.
pub fn hyperelliptic_search(
    f: &Poly,
    b: &Rational,
    places: &PlaceSet,
    height: &HeightBound,
    m_max: u32,
) -> Result<HyperReport> {
    hyperelliptic_search_with_cap(f, b, places, height, m_max, DEFAULT_ENUMERATION_CAP)
}

pub fn hyperelliptic_search_with_cap(
    f: &Poly,
    b: &Rational,
    places: &PlaceSet,
    height: &HeightBound,
    m_max: u32,
    cap: usize,
) -> Result<HyperReport> {
    if f.is_zero() {
        return Err(Error::invalid("f must be nonzero"));
    }
    if b.is_zero() {
        return Err(Error::invalid("b must be nonzero"));
    }
    let candidates = s_integers_up_to(places, height, cap)?;
    let mut solutions = Vec::new();
    let mut skipped_roots = Vec::new();
    for x in &candidates {
        let v = f.eval(x);
        if v.is_zero() {
            skipped_roots.push(x.clone());
            continue;
        }
        let v = FactoredRational::factor(&(v / b))?;
        let outside: Vec<i64> = v
            .exponents()
            .iter()
            .filter(|(p, _)| !places.contains(p))
            .map(|(_, &e)| e)
            .collect();
        // y ∈ O_S needs yᵐ S-integral; y ∉ O_S* needs a positive non-S valuation.
        if outside.iter().any(|&e| e < 0) || !outside.iter().any(|&e| e > 0) {
            continue;
        }
        for m in 3..=m_max {
            if v.exponents().values().any(|&e| e % i64::from(m) != 0) {
                continue;
            }
            if v.is_negative() && m % 2 == 0 {
                continue;
            }
            let mut root = if v.is_negative() { FactoredRational::minus_one() } else { FactoredRational::one() };
            for (p, &e) in v.exponents() {
                let prime = FactoredRational::from_integer(&BigInt::from(p.clone()))?;
                root = root.mul(&prime.pow(e / i64::from(m)));
            }
            let y = root.to_rational();
            if m % 2 == 0 {
                solutions.push(HyperSolution { x: x.clone(), y: y.clone(), m });
                solutions.push(HyperSolution { x: x.clone(), y: -y, m });
            } else {
                solutions.push(HyperSolution { x: x.clone(), y, m });
            }
        }
    }
    Ok(HyperReport { solutions, skipped_roots, candidates: candidates.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub search: HyperReport,
    pub bound: BoundReport,
    /// Largest exponent found, if any.
    pub max_m: Option<u32>,
    pub all_within_bound: bool,
    /// `log(2C log C) − log(max m)`.
    pub log_margin: Option<f64>,
    /// The denominator `D` cleared from `f` and `b`.
    #[serde(with = "serde_q")]
    pub clearing_factor: Rational,
}

/// Runs the search and checks every exponent against `m ≤ 2C log C`.
pub fn validate_bound(
    f: &Poly,
    b: &Rational,
    places: &PlaceSet,
    height: &HeightBound,
    m_max: u32,
) -> Result<ValidationReport> {
    if f.is_constant() {
        return Err(Error::hypothesis(format!("{f} is constant")));
    }
    let roots = squarefree_decompose(f)?.distinct_root_count();
    if roots < 2 {
        return Err(Error::hypothesis(format!("{f} has {roots} distinct root(s); at least two are required")));
    }
    let search = hyperelliptic_search(f, b, places, height, m_max)?;

    let d = Rational::from_integer(lcm_denominators(f.ascending().iter().chain(std::iter::once(b))));
    let df = f.scale(&d);
    let db = b * &d;
    let (p_s, _) = p_s_q_s(places);
    let n_s_b = s_norm(&FactoredRational::factor(&db)?, places);
    let h_f = poly_heights(&df)?.h;
    let h_f = match &h_f.log_of {
        Some(n) => HeightBound::log_of(n.clone())?,
        None => HeightBound::real(h_f.value)?,
    };
    let inputs = BoundInputs::rational(
        f.degree().unwrap() as u64,
        places.s() as u64,
        h_f,
        Rational::from_integer(BigInt::from(p_s)),
        n_s_b,
    );
    let bound = compute_constants(&inputs)?;
    let max_m = search.solutions.iter().map(|s| s.m).max();
    let all_within_bound = search.solutions.iter().all(|s| bound.admits(u64::from(s.m)));
    let log_margin = max_m.map(|m| bound.log_m_bound_f64() - f64::from(m).ln());
    Ok(ValidationReport { search, bound, max_m, all_within_bound, log_margin, clearing_factor: d })
}

impl std::fmt::Display for HyperSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", format_rational(&self.x), format_rational(&self.y), self.m)
    }
}
