use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::instance::{
    check_theorem12_hypotheses, check_theorem15_hypotheses, distinct_roots_check, enforce, HypothesisCheck,
    InstanceSpec,
};
use super::periodic::{check_zero_periodicity, Periodicity};
use crate::error::{Error, Result};
use crate::exactnum::{
    enumerate_bounded_height_with_cap, format_rational, serde_q, FactoredRational, HeightBound, HeightValue,
    Rational, DEFAULT_ENUMERATION_CAP,
};
use crate::mulrel::{dependence_mod_gamma_eps_with, EtaBalls, GroupLattice, GroupSpec, RelationWitness, VerdictKind};
use crate::polyrat::Poly;

/// Width of the height shells in the stabilization table.
pub const SHELL_WIDTH: f64 = 0.5;

#[derive(Clone, Debug)]
pub struct ScanOptions {
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub enumeration_cap: usize,
    pub override_hypotheses: bool,
    /// Iterates above this height (in nats) are not factored.
    pub iterate_height_cap: f64,
    /// Steps allowed when deciding whether 0 is periodic.
    pub periodicity_steps: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            workers: 0,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            override_hypotheses: false,
            iterate_height_cap: 40.0,
            periodicity_steps: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanHit {
    #[serde(with = "serde_q")]
    pub alpha: Rational,
    pub height: f64,
    /// Window offset `m` for iterate scans.
    pub offset: Option<usize>,
    #[serde(with = "serde_q::vec")]
    pub values: Vec<Rational>,
    pub verdict: VerdictKind,
    pub witness: RelationWitness,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedCandidate {
    #[serde(with = "serde_q")]
    pub alpha: Rational,
    pub offset: Option<usize>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Shell {
    pub from: f64,
    pub to: f64,
    pub hits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stabilization {
    pub shell_width: f64,
    pub shells: Vec<Shell>,
    /// The two outermost shells hold no hits.
    pub stabilized: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanReport {
    pub version: &'static str,
    pub scan: &'static str,
    pub instance: InstanceSpec,
    pub parameters: BTreeMap<String, String>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub hypotheses_passed: bool,
    pub overridden: bool,
    pub eta_bound: String,
    pub candidates: usize,
    pub hits: Vec<ScanHit>,
    pub skipped: Vec<SkippedCandidate>,
    pub stabilization: Stabilization,
}

impl ScanReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan reports serialize")
    }

    /// One row per hit.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("alpha,offset,height,verdict,k,eta,m,gamma_exponents\n");
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(";");
        for h in &self.hits {
            let w = &h.witness;
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                format_rational(&h.alpha),
                h.offset.map(|m| m.to_string()).unwrap_or_default(),
                h.height,
                h.verdict.as_str(),
                join(&w.k),
                w.eta.as_ref().map(format_rational).unwrap_or_default(),
                w.m.map(|m| m.to_string()).unwrap_or_default(),
                w.gamma_exponents.as_deref().map(join).unwrap_or_default(),
            );
        }
        out
    }

    /// Recomputes every hit's values from the instance and re-checks its
    /// witness in exact arithmetic.
    pub fn verify_hits(&self) -> bool {
        self.hits.iter().all(|h| {
            let values = match h.offset {
                None => self.instance.polys.iter().map(|f| f.eval(&h.alpha)).collect::<Vec<_>>(),
                Some(m) => {
                    let n: usize = self.parameters["window"].parse().unwrap_or(0);
                    iterates(&self.instance.polys[0], &h.alpha, m + n, f64::INFINITY).0[m..m + n].to_vec()
                }
            };
            if values != h.values {
                return false;
            }
            let Ok(factored) = values.iter().map(FactoredRational::factor).collect::<Result<Vec<_>>>() else {
                return false;
            };
            h.witness.verify(&factored, &self.instance.gamma)
        })
    }

    /// Distinct α among the hits.
    pub fn hit_alphas(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for h in &self.hits {
            if out.last() != Some(&h.alpha) {
                out.push(h.alpha.clone());
            }
        }
        out
    }
}

/// `A(ℚ, H) ∪ {0}`, with 0 first.
fn candidates(height: &HeightBound, cap: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero()];
    out.extend(enumerate_bounded_height_with_cap(height, cap)?);
    Ok(out)
}

fn run_parallel<T, F>(cands: &[Rational], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Rational) -> Result<T> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::resource(format!("cannot start worker pool: {e}")))?;
    pool.install(|| cands.par_iter().map(&f).collect())
}

struct Tester {
    lattice: GroupLattice,
    balls: EtaBalls,
}

impl Tester {
    fn new(gamma: &GroupSpec, epsilon: &HeightBound, cap: usize) -> Result<Self> {
        Ok(Tester { lattice: GroupLattice::new(gamma), balls: EtaBalls::new(gamma, epsilon, cap)? })
    }

    fn test(&self, values: &[Rational]) -> Result<Option<(VerdictKind, RelationWitness, String)>> {
        let factored: Vec<FactoredRational> = values.iter().map(FactoredRational::factor).collect::<Result<_>>()?;
        let v = dependence_mod_gamma_eps_with(&factored, &self.lattice, &self.balls)?;
        if v.verdict == VerdictKind::Out {
            return Ok(None);
        }
        let w = v.witness.expect("IN and BOUNDARY verdicts carry witnesses");
        assert!(w.verify(&factored, self.lattice.group()), "witness failed to re-verify: {w:?}");
        Ok(Some((v.verdict, w, v.reason)))
    }
}

fn zero_index(values: &[Rational]) -> Option<usize> {
    values.iter().position(Zero::is_zero)
}

fn stabilization(hits: &[ScanHit], height: &HeightBound) -> Stabilization {
    let count = ((height.value() / SHELL_WIDTH).ceil() as usize).max(1);
    let mut shells: Vec<Shell> = (0..count)
        .map(|i| Shell { from: i as f64 * SHELL_WIDTH, to: (i + 1) as f64 * SHELL_WIDTH, hits: 0 })
        .collect();
    let mut last: Option<&Rational> = None;
    for h in hits {
        if last == Some(&h.alpha) {
            continue;
        }
        last = Some(&h.alpha);
        let i = ((h.height / SHELL_WIDTH) as usize).min(count - 1);
        shells[i].hits += 1;
    }
    let stabilized = count >= 2 && shells[count - 2..].iter().all(|s| s.hits == 0);
    Stabilization { shell_width: SHELL_WIDTH, shells, stabilized }
}

struct Collected {
    candidates: usize,
    hits: Vec<ScanHit>,
    skipped: Vec<SkippedCandidate>,
}

fn value_scan(
    inst: &InstanceSpec,
    opts: &ScanOptions,
    orient: fn(RelationWitness) -> RelationWitness,
) -> Result<Collected> {
    let tester = Tester::new(&inst.gamma, &inst.epsilon, opts.enumeration_cap)?;
    let cands = candidates(&inst.height_cap, opts.enumeration_cap)?;
    let per_alpha = run_parallel(&cands, opts.workers, |alpha| {
        let values: Vec<Rational> = inst.polys.iter().map(|f| f.eval(alpha)).collect();
        if let Some(i) = zero_index(&values) {
            let skip = SkippedCandidate { alpha: alpha.clone(), offset: None, reason: format!("f{}(α) = 0", i + 1) };
            return Ok((None, Some(skip)));
        }
        let hit = tester.test(&values)?.map(|(verdict, witness, reason)| ScanHit {
            alpha: alpha.clone(),
            height: HeightValue::of_rational(alpha).value,
            offset: None,
            values,
            verdict,
            witness: orient(witness),
            reason,
        });
        Ok((hit, None))
    })?;
    let mut hits = Vec::new();
    let mut skipped = Vec::new();
    for (h, s) in per_alpha {
        hits.extend(h);
        skipped.extend(s);
    }
    Ok(Collected { candidates: cands.len(), hits, skipped })
}

fn report(
    scan: &'static str,
    inst: InstanceSpec,
    parameters: BTreeMap<String, String>,
    hypotheses: Vec<HypothesisCheck>,
    opts: &ScanOptions,
    collected: Collected,
) -> ScanReport {
    let hypotheses_passed = hypotheses.iter().all(|c| c.passed);
    let stabilization = stabilization(&collected.hits, &inst.height_cap);
    ScanReport {
        version: crate::VERSION,
        scan,
        eta_bound: inst.eta_bound().to_string(),
        instance: inst,
        parameters,
        hypotheses,
        hypotheses_passed,
        overridden: !hypotheses_passed && opts.override_hypotheses,
        candidates: collected.candidates,
        hits: collected.hits,
        skipped: collected.skipped,
        stabilization,
    }
}

/// Values `f₁(α), …, fₙ(α)` dependent modulo `Γ^div_ε`, for `α` of height
/// at most `H` (and `α = 0`).
pub fn scan_theorem12(inst: &InstanceSpec, opts: &ScanOptions) -> Result<ScanReport> {
    let hypotheses = check_theorem12_hypotheses(&inst.polys)?;
    enforce(&hypotheses, opts.override_hypotheses)?;
    let collected = value_scan(inst, opts, |w| w)?;
    Ok(report("values", inst.clone(), BTreeMap::new(), hypotheses, opts, collected))
}

/// Divides `k` by its gcd `g` when `η` has a rational `g`-th root, scaling
/// `m` by `g`.
pub fn reduce_by_gcd(w: RelationWitness) -> RelationWitness {
    let g = w.k.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g <= 1 {
        return w;
    }
    let root = match &w.eta {
        None => Some(None),
        Some(e) if e.is_one() => Some(Some(e.clone())),
        Some(e) => rational_root(e, g as u32).map(Some),
    };
    match (root, w.m) {
        (Some(eta), Some(m)) => RelationWitness {
            k: w.k.iter().map(|x| x / g).collect(),
            eta,
            gamma_exponents: w.gamma_exponents,
            m: Some(m * g as u64),
        },
        _ => w,
    }
}

fn rational_root(x: &Rational, g: u32) -> Option<Rational> {
    let f = FactoredRational::factor(x).ok()?;
    if f.is_negative() && g.is_multiple_of(2) {
        return None;
    }
    let mut root = if f.is_negative() { FactoredRational::minus_one() } else { FactoredRational::one() };
    for (p, &e) in f.exponents() {
        if e % i64::from(g) != 0 {
            return None;
        }
        let prime = FactoredRational::from_integer(&BigInt::from(p.clone())).ok()?;
        root = root.mul(&prime.pow(e / i64::from(g)));
    }
    Some(root.to_rational())
}

/// Two-polynomial scan; witnesses are reduced by their exponent gcd and
/// oriented with the last nonzero exponent positive.
pub fn scan_theorem15(
    f1: &Poly,
    f2: &Poly,
    gamma: &GroupSpec,
    epsilon: &HeightBound,
    height: &HeightBound,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    let inst = InstanceSpec::new(vec![f1.clone(), f2.clone()], gamma.clone(), epsilon.clone(), height.clone())?;
    let hypotheses = check_theorem15_hypotheses(f1, f2)?;
    enforce(&hypotheses, opts.override_hypotheses)?;
    let collected = value_scan(&inst, opts, |w| reduce_by_gcd(w).last_positive())?;
    Ok(report("pairs", inst, BTreeMap::new(), hypotheses, opts, collected))
}

/// `f(α), …, f⁽ᵏ⁾(α)` while heights stay at most `cap`; the second part
/// names the first iterate that exceeded it.
fn iterates(f: &Poly, alpha: &Rational, count: usize, cap: f64) -> (Vec<Rational>, Option<(usize, f64)>) {
    let mut out = Vec::with_capacity(count);
    let mut z = alpha.clone();
    for i in 1..=count {
        z = f.eval(&z);
        let h = HeightValue::of_rational(&z).value;
        if h > cap {
            return (out, Some((i, h)));
        }
        out.push(z.clone());
    }
    (out, None)
}

/// Windows `f⁽ᵐ⁺¹⁾(α), …, f⁽ᵐ⁺ⁿ⁾(α)` dependent modulo `Γ^div_ε`, for
/// `0 ≤ m ≤ m_max`.
pub fn scan_corollary13(
    f: &Poly,
    gamma: &GroupSpec,
    epsilon: &HeightBound,
    window: usize,
    m_max: usize,
    height: &HeightBound,
    opts: &ScanOptions,
) -> Result<ScanReport> {
    if window == 0 {
        return Err(Error::invalid("window length must be at least 1"));
    }
    let inst = InstanceSpec::new(vec![f.clone()], gamma.clone(), epsilon.clone(), height.clone())?;
    let periodic = check_zero_periodicity(f, opts.periodicity_steps)?;
    let hypotheses = vec![
        distinct_roots_check("f", f)?,
        HypothesisCheck {
            name: "zero_not_periodic".to_string(),
            passed: periodic.verdict == Periodicity::NotPeriodic,
            detail: periodic.reason.clone(),
        },
    ];
    enforce(&hypotheses, opts.override_hypotheses)?;

    let tester = Tester::new(gamma, epsilon, opts.enumeration_cap)?;
    let cands = candidates(height, opts.enumeration_cap)?;
    let per_alpha = run_parallel(&cands, opts.workers, |alpha| {
        let (its, overflow) = iterates(f, alpha, m_max + window, opts.iterate_height_cap);
        let mut hits = Vec::new();
        let mut skipped = Vec::new();
        for m in 0..=m_max {
            if m + window > its.len() {
                let (i, h) = overflow.expect("missing iterates come from the height cap");
                skipped.push(SkippedCandidate {
                    alpha: alpha.clone(),
                    offset: Some(m),
                    reason: format!(
                        "windows from offset {m} on skipped: iterate {i} has height {h:.1} above the cap {}",
                        opts.iterate_height_cap
                    ),
                });
                break;
            }
            let values = its[m..m + window].to_vec();
            if let Some(j) = zero_index(&values) {
                skipped.push(SkippedCandidate {
                    alpha: alpha.clone(),
                    offset: Some(m),
                    reason: format!("f^({})(α) = 0", m + j + 1),
                });
                continue;
            }
            if let Some((verdict, witness, reason)) = tester.test(&values)? {
                hits.push(ScanHit {
                    alpha: alpha.clone(),
                    height: HeightValue::of_rational(alpha).value,
                    offset: Some(m),
                    values,
                    verdict,
                    witness,
                    reason,
                });
            }
        }
        Ok((hits, skipped))
    })?;
    let mut hits = Vec::new();
    let mut skipped = Vec::new();
    for (h, s) in per_alpha {
        hits.extend(h);
        skipped.extend(s);
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("window".to_string(), window.to_string());
    parameters.insert("m_max".to_string(), m_max.to_string());
    parameters.insert("iterate_height_cap".to_string(), opts.iterate_height_cap.to_string());
    let collected = Collected { candidates: cands.len(), hits, skipped };
    Ok(report("iterates", inst, parameters, hypotheses, opts, collected))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    fn h(text: &str) -> HeightBound {
        HeightBound::parse(text).unwrap()
    }

    fn opts(override_hypotheses: bool) -> ScanOptions {
        ScanOptions { override_hypotheses, ..ScanOptions::default() }
    }

    #[test]
    fn value_scan_example_hits() {
        let inst = InstanceSpec::new(
            vec![p(&[1, 0, -1]), p(&[1, 0, -4])],
            GroupSpec::parse(&["2"]).unwrap(),
            h("0.1"),
            h("log(20)"),
        )
        .unwrap();
        let r = scan_theorem12(&inst, &opts(false)).unwrap();
        assert!(r.verify_hits());
        let at = |a: Rational| r.hits.iter().find(|x| x.alpha == a).cloned().unwrap();
        assert_eq!(at(rat(3, 1)).witness.k, vec![1, 0]);
        assert_eq!(at(rat(0, 1)).verdict, VerdictKind::In);
        let skipped: Vec<Rational> = r.skipped.iter().map(|s| s.alpha.clone()).collect();
        assert_eq!(skipped, vec![rat(1, 1), rat(-1, 1), rat(2, 1), rat(-2, 1)]);
    }

    #[test]
    fn counterexample_requires_override() {
        let inst = InstanceSpec::new(
            vec![Poly::x(), &p(&[1, 1]) * &p(&[1, 2])],
            GroupSpec::parse(&["2"]).unwrap(),
            h("0"),
            h("log(8)"),
        )
        .unwrap();
        assert!(matches!(scan_theorem12(&inst, &opts(false)), Err(Error::Hypothesis(_))));
        let r = scan_theorem12(&inst, &opts(true)).unwrap();
        assert!(r.overridden);
        for j in -3i32..=3 {
            let a = Rational::from_integer(2.into()).pow(j);
            let hit = r.hits.iter().find(|x| x.alpha == a).expect("power of two is a hit");
            assert_eq!(hit.witness.k, vec![1, 0]);
        }
    }

    #[test]
    fn two_polynomial_counterexample_pair() {
        let f1 = &p(&[1, 0]) * &p(&[1, 2]);
        let f2 = &p(&[1, 1]) * &p(&[1, 2]);
        let g = GroupSpec::parse(&["3"]).unwrap();
        assert!(matches!(
            scan_theorem15(&f1, &f2, &g, &h("0"), &h("log(4)"), &opts(false)),
            Err(Error::Hypothesis(_))
        ));
        let r = scan_theorem15(&f1, &f2, &g, &h("0"), &h("log(4)"), &opts(true)).unwrap();
        let hit = r.hits.iter().find(|x| x.alpha == rat(1, 2)).unwrap();
        assert_eq!(hit.witness.k, vec![-1, 1]);
        assert!(r.verify_hits());
    }

    #[test]
    fn iterate_scan_runs_and_verifies() {
        let f = p(&[1, 0, 1]);
        let g = GroupSpec::parse(&["2"]).unwrap();
        let r = scan_corollary13(&f, &g, &h("0"), 2, 2, &h("log(3)"), &ScanOptions::default()).unwrap();
        assert!(r.hypotheses_passed);
        assert!(r.verify_hits());
        assert!(!r.hits.is_empty());
        let err = scan_corollary13(&p(&[1, 0, -1]), &g, &h("0"), 2, 2, &h("log(3)"), &ScanOptions::default());
        assert!(matches!(err, Err(Error::Hypothesis(_))));
        let err = scan_corollary13(&p(&[1, 0, 0]), &g, &h("0"), 2, 2, &h("log(3)"), &ScanOptions::default());
        assert!(matches!(err, Err(Error::Hypothesis(_))));
    }

    #[test]
    fn gcd_reduction() {
        let w = RelationWitness { k: vec![2, -4], eta: Some(rat(9, 4)), gamma_exponents: Some(vec![1]), m: Some(1) };
        let r = reduce_by_gcd(w);
        assert_eq!((r.k, r.eta, r.m), (vec![1, -2], Some(rat(3, 2)), Some(2)));
        let w = RelationWitness { k: vec![2, 2], eta: Some(rat(2, 1)), gamma_exponents: Some(vec![1]), m: Some(1) };
        assert_eq!(reduce_by_gcd(w.clone()), w);
    }

    #[test]
    fn csv_projection() {
        let f1 = &p(&[1, 0]) * &p(&[1, 2]);
        let f2 = &p(&[1, 1]) * &p(&[1, 2]);
        let g = GroupSpec::parse(&["3"]).unwrap();
        let r = scan_theorem15(&f1, &f2, &g, &h("0"), &h("log(2)"), &opts(true)).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("alpha,offset,height,verdict,k,eta,m,gamma_exponents\n"));
        assert!(csv.contains("\n1/2,,0.6931471805599453,IN,-1;1,1,1,1\n"), "{csv}");
    }
}
