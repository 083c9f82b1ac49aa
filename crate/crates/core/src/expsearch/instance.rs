use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::HeightBound;
use crate::mulrel::{lf_generation_check, GroupSpec};
use crate::polyrat::{resultant, squarefree_decompose, Poly};

/// Polynomials `f₁…fₙ`, the group Γ, the slack `ε` and the scan height `H`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSpec {
    pub polys: Vec<Poly>,
    pub gamma: GroupSpec,
    #[serde(serialize_with = "as_display")]
    pub epsilon: HeightBound,
    #[serde(serialize_with = "as_display")]
    pub height_cap: HeightBound,
}

fn as_display<S: serde::Serializer>(h: &HeightBound, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&h.to_string())
}

impl InstanceSpec {
    pub fn new(polys: Vec<Poly>, gamma: GroupSpec, epsilon: HeightBound, height_cap: HeightBound) -> Result<Self> {
        if polys.is_empty() {
            return Err(Error::invalid("at least one polynomial is required"));
        }
        if let Some(i) = polys.iter().position(Poly::is_constant) {
            return Err(Error::invalid(format!("f{} is constant", i + 1)));
        }
        Ok(InstanceSpec { polys, gamma, epsilon, height_cap })
    }

    /// `ε + r·H_gen`, the radius of the η-ball in the superset test.
    pub fn eta_bound(&self) -> HeightBound {
        self.epsilon.plus_log_multiple(self.gamma.rank(), &self.gamma.height_integer())
    }
}

/// One named hypothesis with its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl HypothesisCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        HypothesisCheck { name: name.to_string(), passed, detail }
    }
}

pub(crate) fn distinct_roots_check(label: &str, f: &Poly) -> Result<HypothesisCheck> {
    let roots = squarefree_decompose(f)?.distinct_root_count();
    Ok(HypothesisCheck::new(
        "at_least_two_distinct_roots",
        roots >= 2,
        format!("{label} = {f} has {roots} distinct root(s)"),
    ))
}

pub(crate) fn pairwise_coprime_check(polys: &[Poly]) -> Result<HypothesisCheck> {
    let mut failures = Vec::new();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            if resultant(&polys[i], &polys[j])?.is_zero() {
                failures.push(format!("Res(f{}, f{}) = 0", i + 1, j + 1));
            }
        }
    }
    let passed = failures.is_empty();
    let detail = if passed { "all pairwise resultants are nonzero".to_string() } else { failures.join("; ") };
    Ok(HypothesisCheck::new("pairwise_coprime", passed, detail))
}

/// Pairwise coprimality and at least two distinct roots per polynomial.
pub fn check_theorem12_hypotheses(polys: &[Poly]) -> Result<Vec<HypothesisCheck>> {
    let mut checks = vec![pairwise_coprime_check(polys)?];
    for (i, f) in polys.iter().enumerate() {
        checks.push(distinct_roots_check(&format!("f{}", i + 1), f)?);
    }
    Ok(checks)
}

/// Degree at least 2, two distinct roots each, and no linear fractional
/// power generated.
pub fn check_theorem15_hypotheses(f1: &Poly, f2: &Poly) -> Result<Vec<HypothesisCheck>> {
    let mut checks = Vec::new();
    for (label, f) in [("f1", f1), ("f2", f2)] {
        let deg = f.degree().unwrap_or(0);
        checks.push(HypothesisCheck::new("degree_at_least_two", deg >= 2, format!("deg {label} = {deg}")));
        checks.push(distinct_roots_check(label, f)?);
    }
    let lf = lf_generation_check(f1, f2)?;
    let detail = match &lf {
        Some(r) => format!("f1^{} f2^{} = c·({})", r.k[0], r.k[1], r.description),
        None => "no power of a linear fractional function is generated".to_string(),
    };
    checks.push(HypothesisCheck::new("no_linear_fractional_power", lf.is_none(), detail));
    Ok(checks)
}

/// Turns failed checks into a hypothesis error unless overridden.
pub(crate) fn enforce(checks: &[HypothesisCheck], override_hypotheses: bool) -> Result<()> {
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if failed.is_empty() || override_hypotheses {
        Ok(())
    } else {
        Err(Error::hypothesis(failed.join("; ")))
    }
}
