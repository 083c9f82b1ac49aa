use serde::Serialize;

use super::group::GroupSpec;
use crate::exactnum::{serde_q, FactoredRational, Rational};

/// Exponents certifying `(∏ αᵢ^{kᵢ} / η)^m = ∏ gⱼ^{cⱼ}`.
///
/// Absent parts default to `η = 1`; when `m` and `c` are both absent the
/// relation is absolute, `∏ αᵢ^{kᵢ} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationWitness {
    pub k: Vec<i64>,
    #[serde(serialize_with = "serde_q::option::serialize")]
    pub eta: Option<Rational>,
    pub gamma_exponents: Option<Vec<i64>>,
    pub m: Option<u64>,
}

impl RelationWitness {
    pub fn absolute(k: Vec<i64>) -> Self {
        RelationWitness { k, eta: None, gamma_exponents: None, m: None }
    }

    /// The left-hand side `∏ αᵢ^{kᵢ} / η`.
    pub fn reduced_product(&self, alphas: &[FactoredRational]) -> Option<FactoredRational> {
        if alphas.len() != self.k.len() {
            return None;
        }
        let y = FactoredRational::power_product(alphas, &self.k);
        match &self.eta {
            Some(eta) => Some(y.div(&FactoredRational::factor(eta).ok()?)),
            None => Some(y),
        }
    }

    /// Re-checks the relation from scratch.
    pub fn verify(&self, alphas: &[FactoredRational], gamma: &GroupSpec) -> bool {
        if self.k.iter().all(|&k| k == 0) {
            return false;
        }
        let Some(y) = self.reduced_product(alphas) else { return false };
        match (&self.gamma_exponents, self.m) {
            (None, None) => y.is_one(),
            (Some(c), Some(m)) if m >= 1 && c.len() == gamma.rank() => {
                i64::try_from(m).is_ok_and(|m| y.pow(m) == gamma.element(c))
            }
            _ => false,
        }
    }

    /// Replaces the relation by its inverse.
    pub fn negated(&self) -> Self {
        RelationWitness {
            k: self.k.iter().map(|x| -x).collect(),
            eta: self.eta.as_ref().map(|e| e.recip()),
            gamma_exponents: self.gamma_exponents.as_ref().map(|c| c.iter().map(|x| -x).collect()),
            m: self.m,
        }
    }

    /// Orients the witness so its first nonzero exponent is positive.
    pub fn first_positive(self) -> Self {
        match self.k.iter().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.negated(),
            _ => self,
        }
    }

    /// Orients the witness so its last nonzero exponent is positive.
    pub fn last_positive(self) -> Self {
        match self.k.iter().rev().find(|&&x| x != 0) {
            Some(&x) if x < 0 => self.negated(),
            _ => self,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VerdictKind {
    #[serde(rename = "IN")]
    In,
    #[serde(rename = "OUT")]
    Out,
    #[serde(rename = "BOUNDARY")]
    Boundary,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::In => "IN",
            VerdictKind::Out => "OUT",
            VerdictKind::Boundary => "BOUNDARY",
        }
    }
}

/// Three-valued answer with its certificate or refutation note.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    pub witness: Option<RelationWitness>,
    pub reason: String,
}

impl Verdict {
    pub fn in_with(witness: RelationWitness, reason: impl Into<String>) -> Self {
        Verdict { verdict: VerdictKind::In, witness: Some(witness), reason: reason.into() }
    }

    pub fn out(reason: impl Into<String>) -> Self {
        Verdict { verdict: VerdictKind::Out, witness: None, reason: reason.into() }
    }

    pub fn boundary(witness: Option<RelationWitness>, reason: impl Into<String>) -> Self {
        Verdict { verdict: VerdictKind::Boundary, witness, reason: reason.into() }
    }

    pub fn is_in(&self) -> bool {
        self.verdict == VerdictKind::In
    }

    pub fn is_out(&self) -> bool {
        self.verdict == VerdictKind::Out
    }

    pub fn is_boundary(&self) -> bool {
        self.verdict == VerdictKind::Boundary
    }
}
