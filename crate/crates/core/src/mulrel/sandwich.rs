use num_bigint::BigUint;
use num_traits::Signed;

use super::dependence::{check_nonempty, complete_witness, describe, GroupLattice, SpanSystem};
use super::group::GroupSpec;
use super::lattice::to_i64_vec;
use super::witness::{RelationWitness, Verdict, VerdictKind};
use crate::error::Result;
use crate::exactnum::{
    enumerate_bounded_height_with_cap, format_rational, height_integer, FactoredRational, HeightBound, Rational,
    DEFAULT_ENUMERATION_CAP,
};

/// The height balls used by the sandwich: `A(ℚ, ε)` certifies membership,
/// `A(ℚ, ε + r·H_gen)` is the superset that must be exhausted to refute it.
#[derive(Clone, Debug)]
pub struct EtaBalls {
    pub epsilon: HeightBound,
    pub outer_bound: HeightBound,
    inner_cap: BigUint,
    inner: Vec<(Rational, FactoredRational)>,
    outer: Vec<(Rational, FactoredRational)>,
}

impl EtaBalls {
    pub fn new(gamma: &GroupSpec, epsilon: &HeightBound, cap: usize) -> Result<Self> {
        let outer_bound = epsilon.plus_log_multiple(gamma.rank(), &gamma.height_integer());
        let outer = factored_ball(&outer_bound, cap)?;
        let cap = epsilon.cap();
        let inner = outer
            .iter()
            .filter(|(x, _)| height_integer(x) <= cap)
            .cloned()
            .collect();
        Ok(EtaBalls { epsilon: epsilon.clone(), outer_bound, inner_cap: cap, inner, outer })
    }

    pub fn inner(&self) -> &[(Rational, FactoredRational)] {
        &self.inner
    }

    pub fn outer(&self) -> &[(Rational, FactoredRational)] {
        &self.outer
    }
}

fn factored_ball(bound: &HeightBound, cap: usize) -> Result<Vec<(Rational, FactoredRational)>> {
    enumerate_bounded_height_with_cap(bound, cap)?
        .into_iter()
        .map(|x| FactoredRational::factor(&x).map(|f| (x, f)))
        .collect()
}

/// Three-valued membership of `x` in `Γ^div_ε ∩ ℚ*`.
pub fn eps_membership_sandwich(x: &FactoredRational, gamma: &GroupSpec, epsilon: &HeightBound) -> Result<Verdict> {
    let balls = EtaBalls::new(gamma, epsilon, DEFAULT_ENUMERATION_CAP)?;
    eps_membership_with(x, &GroupLattice::new(gamma), &balls)
}

pub fn eps_membership_with(x: &FactoredRational, lattice: &GroupLattice, balls: &EtaBalls) -> Result<Verdict> {
    for (eta, f) in balls.inner() {
        if eta.is_negative() {
            continue;
        }
        let v = lattice.div_membership(&x.div(f))?;
        if let Some(w) = v.witness.filter(|_| v.verdict == VerdictKind::In) {
            let witness = RelationWitness { eta: Some(eta.clone()), ..w };
            return Ok(Verdict::in_with(
                witness,
                format!("x / {} lies in Γ^div with h(η) ≤ {}", format_rational(eta), balls.epsilon),
            ));
        }
    }
    for (eta, f) in balls.outer() {
        if let Some(c) = lattice.membership(&x.div(f))? {
            let witness =
                RelationWitness { k: vec![1], eta: Some(eta.clone()), gamma_exponents: Some(c), m: Some(1) };
            return Ok(Verdict::boundary(
                Some(witness),
                format!(
                    "x / {} lies in Γ but no η of height ≤ {} certifies membership",
                    format_rational(eta),
                    balls.epsilon
                ),
            ));
        }
    }
    Ok(Verdict::out(format!(
        "superset test failed: x / η ∉ Γ for every η in A(Q, {})",
        balls.outer_bound
    )))
}

/// Three-valued dependence of `α₁…αₙ` modulo `Γ^div_ε`.
pub fn dependence_mod_gamma_eps(
    alphas: &[FactoredRational],
    gamma: &GroupSpec,
    epsilon: &HeightBound,
) -> Result<Verdict> {
    let balls = EtaBalls::new(gamma, epsilon, DEFAULT_ENUMERATION_CAP)?;
    dependence_mod_gamma_eps_with(alphas, &GroupLattice::new(gamma), &balls)
}

pub fn dependence_mod_gamma_eps_with(
    alphas: &[FactoredRational],
    lattice: &GroupLattice,
    balls: &EtaBalls,
) -> Result<Verdict> {
    check_nonempty(alphas)?;
    let gamma = lattice.group();
    if let Some(i) = alphas.iter().position(FactoredRational::is_one) {
        let k = (0..alphas.len()).map(|j| i64::from(j == i)).collect();
        let witness = RelationWitness {
            k,
            eta: Some(Rational::from_integer(1.into())),
            gamma_exponents: Some(vec![0; gamma.rank()]),
            m: Some(1),
        };
        return Ok(Verdict::in_with(witness, "a value equals 1"));
    }
    let system = SpanSystem::new(alphas, gamma);
    // Γ^div contains −1, so η and −η behave identically.
    for (eta, f) in balls.inner() {
        if eta.is_negative() {
            continue;
        }
        if let Some(k) = system.solve(f) {
            let w = complete_witness(alphas, lattice, to_i64_vec(&k)?, Some(f))?.first_positive();
            return Ok(Verdict::in_with(
                w,
                format!("relation with η = {} of height ≤ {}", describe(f), balls.epsilon),
            ));
        }
    }
    for (eta, f) in balls.outer() {
        if eta.is_negative() || height_integer(eta) <= balls.inner_cap {
            continue;
        }
        if let Some(k) = system.solve(f) {
            let w = complete_witness(alphas, lattice, to_i64_vec(&k)?, Some(f))?.first_positive();
            return Ok(Verdict::boundary(
                Some(w),
                format!(
                    "relation needs η = {} above height {}; inside the superset ball {}",
                    describe(f),
                    balls.epsilon,
                    balls.outer_bound
                ),
            ));
        }
    }
    Ok(Verdict::out(format!(
        "no affine relation for any η in A(Q, {})",
        balls.outer_bound
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn fr(p: i64, q: i64) -> FactoredRational {
        FactoredRational::factor(&rat(p, q)).unwrap()
    }

    fn eps(text: &str) -> HeightBound {
        HeightBound::parse(text).unwrap()
    }

    #[test]
    fn sandwich_examples() {
        let g2 = GroupSpec::parse(&["2"]).unwrap();
        let v = eps_membership_sandwich(&fr(3, 1), &g2, &eps("log(3)")).unwrap();
        assert!(v.is_in());
        assert!(v.witness.as_ref().unwrap().verify(&[fr(3, 1)], &g2));
        let v = eps_membership_sandwich(&fr(5, 1), &g2, &eps("log(2)")).unwrap();
        assert!(v.is_out(), "{v:?}");
        let g8 = GroupSpec::parse(&["8"]).unwrap();
        let v = eps_membership_sandwich(&fr(3, 1), &g8, &eps("0.1")).unwrap();
        assert!(v.is_boundary());
        let w = v.witness.unwrap();
        assert_eq!(w.eta, Some(rat(3, 1)));
        assert!(w.verify(&[fr(3, 1)], &g8));
    }

    #[test]
    fn eps_dependence_examples() {
        let g2 = GroupSpec::parse(&["2"]).unwrap();
        let alphas = [fr(8, 1), fr(5, 1)];
        let v = dependence_mod_gamma_eps(&alphas, &g2, &eps("0")).unwrap();
        let w = v.witness.clone().unwrap();
        assert!(v.is_in());
        assert_eq!((w.k.clone(), w.eta.clone()), (vec![1, 0], Some(rat(1, 1))));
        assert!(w.verify(&alphas, &g2));

        let v = dependence_mod_gamma_eps(&[fr(5, 1), fr(7, 1)], &g2, &eps("0.1")).unwrap();
        assert!(v.is_out(), "{v:?}");

        let g3 = GroupSpec::parse(&["3"]).unwrap();
        let alphas = [fr(5, 4), fr(15, 4)];
        for e in ["0", "0.5", "log(7)"] {
            let v = dependence_mod_gamma_eps(&alphas, &g3, &eps(e)).unwrap();
            let w = v.witness.unwrap();
            assert_eq!(w.k, vec![1, -1]);
            assert_eq!(w.eta, Some(rat(1, 1)));
            assert!(w.verify(&alphas, &g3));
        }
    }

    #[test]
    fn boundary_witness_reverifies() {
        let g8 = GroupSpec::parse(&["8"]).unwrap();
        let alphas = [fr(3, 1), fr(5, 1)];
        let v = dependence_mod_gamma_eps(&alphas, &g8, &eps("0.1")).unwrap();
        assert!(v.is_boundary());
        assert!(v.witness.unwrap().verify(&alphas, &g8));
    }
}
