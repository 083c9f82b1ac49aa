use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::instance::InstanceSpec;
use crate::error::{Error, Result};
use crate::exactnum::{checked_limit, factor_natural, serde_q, PlaceSet, Rational, DEFAULT_ENUMERATION_CAP};
use crate::mulrel::GroupSpec;
use crate::polyrat::{bad_reduction_primes, resultant};

/// `S_Γ`: the archimedean place and the primes in the support of Γ.
pub fn s_gamma(gamma: &GroupSpec) -> PlaceSet {
    PlaceSet::from_primes_unchecked(gamma.support().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairResultant {
    pub i: usize,
    pub j: usize,
    #[serde(with = "serde_q")]
    pub value: Rational,
}

/// `S_{f,Γ,ε}` with the contribution of every stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceBreakdown {
    pub s_gamma: PlaceSet,
    pub bad_reduction: PlaceSet,
    pub resultants: Vec<PairResultant>,
    pub resultant_primes: PlaceSet,
    /// Bound `ε + r·H_gen` of the η-ball.
    pub eta_bound: String,
    pub eta_primes: PlaceSet,
    pub total: PlaceSet,
}

/// Builds `S_Γ ∪ {bad reduction} ∪ {primes of Res(fᵢ, fⱼ)} ∪ {primes of η}`
/// for `η ∈ A(ℚ, ε + r·H_gen)`.
pub fn s_f_gamma_eps(inst: &InstanceSpec) -> Result<PlaceBreakdown> {
    s_f_gamma_eps_with_cap(inst, DEFAULT_ENUMERATION_CAP)
}

pub fn s_f_gamma_eps_with_cap(inst: &InstanceSpec, cap: usize) -> Result<PlaceBreakdown> {
    let sg = s_gamma(&inst.gamma);

    let mut bad = BTreeSet::new();
    for f in &inst.polys {
        bad.extend(bad_reduction_primes(f)?);
    }

    let mut resultants = Vec::new();
    let mut res_primes = BTreeSet::new();
    for i in 0..inst.polys.len() {
        for j in i + 1..inst.polys.len() {
            let r = resultant(&inst.polys[i], &inst.polys[j])?;
            if r.is_zero() {
                return Err(Error::invalid(format!(
                    "not pairwise coprime: Res(f{}, f{}) = 0",
                    i + 1,
                    j + 1
                )));
            }
            res_primes.extend(factor_natural(r.numer().magnitude()).into_keys());
            res_primes.extend(factor_natural(r.denom().magnitude()).into_keys());
            resultants.push(PairResultant { i: i + 1, j: j + 1, value: r });
        }
    }

    let bound = inst.eta_bound();
    let eta_primes = primes_up_to(&bound.cap(), cap)?;

    let eta = PlaceSet::from_primes_unchecked(eta_primes);
    let bad = PlaceSet::from_primes_unchecked(bad);
    let res = PlaceSet::from_primes_unchecked(res_primes);
    let total = sg.union(&bad).union(&res).union(&eta);
    Ok(PlaceBreakdown {
        s_gamma: sg,
        bad_reduction: bad,
        resultants,
        resultant_primes: res,
        eta_bound: bound.to_string(),
        eta_primes: eta,
        total,
    })
}

/// Every prime `p ≤ n` is itself an `η` of height `log p`, and no `η` of
/// height `≤ log n` has a larger prime, so the η-primes are exactly these.
fn primes_up_to(n: &BigUint, cap: usize) -> Result<Vec<BigUint>> {
    let n = checked_limit(n, cap)?.to_usize().unwrap_or(0);
    if n < 2 {
        return Ok(Vec::new());
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    Ok((2..=n).filter(|&i| sieve[i]).map(BigUint::from).collect())
}
