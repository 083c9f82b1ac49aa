use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::group::{GroupSpec, OddInt, Universe};
use super::lattice::{
    annihilator, dot, even_sublattice, integer_kernel, row_hnf, to_i64_vec, ColumnEchelon, IntMatrix,
};
use super::witness::{RelationWitness, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, FactoredRational};

/// Γ's exponent lattice over its own support, reduced once and reused for
/// many membership queries.
#[derive(Clone, Debug)]
pub struct GroupLattice {
    group: GroupSpec,
    echelon: ColumnEchelon,
}

impl GroupLattice {
    pub fn new(group: &GroupSpec) -> Self {
        let echelon = ColumnEchelon::new(&group.exponent_matrix(group.support()));
        GroupLattice { group: group.clone(), echelon }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    fn vector(&self, x: &FactoredRational) -> std::result::Result<Vec<BigInt>, String> {
        if let Some(p) = x.support().find(|p| self.group.support().binary_search(p).is_err()) {
            return Err(format!("support mismatch: prime {p} lies outside the support of Γ"));
        }
        Ok(self
            .group
            .support()
            .iter()
            .map(|p| BigInt::from(x.valuation(p)))
            .collect())
    }

    /// Exponents `c` with `x = ∏ gⱼ^{cⱼ}`, sign included.
    pub fn membership(&self, x: &FactoredRational) -> Result<Option<Vec<i64>>> {
        let Ok(v) = self.vector(x) else { return Ok(None) };
        let Some(c0) = self.echelon.solve(&v) else { return Ok(None) };
        if self.group.sign_parity(&c0) == x.is_negative() {
            return to_i64_vec(&c0).map(Some);
        }
        for k in self.echelon.kernel_basis() {
            if self.group.sign_parity(&k) {
                let c: Vec<BigInt> = c0.iter().zip(&k).map(|(a, b)| a + b).collect();
                return to_i64_vec(&c).map(Some);
            }
        }
        Ok(None)
    }

    /// Membership in the division group, with the smallest power `m ≥ 1`
    /// such that `x^m ∈ Γ`.
    pub fn div_membership(&self, x: &FactoredRational) -> Result<Verdict> {
        let v = match self.vector(x) {
            Ok(v) => v,
            Err(reason) => return Ok(Verdict::out(reason)),
        };
        let Some(y) = self.echelon.solve_rational_coordinates(&v) else {
            return Ok(Verdict::out("exponent vector lies outside the rational span of Γ"));
        };
        let m0 = y.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let m0 = m0
            .to_u64()
            .filter(|&m| m <= i64::MAX as u64 / 2)
            .ok_or_else(|| Error::resource(format!("division-group power {m0} exceeds 64 bits")))?;
        for m in [m0, 2 * m0] {
            if let Some(c) = self.membership(&x.pow(m as i64))? {
                let witness =
                    RelationWitness { k: vec![1], eta: None, gamma_exponents: Some(c), m: Some(m) };
                let reason = if m == m0 {
                    format!("x^{m} lies in Γ")
                } else {
                    format!("x^{m0} lies in Γ only up to sign; x^{m} lies in Γ")
                };
                return Ok(Verdict::in_with(witness, reason));
            }
        }
        unreachable!("a doubled power always absorbs the sign")
    }
}

/// Canonical basis of `{k ∈ ℤⁿ : M k = 0}`.
pub fn integer_kernel_i64(cols: usize, rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if cols == 0 {
        return Err(Error::invalid("integer_kernel needs at least one column"));
    }
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::invalid("integer_kernel: ragged matrix"));
    }
    integer_kernel(&IntMatrix::from_i64_rows(cols, rows))
        .iter()
        .map(|v| to_i64_vec(v))
        .collect()
}

pub fn gamma_membership(x: &FactoredRational, gamma: &GroupSpec) -> Result<Option<Vec<i64>>> {
    GroupLattice::new(gamma).membership(x)
}

pub fn gamma_div_membership(x: &FactoredRational, gamma: &GroupSpec) -> Result<Verdict> {
    GroupLattice::new(gamma).div_membership(x)
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(j == i)).collect()
}

pub(crate) fn check_nonempty(alphas: &[FactoredRational]) -> Result<()> {
    if alphas.is_empty() {
        Err(Error::invalid("at least one value is required"))
    } else {
        Ok(())
    }
}

/// A nonzero `k` with `∏ αᵢ^{kᵢ} = 1`, or `None` when the values are
/// multiplicatively independent.
pub fn dependence_absolute(alphas: &[FactoredRational]) -> Result<Option<RelationWitness>> {
    check_nonempty(alphas)?;
    let n = alphas.len();
    if let Some(i) = alphas.iter().position(FactoredRational::is_one) {
        return Ok(Some(RelationWitness::absolute(unit_vector(n, i))));
    }
    let universe = Universe::new(alphas, &[]);
    let kernel = integer_kernel(&universe.matrix(alphas));
    let signs: Vec<BigInt> = alphas.iter().map(|a| BigInt::from(a.is_negative() as u8)).collect();
    let even = even_sublattice(&kernel, |v| dot(&signs, v).is_odd_int());
    let basis = row_hnf(&even, n);
    match basis.first() {
        Some(k) => Ok(Some(RelationWitness::absolute(to_i64_vec(k)?))),
        None => Ok(None),
    }
}

/// Integer relations modulo the rational span of Γ: rows `P` with
/// `P v = 0 ⟺ v ∈ ℚ·Γ`, and the kernel of `P E`.
pub(crate) struct SpanSystem {
    pub universe: Universe,
    pub annihilator: IntMatrix,
    pub echelon: ColumnEchelon,
    pub kernel: Vec<Vec<BigInt>>,
}

impl SpanSystem {
    pub fn new(alphas: &[FactoredRational], gamma: &GroupSpec) -> Self {
        let universe = Universe::new(alphas, gamma.support());
        let annihilator = annihilator(&gamma.exponent_matrix(universe.primes()));
        let a = annihilator.mul(&universe.matrix(alphas));
        let echelon = ColumnEchelon::new(&a);
        let kernel = row_hnf(&echelon.kernel_basis(), alphas.len());
        SpanSystem { universe, annihilator, echelon, kernel }
    }

    /// Some `k ≠ 0` with `∏ αᵢ^{kᵢ} / η ∈ Γ^div`.
    pub fn solve(&self, eta: &FactoredRational) -> Option<Vec<BigInt>> {
        let v = self.universe.vector(eta)?;
        let rhs = self.annihilator.mul_vec(&v);
        let k0 = self.echelon.solve(&rhs)?;
        if k0.iter().any(|x| !x.is_zero()) {
            Some(k0)
        } else {
            self.kernel.first().cloned()
        }
    }
}

/// Completes `k` (and `η`) into a full witness carrying `m` and `c`.
pub(crate) fn complete_witness(
    alphas: &[FactoredRational],
    lattice: &GroupLattice,
    k: Vec<i64>,
    eta: Option<&FactoredRational>,
) -> Result<RelationWitness> {
    let mut y = FactoredRational::power_product(alphas, &k);
    if let Some(e) = eta {
        y = y.div(e);
    }
    let verdict = lattice.div_membership(&y)?;
    let inner = verdict
        .witness
        .filter(|_| verdict.verdict == super::witness::VerdictKind::In)
        .unwrap_or_else(|| panic!("relation {k:?} does not land in the division group"));
    Ok(RelationWitness {
        k,
        eta: eta.map(|e| e.to_rational()),
        gamma_exponents: inner.gamma_exponents,
        m: inner.m,
    })
}

/// A nonzero `k` with `∏ αᵢ^{kᵢ} ∈ Γ^div`, together with the power `m` and
/// Γ-exponents; `None` proves independence modulo `Γ^div`.
pub fn dependence_mod_gamma_div(
    alphas: &[FactoredRational],
    gamma: &GroupSpec,
) -> Result<Option<RelationWitness>> {
    check_nonempty(alphas)?;
    let n = alphas.len();
    if let Some(i) = alphas.iter().position(FactoredRational::is_one) {
        return Ok(Some(RelationWitness {
            k: unit_vector(n, i),
            eta: None,
            gamma_exponents: Some(vec![0; gamma.rank()]),
            m: Some(1),
        }));
    }
    let system = SpanSystem::new(alphas, gamma);
    let Some(k) = system.kernel.first() else { return Ok(None) };
    let lattice = GroupLattice::new(gamma);
    let w = complete_witness(alphas, &lattice, to_i64_vec(k)?, None)?;
    Ok(Some(w.first_positive()))
}

pub(crate) fn describe(x: &FactoredRational) -> String {
    format_rational(&x.to_rational())
}
