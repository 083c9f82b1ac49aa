use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::group::{GroupSpec, OddInt, Universe};
use super::lattice::{dot, even_sublattice, integer_kernel, row_hnf, to_i64_vec, IntMatrix};
use super::witness::RelationWitness;
use crate::error::{Error, Result};
use crate::exactnum::{FactoredRational, Rational};
use crate::polyrat::{coprime_basis, Poly};

/// A nonzero rational function `num / den` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFunction {
    pub num: Poly,
    pub den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::invalid("rational function with zero numerator or denominator"));
        }
        Ok(RationalFunction { num, den })
    }

    pub fn poly(p: Poly) -> Result<Self> {
        Self::new(p, Poly::one())
    }

    /// `None` at poles.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Basis exponents `fᵢ = cᵢ · ∏ bⱼ^{e[i][j]}` for a list of rational
/// functions, with `e` allowed negative.
struct FunctionBasis {
    basis: Vec<Poly>,
    exponents: Vec<Vec<i64>>,
    constants: Vec<Rational>,
}

fn function_basis(fs: &[RationalFunction]) -> Result<FunctionBasis> {
    let polys: Vec<Poly> = fs.iter().flat_map(|f| [f.num.clone(), f.den.clone()]).collect();
    let cb = coprime_basis(&polys)?;
    let exponents = (0..fs.len())
        .map(|i| {
            cb.exponents[2 * i]
                .iter()
                .zip(&cb.exponents[2 * i + 1])
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    let constants = (0..fs.len())
        .map(|i| &cb.contents[2 * i] / &cb.contents[2 * i + 1])
        .collect();
    Ok(FunctionBasis { basis: cb.basis, exponents, constants })
}

/// A relation `∏ fᵢ^{kᵢ} ∈ Γ` (a constant function with value in Γ), or
/// `None` when the functions are multiplicatively independent modulo Γ.
/// The witness has `m = 1` and `c` the Γ-exponents of the constant.
pub fn rf_independence_mod_gamma(
    fs: &[RationalFunction],
    gamma: &GroupSpec,
) -> Result<Option<RelationWitness>> {
    if fs.is_empty() {
        return Err(Error::invalid("at least one function is required"));
    }
    for f in fs {
        if f.num.is_zero() || f.den.is_zero() {
            return Err(Error::invalid("zero function"));
        }
    }
    let fb = function_basis(fs)?;
    let n = fs.len();
    let rows: Vec<Vec<i64>> = (0..fb.basis.len())
        .map(|j| (0..n).map(|i| fb.exponents[i][j]).collect())
        .collect();
    let kernel = integer_kernel(&IntMatrix::from_i64_rows(n, &rows));
    if kernel.is_empty() {
        return Ok(None);
    }
    let kernel_i64: Vec<Vec<i64>> = kernel.iter().map(|v| to_i64_vec(v)).collect::<Result<_>>()?;
    let constants: Vec<FactoredRational> =
        fb.constants.iter().map(FactoredRational::factor).collect::<Result<_>>()?;
    let deltas: Vec<FactoredRational> = kernel_i64
        .iter()
        .map(|k| FactoredRational::power_product(&constants, k))
        .collect();

    // Integer relations ∏ δⱼ^{zⱼ} = ∏ gₗ^{cₗ}, signs included.
    let s = deltas.len();
    let universe = Universe::new(&deltas, gamma.support());
    let d = universe.matrix(&deltas);
    let g = gamma.exponent_matrix(universe.primes());
    let neg_g = IntMatrix::from_rows(
        g.cols(),
        (0..g.rows()).map(|i| g.row(i).iter().map(|x| -x).collect()).collect(),
    );
    let m = d.hstack(&neg_g);
    let signs: Vec<BigInt> = deltas
        .iter()
        .map(|x| x.is_negative())
        .chain(gamma.sign_row())
        .map(|b| BigInt::from(b as u8))
        .collect();
    let relations = integer_kernel(&m);
    let even = row_hnf(&even_sublattice(&relations, |v| dot(&signs, v).is_odd_int()), s + gamma.rank());
    let Some(row) = even.iter().find(|v| v[..s].iter().any(|x| !x.is_zero())) else {
        return Ok(None);
    };
    let z = to_i64_vec(&row[..s])?;
    let c = to_i64_vec(&row[s..])?;
    let mut k = vec![0i64; n];
    for (zj, kj) in z.iter().zip(&kernel_i64) {
        for (ki, x) in k.iter_mut().zip(kj) {
            *ki += zj * x;
        }
    }
    let w = RelationWitness { k, eta: None, gamma_exponents: Some(c), m: Some(1) };
    Ok(Some(w.first_positive()))
}

/// `∏ fᵢ^{kᵢ}` as a numerator/denominator pair.
fn power_product(fs: &[RationalFunction], k: &[i64]) -> (Poly, Poly) {
    let mut num = Poly::one();
    let mut den = Poly::one();
    for (f, &e) in fs.iter().zip(k) {
        let (a, b) = if e >= 0 { (&f.num, &f.den) } else { (&f.den, &f.num) };
        let e = e.unsigned_abs() as u32;
        num = &num * &a.pow(e);
        den = &den * &b.pow(e);
    }
    (num, den)
}

/// Re-checks an [`rf_independence_mod_gamma`] witness by polynomial
/// arithmetic: the product must be the constant `∏ gⱼ^{cⱼ}`.
pub fn verify_rf_witness(fs: &[RationalFunction], gamma: &GroupSpec, w: &RelationWitness) -> bool {
    if w.k.len() != fs.len() || w.k.iter().all(|&x| x == 0) {
        return false;
    }
    let Some(c) = &w.gamma_exponents else { return false };
    if c.len() != gamma.rank() || w.m != Some(1) {
        return false;
    }
    let value = gamma.element(c).to_rational();
    let (num, den) = power_product(fs, &w.k);
    num == den.scale(&value)
}

/// Outcome of [`lf_generation_check`]: `f₁^{k₁} f₂^{k₂} = c · ℓ^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LfRelation {
    pub k: Vec<i64>,
    /// Numerator and denominator of ℓ; both `1` in the constant case.
    pub numerator: Poly,
    pub denominator: Poly,
    pub t: i64,
    pub description: String,
}

/// Decides whether `f₁, f₂` multiplicatively generate a power of a linear
/// fractional function (constants included).
pub fn lf_generation_check(f1: &Poly, f2: &Poly) -> Result<Option<LfRelation>> {
    if f1.is_constant() || f2.is_constant() {
        return Err(Error::invalid("lf_generation_check needs nonconstant polynomials"));
    }
    let cb = coprime_basis(&[f1.clone(), f2.clone()])?;
    let b = cb.basis.len();
    let linear: Vec<usize> = (0..b).filter(|&j| cb.basis[j].degree() == Some(1)).collect();
    let column = |j: usize| vec![cb.exponents[0][j], cb.exponents[1][j]];

    let mut supports: Vec<Vec<usize>> = vec![vec![]];
    supports.extend(linear.iter().map(|&j| vec![j]));
    for (x, &i) in linear.iter().enumerate() {
        for &j in &linear[x + 1..] {
            supports.push(vec![i, j]);
        }
    }

    let mut best: Option<Vec<i64>> = None;
    for support in &supports {
        let mut rows: Vec<Vec<i64>> =
            (0..b).filter(|j| !support.contains(j)).map(column).collect();
        if let [i, j] = support[..] {
            let (ci, cj) = (column(i), column(j));
            rows.push(vec![ci[0] + cj[0], ci[1] + cj[1]]);
        }
        let kernel = integer_kernel(&IntMatrix::from_i64_rows(2, &rows));
        let candidates: Vec<Vec<i64>> = match kernel.len() {
            0 => continue,
            1 => vec![to_i64_vec(&kernel[0])?],
            _ => vec![vec![1, 0], vec![0, 1]],
        };
        for k in candidates {
            let size = |v: &[i64]| v.iter().map(|x| x.abs()).sum::<i64>();
            if best.as_ref().is_none_or(|cur| size(&k) < size(cur)) {
                best = Some(k);
            }
        }
    }
    let Some(k) = best else { return Ok(None) };
    let k = if k.iter().rev().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        k.iter().map(|x| -x).collect()
    } else {
        k
    };

    let v: Vec<i64> = (0..b).map(|j| k[0] * cb.exponents[0][j] + k[1] * cb.exponents[1][j]).collect();
    let positive: Vec<usize> = (0..b).filter(|&j| v[j] > 0).collect();
    let negative: Vec<usize> = (0..b).filter(|&j| v[j] < 0).collect();
    let (numerator, denominator, t) = match (&positive[..], &negative[..]) {
        ([], []) => (Poly::one(), Poly::one(), 0),
        ([p], []) => (cb.basis[*p].clone(), Poly::one(), v[*p]),
        ([], [q]) => (Poly::one(), cb.basis[*q].clone(), -v[*q]),
        ([p], [q]) => (cb.basis[*p].clone(), cb.basis[*q].clone(), v[*p]),
        _ => unreachable!("candidate supports have at most two points"),
    };
    let description = match t {
        0 => "constant".to_string(),
        _ => {
            let ell = RationalFunction { num: numerator.clone(), den: denominator.clone() };
            let ell = if denominator == Poly::one() {
                format!("{}", numerator)
            } else if numerator == Poly::one() {
                format!("1/({})", denominator)
            } else {
                format!("{ell}")
            };
            if t == 1 { ell } else { format!("({ell})^{t}") }
        }
    };
    Ok(Some(LfRelation { k, numerator, denominator, t, description }))
}
