use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{serde_q, Rational};

/// `f = unit · ∏ partᵢ^{multᵢ}` with monic, squarefree, pairwise coprime
/// parts and strictly increasing multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquarefreeDecomposition {
    #[serde(with = "serde_q")]
    pub unit: Rational,
    pub parts: Vec<(Poly, u32)>,
}

impl SquarefreeDecomposition {
    /// Product of the parts, monic.
    pub fn monic_radical(&self) -> Poly {
        self.parts.iter().fold(Poly::one(), |acc, (p, _)| &acc * p)
    }

    /// `f* = a₀ · ∏ (X − αᵢ)` over the distinct roots, i.e. the leading
    /// coefficient times the monic radical.
    pub fn radical(&self) -> Poly {
        self.monic_radical().scale(&self.unit)
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_root_count(&self) -> usize {
        self.parts.iter().map(|(p, _)| p.degree().unwrap_or(0)).sum()
    }

    pub fn reconstruct(&self) -> Poly {
        self.parts
            .iter()
            .fold(Poly::constant(self.unit.clone()), |acc, (p, e)| &acc * &p.pow(*e))
    }
}

/// Yun's squarefree decomposition (characteristic zero).
pub fn squarefree_decompose(f: &Poly) -> Result<SquarefreeDecomposition> {
    let unit = match f.degree() {
        Some(d) if d >= 1 => f.leading().unwrap().clone(),
        _ => return Err(Error::invalid("squarefree decomposition needs a nonconstant polynomial")),
    };
    let f = f.monic();
    let df = f.derivative();
    let g = f.gcd(&df);
    let mut b = f.div_exact(&g).expect("gcd divides f");
    let c = df.div_exact(&g).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut parts = Vec::new();
    let mut mult = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            parts.push((a.clone(), mult));
        }
        b = b.div_exact(&a).expect("gcd divides b");
        let c = d.div_exact(&a).expect("gcd divides d");
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(SquarefreeDecomposition { unit, parts })
}
