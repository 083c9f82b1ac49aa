use std::cmp::Ordering;

use serde::Serialize;

use super::poly::Poly;
use super::squarefree::squarefree_decompose;
use crate::error::{Error, Result};
use crate::exactnum::{serde_q, Rational};

/// A gcd-free basis: `fᵢ = contentsᵢ · ∏ⱼ basisⱼ^{exponents[i][j]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeBasis {
    /// Monic, squarefree, pairwise coprime, nonconstant.
    pub basis: Vec<Poly>,
    pub exponents: Vec<Vec<i64>>,
    #[serde(with = "serde_q::vec")]
    pub contents: Vec<Rational>,
}

impl CoprimeBasis {
    pub fn reconstruct(&self, i: usize) -> Poly {
        self.basis
            .iter()
            .zip(&self.exponents[i])
            .fold(Poly::constant(self.contents[i].clone()), |acc, (b, &e)| {
                &acc * &b.pow(e as u32)
            })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.degree().unwrap()).collect()
    }
}

/// Refines the squarefree parts of every input by pairwise gcd splitting
/// until the pool is pairwise coprime. No irreducible factorization is used.
///
/// Basis order: by the first input each element divides, then degree, then
/// descending coefficients.
pub fn coprime_basis(fs: &[Poly]) -> Result<CoprimeBasis> {
    if fs.iter().any(Poly::is_zero) {
        return Err(Error::invalid("coprime basis of a zero polynomial"));
    }
    let mut pool: Vec<Poly> = Vec::new();
    for f in fs.iter().filter(|f| !f.is_constant()) {
        for (part, _) in squarefree_decompose(f)?.parts {
            pool.push(part);
        }
    }
    'refine: loop {
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                let g = pool[i].gcd(&pool[j]);
                if g.is_constant() {
                    continue;
                }
                let a = pool[i].div_exact(&g).unwrap();
                let b = pool[j].div_exact(&g).unwrap();
                pool.remove(j);
                pool.remove(i);
                pool.extend([g, a, b].into_iter().filter(|p| !p.is_constant()));
                continue 'refine;
            }
        }
        break;
    }

    let first_divided = |b: &Poly| fs.iter().position(|f| b.divides(f)).unwrap_or(usize::MAX);
    pool.sort_by(|a, b| {
        first_divided(a)
            .cmp(&first_divided(b))
            .then(a.degree().cmp(&b.degree()))
            .then_with(|| cmp_descending(a, b))
    });

    let mut exponents = Vec::with_capacity(fs.len());
    let mut contents = Vec::with_capacity(fs.len());
    for f in fs {
        let mut rest = f.clone();
        let mut row = Vec::with_capacity(pool.len());
        for b in &pool {
            let mut e = 0i64;
            while let Some(q) = rest.div_exact(b) {
                rest = q;
                e += 1;
            }
            row.push(e);
        }
        debug_assert!(rest.is_constant());
        contents.push(rest.leading().cloned().expect("nonzero content"));
        exponents.push(row);
    }
    Ok(CoprimeBasis { basis: pool, exponents, contents })
}

fn cmp_descending(a: &Poly, b: &Poly) -> Ordering {
    a.descending().cmp(&b.descending())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn direct_split() {
        let cb = coprime_basis(&[p(&[1, 0, -1]), p(&[1, -1])]).unwrap();
        assert_eq!(cb.basis, vec![p(&[1, -1]), p(&[1, 1])]);
        assert_eq!(cb.exponents, vec![vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn common_support() {
        let cb = coprime_basis(&[p(&[1, 0, 0]), p(&[1, 0, 0, 0])]).unwrap();
        assert_eq!(cb.basis, vec![Poly::x()]);
        assert_eq!(cb.exponents, vec![vec![2], vec![3]]);
    }

    #[test]
    fn coprime_pair_split() {
        let cb = coprime_basis(&[p(&[1, 0, -1]), p(&[1, 0, -4])]).unwrap();
        // The pair is already coprime, so the basis keeps the two quadratics.
        assert_eq!(cb.basis, vec![p(&[1, 0, -1]), p(&[1, 0, -4])]);
        assert_eq!(cb.exponents, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn contents_and_reconstruction() {
        let f1 = &p(&[3, 3]) * &p(&[1, 0]).pow(2);
        let f2 = p(&[2, 4, 2]).scale(&rat(1, 5));
        let f3 = p(&[7]);
        let cb = coprime_basis(&[f1.clone(), f2.clone(), f3.clone()]).unwrap();
        assert_eq!(cb.contents, vec![rat(3, 1), rat(2, 5), rat(7, 1)]);
        for (i, f) in [f1, f2, f3].iter().enumerate() {
            assert_eq!(&cb.reconstruct(i), f);
        }
        assert!(coprime_basis(&[Poly::zero()]).is_err());
    }
}
