use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{factor_natural, HeightValue, Rational};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyHeights {
    /// Height of `[1, a₀, …, aₙ]`.
    pub h: HeightValue,
    /// Height of `[a₀, …, aₙ]`.
    pub h_hom: HeightValue,
}

/// Height of a projective point with rational coordinates: scale to a
/// coprime integer vector and take the log of its largest entry.
fn projective_height<'a>(coords: impl Iterator<Item = &'a Rational> + Clone) -> HeightValue {
    let l = coords.clone().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coords.map(|c| (c * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let max = ints
        .iter()
        .map(|v| (v / &g).abs())
        .max()
        .unwrap_or_else(BigInt::one);
    HeightValue::log_of(max.magnitude().clone())
}

pub fn poly_heights(f: &Poly) -> Result<PolyHeights> {
    if f.is_zero() {
        return Err(Error::invalid("height of the zero polynomial"));
    }
    let one = Rational::one();
    let coeffs = f.ascending();
    let h = projective_height(std::iter::once(&one).chain(coeffs.iter()));
    let h_hom = projective_height(coeffs.iter());
    Ok(PolyHeights { h, h_hom })
}

/// Primes `p` with `v_p(aᵢ) < 0` for some coefficient or `v_p(a₀) > 0` for
/// the leading coefficient, sorted.
pub fn bad_reduction_primes(f: &Poly) -> Result<Vec<BigUint>> {
    let lc = f
        .leading()
        .ok_or_else(|| Error::invalid("reduction of the zero polynomial"))?;
    let mut primes = BTreeSet::new();
    for c in f.ascending() {
        primes.extend(factor_natural(c.denom().magnitude()).into_keys());
    }
    primes.extend(factor_natural(lc.numer().magnitude()).into_keys());
    Ok(primes.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn heights_examples() {
        let h = poly_heights(&Poly::from_i64s(&[2, 0, 3])).unwrap();
        assert_eq!(h.h.log_of, Some(BigUint::from(3u32)));
        assert_eq!(h.h_hom.log_of, Some(BigUint::from(3u32)));

        let f = Poly::from_descending(vec![rat(1, 2), rat(1, 1)]);
        let h = poly_heights(&f).unwrap();
        assert_eq!(h.h.log_of, Some(BigUint::from(2u32)));
        assert_eq!(h.h_hom.log_of, Some(BigUint::from(2u32)));

        let h = poly_heights(&Poly::x()).unwrap();
        assert_eq!(h.h.value, 0.0);
        assert_eq!(h.h_hom.value, 0.0);

        // [2, 4] is projectively [1, 2] but [1, 2, 4] stays as is.
        let h = poly_heights(&Poly::from_i64s(&[2, 4])).unwrap();
        assert_eq!(h.h_hom.log_of, Some(BigUint::from(2u32)));
        assert_eq!(h.h.log_of, Some(BigUint::from(4u32)));

        assert!(poly_heights(&Poly::zero()).is_err());
    }

    #[test]
    fn bad_reduction_examples() {
        let n = |v: u64| BigUint::from(v);
        let f = Poly::from_descending(vec![rat(1, 3), rat(0, 1), rat(2, 1)]);
        assert_eq!(bad_reduction_primes(&f).unwrap(), vec![n(3)]);
        assert_eq!(bad_reduction_primes(&Poly::from_i64s(&[3, 0, 2])).unwrap(), vec![n(3)]);
        assert!(bad_reduction_primes(&Poly::from_i64s(&[1, 0, 1])).unwrap().is_empty());
        let g = Poly::from_descending(vec![rat(10, 7), rat(1, 2)]);
        assert_eq!(bad_reduction_primes(&g).unwrap(), vec![n(2), n(5), n(7)]);
        assert!(bad_reduction_primes(&Poly::zero()).is_err());
    }
}
