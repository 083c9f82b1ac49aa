use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_prime::nt_funcs::{factorize, factorize64, is_prime};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::height::HeightValue;
use super::rational::{abs_biguint, format_rational, Rational};
use crate::error::{Error, Result};

/// A nonzero rational stored as a sign and a prime-exponent map.
///
/// No stored exponent is zero, so `1` is the positive sign with an empty map
/// and equality is equality of values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredRational {
    negative: bool,
    exponents: BTreeMap<BigUint, i64>,
}

/// Prime factorization of a positive integer. `1` factors as the empty map.
pub fn factor_natural(n: &BigUint) -> BTreeMap<BigUint, u64> {
    if n.is_zero() || n.is_one() {
        return BTreeMap::new();
    }
    if let Some(small) = n.to_u64() {
        return factorize64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e as u64))
            .collect();
    }
    factorize(n.clone())
        .into_iter()
        .map(|(p, e)| (p, e as u64))
        .collect()
}

/// Factors a nonzero rational.
pub fn factor(x: &Rational) -> Result<FactoredRational> {
    FactoredRational::factor(x)
}

impl FactoredRational {
    pub fn one() -> Self {
        FactoredRational { negative: false, exponents: BTreeMap::new() }
    }

    pub fn minus_one() -> Self {
        FactoredRational { negative: true, exponents: BTreeMap::new() }
    }

    pub fn factor(x: &Rational) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::invalid("zero has no factorization"));
        }
        let mut exponents = BTreeMap::new();
        for (p, e) in factor_natural(&abs_biguint(x.numer())) {
            exponents.insert(p, e as i64);
        }
        for (p, e) in factor_natural(&abs_biguint(x.denom())) {
            exponents.insert(p, -(e as i64));
        }
        Ok(FactoredRational { negative: x.is_negative(), exponents })
    }

    pub fn from_integer(n: &BigInt) -> Result<Self> {
        Self::factor(&Rational::from_integer(n.clone()))
    }

    pub fn from_i64(n: i64) -> Result<Self> {
        Self::from_integer(&BigInt::from(n))
    }

    /// Builds a value from explicit parts, checking that every key is prime.
    pub fn from_parts(negative: bool, exponents: BTreeMap<BigUint, i64>) -> Result<Self> {
        for p in exponents.keys() {
            if !is_prime(p, None).probably() {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
        }
        Ok(Self::from_parts_unchecked(negative, exponents))
    }

    pub(crate) fn from_parts_unchecked(negative: bool, mut exponents: BTreeMap<BigUint, i64>) -> Self {
        exponents.retain(|_, e| *e != 0);
        FactoredRational { negative, exponents }
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.exponents.is_empty()
    }

    /// True for `±1`.
    pub fn is_torsion(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<BigUint, i64> {
        &self.exponents
    }

    /// The p-adic valuation; zero for primes outside the support.
    pub fn valuation(&self, p: &BigUint) -> i64 {
        self.exponents.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &BigUint> {
        self.exponents.keys()
    }

    pub fn to_rational(&self) -> Rational {
        let mut numer = BigUint::one();
        let mut denom = BigUint::one();
        for (p, &e) in &self.exponents {
            let power = p.pow(e.unsigned_abs() as u32);
            if e > 0 {
                numer *= power;
            } else {
                denom *= power;
            }
        }
        let numer = if self.negative { -BigInt::from(numer) } else { BigInt::from(numer) };
        Rational::new(numer, BigInt::from(denom))
    }

    pub fn abs(&self) -> Self {
        FactoredRational { negative: false, exponents: self.exponents.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exponents = self.exponents.clone();
        for (p, &e) in &other.exponents {
            *exponents.entry(p.clone()).or_insert(0) += e;
        }
        Self::from_parts_unchecked(self.negative ^ other.negative, exponents)
    }

    pub fn inv(&self) -> Self {
        let exponents = self.exponents.iter().map(|(p, &e)| (p.clone(), -e)).collect();
        FactoredRational { negative: self.negative, exponents }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        let exponents = self.exponents.iter().map(|(p, &e)| (p.clone(), e * k)).collect();
        Self::from_parts_unchecked(self.negative && k % 2 != 0, exponents)
    }

    /// Power product `∏ xᵢ^{kᵢ}`.
    pub fn power_product(xs: &[FactoredRational], ks: &[i64]) -> Self {
        xs.iter()
            .zip(ks)
            .filter(|(_, &k)| k != 0)
            .fold(Self::one(), |acc, (x, &k)| acc.mul(&x.pow(k)))
    }

    pub fn height(&self) -> HeightValue {
        HeightValue::of_rational(&self.to_rational())
    }
}

impl fmt::Display for FactoredRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.to_rational()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn map(entries: &[(u64, i64)]) -> BTreeMap<BigUint, i64> {
        entries.iter().map(|&(p, e)| (BigUint::from(p), e)).collect()
    }

    #[test]
    fn factors_spec_examples() {
        let x = factor(&rat(12, 5)).unwrap();
        assert_eq!(x.sign(), 1);
        assert_eq!(x.exponents(), &map(&[(2, 2), (3, 1), (5, -1)]));

        let m = factor(&rat(-1, 1)).unwrap();
        assert_eq!(m.sign(), -1);
        assert!(m.exponents().is_empty());

        let one = factor(&rat(1, 1)).unwrap();
        assert!(one.is_one());
        assert_eq!(one, FactoredRational::one());
    }

    #[test]
    fn zero_is_rejected() {
        let err = factor(&rat(0, 1)).unwrap_err();
        assert_eq!(err, Error::invalid("zero has no factorization"));
    }

    #[test]
    fn large_factorization_round_trips() {
        // 2^31 - 1 and 2^107 - 1 are Mersenne primes; their product exceeds u128.
        let p = (BigUint::one() << 31u32) - 1u32;
        let q = (BigUint::one() << 107u32) - 1u32;
        let n = BigInt::from(&p * &q * 12u32);
        let f = FactoredRational::from_integer(&-n.clone()).unwrap();
        assert_eq!(f.valuation(&p), 1);
        assert_eq!(f.valuation(&q), 1);
        assert_eq!(f.valuation(&BigUint::from(2u32)), 2);
        assert_eq!(f.to_rational(), Rational::from_integer(-n));
    }

    #[test]
    fn group_operations() {
        let a = factor(&rat(-4, 9)).unwrap();
        let b = factor(&rat(3, 2)).unwrap();
        assert_eq!(a.mul(&b).to_rational(), rat(-2, 3));
        assert_eq!(a.pow(2).to_rational(), rat(16, 81));
        assert_eq!(a.pow(-1).to_rational(), rat(-9, 4));
        assert_eq!(a.pow(0), FactoredRational::one());
        assert_eq!(a.div(&a), FactoredRational::one());
        let pp = FactoredRational::power_product(&[a, b], &[1, 2]);
        assert_eq!(pp.to_rational(), rat(-1, 1));
    }

    #[test]
    fn from_parts_checks_primality() {
        assert!(FactoredRational::from_parts(false, map(&[(4, 1)])).is_err());
        let x = FactoredRational::from_parts(true, map(&[(7, -2), (3, 0)])).unwrap();
        assert_eq!(x.to_rational(), rat(-1, 49));
    }
}
