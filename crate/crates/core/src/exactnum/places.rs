use num_bigint::{BigInt, BigUint};
use num_prime::nt_funcs::is_prime;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Serialize, Serializer};

use super::factored::FactoredRational;
use super::rational::Rational;
use crate::error::{Error, Result};

/// A finite set of places of the rationals: the archimedean place, which is
/// always present, plus finitely many primes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlaceSet {
    finite_primes: Vec<BigUint>,
}

impl PlaceSet {
    /// Just the archimedean place.
    pub fn archimedean() -> Self {
        PlaceSet::default()
    }

    pub fn new(primes: impl IntoIterator<Item = BigUint>) -> Result<Self> {
        let set = Self::from_primes_unchecked(primes);
        for p in &set.finite_primes {
            if !is_prime(p, None).probably() {
                return Err(Error::invalid(format!("{p} is not prime")));
            }
        }
        Ok(set)
    }

    pub fn from_u64s(primes: &[u64]) -> Result<Self> {
        Self::new(primes.iter().map(|&p| BigUint::from(p)))
    }

    pub(crate) fn from_primes_unchecked(primes: impl IntoIterator<Item = BigUint>) -> Self {
        let mut finite_primes: Vec<BigUint> = primes.into_iter().collect();
        finite_primes.sort();
        finite_primes.dedup();
        PlaceSet { finite_primes }
    }

    pub fn finite_primes(&self) -> &[BigUint] {
        &self.finite_primes
    }

    /// Number of finite primes.
    pub fn t(&self) -> usize {
        self.finite_primes.len()
    }

    /// Total number of places, `1 + t`.
    pub fn s(&self) -> usize {
        1 + self.t()
    }

    pub fn contains(&self, p: &BigUint) -> bool {
        self.finite_primes.binary_search(p).is_ok()
    }

    pub fn union(&self, other: &PlaceSet) -> PlaceSet {
        Self::from_primes_unchecked(self.finite_primes.iter().chain(&other.finite_primes).cloned())
    }

    pub fn is_superset(&self, other: &PlaceSet) -> bool {
        other.finite_primes.iter().all(|p| self.contains(p))
    }

    /// Nonnegative valuation at every prime outside the set.
    pub fn is_s_integer(&self, x: &FactoredRational) -> bool {
        x.exponents().iter().all(|(p, &e)| e >= 0 || self.contains(p))
    }

    /// Zero valuation at every prime outside the set.
    pub fn is_s_unit(&self, x: &FactoredRational) -> bool {
        x.support().all(|p| self.contains(p))
    }
}

impl Serialize for PlaceSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.finite_primes.len()))?;
        for p in &self.finite_primes {
            match p.to_u64() {
                Some(small) => seq.serialize_element(&small)?,
                None => seq.serialize_element(&p.to_string())?,
            }
        }
        seq.end()
    }
}

/// `N_S(b) = ∏_{v∈S} |b|_v = |b| · ∏_{p∈S} p^{-v_p(b)}`.
pub fn s_norm(b: &FactoredRational, places: &PlaceSet) -> Rational {
    let mut value = b.to_rational().abs();
    for p in places.finite_primes() {
        let e = b.valuation(p);
        if e != 0 {
            let power = Rational::from_integer(BigInt::from(p.pow(e.unsigned_abs() as u32)));
            if e > 0 {
                value /= power;
            } else {
                value *= power;
            }
        }
    }
    value
}

/// `(P_S, Q_S)`: the largest finite prime and the product of all finite
/// primes, both `1` when the set is purely archimedean.
pub fn p_s_q_s(places: &PlaceSet) -> (BigUint, BigUint) {
    let p_s = places.finite_primes().last().cloned().unwrap_or_else(BigUint::one);
    let q_s = places.finite_primes().iter().product();
    (p_s, q_s)
}
