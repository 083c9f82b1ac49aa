use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use super::lattice::{dot, IntMatrix};
use crate::error::Result;
use crate::exactnum::height_integer;
use crate::exactnum::{format_rational, parse_rational, FactoredRational, HeightValue, Rational};

/// A finitely generated subgroup of ℚ* given by explicit generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    generators: Vec<FactoredRational>,
    support: Vec<BigUint>,
}

impl GroupSpec {
    pub fn new(generators: Vec<FactoredRational>) -> Self {
        let support: BTreeSet<BigUint> =
            generators.iter().flat_map(|g| g.support().cloned()).collect();
        GroupSpec { generators, support: support.into_iter().collect() }
    }

    pub fn from_rationals(gens: &[Rational]) -> Result<Self> {
        Ok(Self::new(gens.iter().map(FactoredRational::factor).collect::<Result<_>>()?))
    }

    pub fn parse<S: AsRef<str>>(gens: &[S]) -> Result<Self> {
        let gens: Vec<Rational> =
            gens.iter().map(|g| parse_rational(g.as_ref())).collect::<Result<_>>()?;
        Self::from_rationals(&gens)
    }

    /// The trivial group `⟨1⟩`.
    pub fn trivial() -> Self {
        Self::new(vec![FactoredRational::one()])
    }

    pub fn generators(&self) -> &[FactoredRational] {
        &self.generators
    }

    pub fn support(&self) -> &[BigUint] {
        &self.support
    }

    /// Number of given generators.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Largest `max(|p|, |q|)` over the generators; its log is `H_gen`.
    pub fn height_integer(&self) -> BigUint {
        self.generators
            .iter()
            .map(|g| height_integer(&g.to_rational()))
            .max()
            .unwrap_or_else(BigUint::one)
    }

    pub fn h_gen(&self) -> HeightValue {
        HeightValue::log_of(self.height_integer())
    }

    /// Exponent matrix over `universe` (rows) by generators (columns).
    pub fn exponent_matrix(&self, universe: &[BigUint]) -> IntMatrix {
        let rows = universe
            .iter()
            .map(|p| self.generators.iter().map(|g| BigInt::from(g.valuation(p))).collect())
            .collect();
        IntMatrix::from_rows(self.rank(), rows)
    }

    pub fn sign_row(&self) -> Vec<bool> {
        self.generators.iter().map(|g| g.is_negative()).collect()
    }

    pub fn element(&self, c: &[i64]) -> FactoredRational {
        FactoredRational::power_product(&self.generators, c)
    }

    /// Whether `Σ cⱼ` over negative generators is odd.
    pub(crate) fn sign_parity(&self, c: &[BigInt]) -> bool {
        let sigma: Vec<BigInt> =
            self.sign_row().iter().map(|&s| BigInt::from(s as u8)).collect();
        dot(&sigma, c).is_odd_int()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> =
            self.generators.iter().map(|g| format_rational(&g.to_rational())).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gens: Vec<String> =
            self.generators.iter().map(|g| format_rational(&g.to_rational())).collect();
        gens.serialize(s)
    }
}

pub(crate) trait OddInt {
    fn is_odd_int(&self) -> bool;
}

impl OddInt for BigInt {
    fn is_odd_int(&self) -> bool {
        (self.abs() % 2u32).is_one()
    }
}

/// Sorted union of prime supports, used as the coordinate system for
/// exponent vectors.
#[derive(Clone, Debug)]
pub(crate) struct Universe {
    primes: Vec<BigUint>,
}

impl Universe {
    pub fn new<'a>(parts: impl IntoIterator<Item = &'a FactoredRational>, extra: &[BigUint]) -> Self {
        let mut set: BTreeSet<BigUint> = extra.iter().cloned().collect();
        for x in parts {
            set.extend(x.support().cloned());
        }
        Universe { primes: set.into_iter().collect() }
    }

    pub fn primes(&self) -> &[BigUint] {
        &self.primes
    }

    /// Exponent vector, or `None` when `x` has a prime outside the universe.
    pub fn vector(&self, x: &FactoredRational) -> Option<Vec<BigInt>> {
        if x.support().any(|p| self.primes.binary_search(p).is_err()) {
            return None;
        }
        Some(self.primes.iter().map(|p| BigInt::from(x.valuation(p))).collect())
    }

    /// Matrix with one column per element of `xs`.
    pub fn matrix(&self, xs: &[FactoredRational]) -> IntMatrix {
        let rows = self
            .primes
            .iter()
            .map(|p| xs.iter().map(|x| BigInt::from(x.valuation(p))).collect())
            .collect();
        IntMatrix::from_rows(xs.len(), rows)
    }
}
