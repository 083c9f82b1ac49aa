use serde::Serialize;

use crate::error::{Error, Result};
use crate::mulrel::{integer_kernel_i64, RationalFunction};
use crate::polyrat::Poly;

/// Integer solutions of `k₁d₁ + … + kₙdₙ = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentBasis {
    pub degrees: Vec<u64>,
    pub basis: Vec<Vec<i64>>,
}

impl ExponentBasis {
    /// `F = ∏ fⱼ^{t₁ⱼ}` for the first basis vector, or `None` when the
    /// basis is empty.
    pub fn first_function(&self, polys: &[Poly]) -> Result<Option<RationalFunction>> {
        if polys.len() != self.degrees.len() {
            return Err(Error::invalid(format!(
                "{} polynomials given for {} degrees",
                polys.len(),
                self.degrees.len()
            )));
        }
        let Some(t) = self.basis.first() else { return Ok(None) };
        let mut num = Poly::one();
        let mut den = Poly::one();
        for (f, &e) in polys.iter().zip(t) {
            let power = f.pow(e.unsigned_abs() as u32);
            if e >= 0 {
                num = &num * &power;
            } else {
                den = &den * &power;
            }
        }
        RationalFunction::new(num, den).map(Some)
    }
}

pub fn diophantine_exponent_basis(degrees: &[u64]) -> Result<ExponentBasis> {
    if degrees.is_empty() {
        return Err(Error::invalid("at least one degree is required"));
    }
    if degrees.contains(&0) {
        return Err(Error::invalid("degrees must be positive"));
    }
    let row: Vec<i64> = degrees
        .iter()
        .map(|&d| i64::try_from(d).map_err(|_| Error::invalid(format!("degree {d} is too large"))))
        .collect::<Result<_>>()?;
    let basis = integer_kernel_i64(degrees.len(), &[row])?;
    Ok(ExponentBasis { degrees: degrees.to_vec(), basis })
}
