use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Sylvester resultant via the subresultant pseudo-remainder sequence.
///
/// Nonzero constants are allowed: `Res(c, g) = c^{deg g}`.
pub fn resultant(f: &Poly, g: &Poly) -> Result<Rational> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::invalid("resultant of the zero polynomial"));
    }
    Ok(subresultant(f, g))
}

fn subresultant(f: &Poly, g: &Poly) -> Rational {
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = Rational::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let db = b.degree().unwrap();
    if db == 0 {
        let da = a.degree().unwrap();
        return sign * num_traits::pow(b.leading().unwrap().clone(), da);
    }
    let mut g_acc = Rational::one();
    let mut h_acc = Rational::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let r = a.prem(&b);
        if r.is_zero() {
            return Rational::zero();
        }
        a = b;
        let divisor = &g_acc * num_traits::pow(h_acc.clone(), delta);
        b = r.scale(&divisor.recip());
        g_acc = a.leading().unwrap().clone();
        h_acc = rpow(&h_acc, 1 - delta as i64) * num_traits::pow(g_acc.clone(), delta);
        if b.degree().unwrap() == 0 {
            let da = a.degree().unwrap();
            let h = rpow(&h_acc, 1 - da as i64) * num_traits::pow(b.leading().unwrap().clone(), da);
            return sign * h;
        }
    }
}

fn rpow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

/// `D(f) = (−1)^{n(n−1)/2} Res(f, f′) / a₀`.
pub fn discriminant(f: &Poly) -> Result<Rational> {
    let n = f.degree().unwrap_or(0);
    if n < 2 {
        return Err(Error::invalid("discriminant needs degree at least 2"));
    }
    let res = subresultant(f, &f.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 1 { -Rational::one() } else { Rational::one() };
    Ok(sign * res / f.leading().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    /// Oracle: `Res(f, g) = lc(f)^{deg g} ∏ g(αᵢ)` for `f` split over ℚ with
    /// the given roots.
    fn split_oracle(lc: Rational, roots: &[Rational], g: &Poly) -> Rational {
        let dg = g.degree().unwrap();
        roots.iter().fold(num_traits::pow(lc, dg), |acc, r| acc * g.eval(r))
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p(&[1, -1]), &p(&[1, -2])).unwrap(), rat(-1, 1));
        assert_eq!(resultant(&p(&[1, 0, -1]), &p(&[1, 0, -4])).unwrap(), rat(9, 1));
        assert_eq!(resultant(&p(&[1, 0]), &p(&[1, 0])).unwrap(), rat(0, 1));
        assert!(resultant(&Poly::zero(), &p(&[1])).is_err());
    }

    #[test]
    fn resultant_against_split_oracle() {
        let roots = [rat(1, 2), rat(-3, 1), rat(2, 5)];
        let f = roots
            .iter()
            .fold(Poly::constant(rat(3, 1)), |acc, r| &acc * &Poly::linear_root(r.clone()));
        for g in [p(&[2, 0, 1, 7]), p(&[1, -1]), p(&[5]), p(&[1, 3, 0, 0, -2])] {
            let expected = split_oracle(rat(3, 1), &roots, &g);
            assert_eq!(resultant(&f, &g).unwrap(), expected, "g = {g}");
            // Res(g, f) = (−1)^{deg f deg g} Res(f, g)
            let sign = if (3 * g.degree().unwrap()) % 2 == 1 { -1 } else { 1 };
            assert_eq!(resultant(&g, &f).unwrap(), expected * rat(sign, 1));
        }
    }

    #[test]
    fn constants() {
        assert_eq!(resultant(&p(&[3]), &p(&[1, 0, 1])).unwrap(), rat(9, 1));
        assert_eq!(resultant(&p(&[1, 0, 1]), &p(&[3])).unwrap(), rat(9, 1));
        assert_eq!(resultant(&p(&[3]), &p(&[4])).unwrap(), rat(1, 1));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, 0, 7])).unwrap(), rat(-28, 1));
        assert_eq!(discriminant(&p(&[1, -2, 1])).unwrap(), rat(0, 1));
        assert_eq!(discriminant(&p(&[1, 0, -1])).unwrap(), rat(4, 1));
        // cubic X^3 + aX + b: −4a^3 − 27b^2
        assert_eq!(discriminant(&p(&[1, 0, 2, 3])).unwrap(), rat(-4 * 8 - 27 * 9, 1));
        // 2X^2 + 3X + 5: b^2 − 4ac
        assert_eq!(discriminant(&p(&[2, 3, 5])).unwrap(), rat(9 - 40, 1));
        assert!(discriminant(&p(&[1, 1])).is_err());
    }
}
