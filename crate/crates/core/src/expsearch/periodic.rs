use std::collections::HashSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{serde_q, HeightValue, Rational};
use crate::polyrat::{poly_heights, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Periodicity {
    #[serde(rename = "PERIODIC")]
    Periodic,
    #[serde(rename = "NOT_PERIODIC")]
    NotPeriodic,
    #[serde(rename = "UNDECIDED")]
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicityReport {
    pub verdict: Periodicity,
    pub reason: String,
    /// `0, f(0), f⁽²⁾(0), …` as far as iterated.
    #[serde(with = "serde_q::vec")]
    pub orbit: Vec<Rational>,
    pub escape_threshold: f64,
}

/// Number of consecutive height increases above the threshold that count
/// as escape to infinity.
const ESCAPE_STEPS: usize = 3;

/// Whether 0 is a periodic point of `f`: exact cycle detection plus a
/// height-escape criterion.
pub fn check_zero_periodicity(f: &Poly, step_cap: usize) -> Result<PeriodicityReport> {
    if step_cap < 1 {
        return Err(Error::invalid("step_cap must be at least 1"));
    }
    if f.is_zero() {
        return Err(Error::invalid("f must be nonzero"));
    }
    let deg = f.degree().unwrap_or(0) as f64;
    let threshold = 2.0 * deg * (poly_heights(f)?.h.value + 1.0) + 10.0;
    let mut orbit = vec![Rational::zero()];
    let mut seen: HashSet<Rational> = orbit.iter().cloned().collect();
    let mut z = Rational::zero();
    let mut last_height = 0.0;
    let mut rising = 0;
    let done = |verdict, reason: String, orbit| PeriodicityReport { verdict, reason, orbit, escape_threshold: threshold };
    for step in 1..=step_cap {
        z = f.eval(&z);
        if z.is_zero() {
            orbit.push(z);
            return Ok(done(Periodicity::Periodic, format!("f^({step})(0) = 0"), orbit));
        }
        if !seen.insert(z.clone()) {
            orbit.push(z);
            return Ok(done(
                Periodicity::NotPeriodic,
                format!("the orbit repeats at step {step} without returning to 0"),
                orbit,
            ));
        }
        let h = HeightValue::of_rational(&z).value;
        rising = if h > threshold && h > last_height { rising + 1 } else { 0 };
        last_height = h;
        orbit.push(z.clone());
        if rising >= ESCAPE_STEPS {
            return Ok(done(
                Periodicity::NotPeriodic,
                format!("heights grew above {threshold:.3} for {ESCAPE_STEPS} consecutive steps"),
                orbit,
            ));
        }
    }
    Ok(done(Periodicity::Undecided, format!("no decision within {step_cap} steps"), orbit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let r = check_zero_periodicity(&Poly::from_i64s(&[1, 0, -1]), 50).unwrap();
        assert_eq!(r.verdict, Periodicity::Periodic);
        assert_eq!(r.orbit.len(), 3);
        let r = check_zero_periodicity(&Poly::from_i64s(&[1, 0, 1]), 50).unwrap();
        assert_eq!(r.verdict, Periodicity::NotPeriodic);
        assert_eq!(r.orbit[..5].iter().map(|x| x.to_string()).collect::<Vec<_>>(), ["0", "1", "2", "5", "26"]);
        assert_eq!(check_zero_periodicity(&Poly::x(), 5).unwrap().verdict, Periodicity::Periodic);
        assert_eq!(check_zero_periodicity(&Poly::from_i64s(&[1, 0, 0]), 5).unwrap().verdict, Periodicity::Periodic);
    }

    #[test]
    fn preperiodic_and_undecided() {
        // 0 → 2 → 2.
        let f = Poly::from_i64s(&[1, -2, 2]);
        let r = check_zero_periodicity(&f, 10).unwrap();
        assert_eq!(r.verdict, Periodicity::NotPeriodic);
        let r = check_zero_periodicity(&Poly::from_i64s(&[1, 0, 1]), 2).unwrap();
        assert_eq!(r.verdict, Periodicity::Undecided);
    }
}
