use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::height::HeightBound;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Default refusal threshold for [`enumerate_bounded_height`].
pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// `#{x ∈ ℚ* : max(|p|, |q|) ≤ n}`, which is `2 (2 Σ_{k≤n} φ(k) − 1)`.
pub fn count_bounded_height(n: u64) -> u128 {
    if n == 0 {
        return 0;
    }
    let n = n as usize;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            let mut j = i;
            while j <= n {
                phi[j] -= phi[j] / i as u64;
                j += i;
            }
        }
    }
    let sum: u128 = phi[1..].iter().map(|&v| v as u128).sum();
    2 * (2 * sum - 1)
}

/// All nonzero rationals of height at most `bound`, in canonical order.
pub fn enumerate_bounded_height(bound: &HeightBound) -> Result<Vec<Rational>> {
    enumerate_bounded_height_with_cap(bound, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_bounded_height_with_cap(bound: &HeightBound, cap: usize) -> Result<Vec<Rational>> {
    let limit = checked_limit(&bound.cap(), cap)?;
    let count = count_bounded_height(limit);
    if count > cap as u128 {
        return Err(Error::resource(format!(
            "A(Q, {bound}) has {count} elements, above the enumeration cap {cap}"
        )));
    }
    let mut out = Vec::with_capacity(count as usize);
    for m in 1..=limit {
        // Height exactly log m: first p/m with p < m, then m/q with q ≤ m.
        for p in 1..m {
            if p.gcd(&m) == 1 {
                push_pair(&mut out, p, m);
            }
        }
        for q in 1..=m {
            if q.gcd(&m) == 1 {
                push_pair(&mut out, m, q);
            }
        }
    }
    Ok(out)
}

fn push_pair(out: &mut Vec<Rational>, p: u64, q: u64) {
    let x = Rational::new_raw(BigInt::from(p), BigInt::from(q));
    out.push(x.clone());
    out.push(-x);
}

/// Converts an integer height cap to `u64`, refusing when even the trivial
/// lower bound `2n` on the count already exceeds the cap.
pub(crate) fn checked_limit(n: &BigUint, cap: usize) -> Result<u64> {
    match n.to_u64() {
        Some(v) if (v as u128) * 2 <= cap as u128 => Ok(v),
        _ => Err(Error::resource(format!(
            "height cap {n} is too large for enumeration (cap {cap} elements)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{canonical_cmp, format_rational, height, rat};

    fn names(xs: &[Rational]) -> Vec<String> {
        xs.iter().map(format_rational).collect()
    }

    #[test]
    fn small_balls() {
        let b = HeightBound::log_of(2u32).unwrap();
        let xs = enumerate_bounded_height(&b).unwrap();
        assert_eq!(names(&xs), ["1", "-1", "1/2", "-1/2", "2", "-2"]);

        let xs = enumerate_bounded_height(&HeightBound::zero()).unwrap();
        assert_eq!(names(&xs), ["1", "-1"]);
    }

    #[test]
    fn log3_ball_matches_exhaustive_pairs() {
        // Oracle: every pair (p, q) with 1 ≤ p, q ≤ 3, reduced and deduplicated.
        let mut oracle = Vec::new();
        for p in 1..=3i64 {
            for q in 1..=3i64 {
                for s in [1, -1] {
                    let x = rat(s * p, q);
                    if !oracle.contains(&x) {
                        oracle.push(x);
                    }
                }
            }
        }
        assert_eq!(oracle.len(), 14);
        oracle.sort_by(canonical_cmp);
        let xs = enumerate_bounded_height(&HeightBound::log_of(3u32).unwrap()).unwrap();
        assert_eq!(xs, oracle);
        assert_eq!(count_bounded_height(3), 14);
    }

    #[test]
    fn order_is_canonical_and_heights_bounded() {
        let b = HeightBound::real(2.5).unwrap();
        let xs = enumerate_bounded_height(&b).unwrap();
        assert_eq!(xs.len() as u128, count_bounded_height(12));
        for w in xs.windows(2) {
            assert_eq!(canonical_cmp(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
        assert!(xs.iter().all(|x| height(x).unwrap().value <= 2.5));
    }

    #[test]
    fn refuses_above_cap() {
        let b = HeightBound::log_of(100u32).unwrap();
        let err = enumerate_bounded_height_with_cap(&b, 1000).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        let huge = HeightBound::real(1000.0).unwrap();
        assert!(matches!(enumerate_bounded_height(&huge), Err(Error::Resource(_))));
    }
}
