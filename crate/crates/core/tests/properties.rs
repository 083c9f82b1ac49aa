use std::collections::BTreeSet;

use muldep::exactnum::{
    enumerate_bounded_height, height, log_star, rat, s_norm, FactoredRational, HeightBound, PlaceSet, Rational,
};
use muldep::expsearch::{hyperelliptic_search, s_f_gamma_eps, InstanceSpec};
use muldep::mulrel::{
    dependence_absolute, dependence_mod_gamma_div, eps_membership_sandwich, gamma_div_membership,
    lf_generation_check, GroupLattice, GroupSpec,
};
use muldep::polyrat::{coprime_basis, discriminant, poly_heights, resultant, squarefree_decompose, Poly};
use muldep::stbound::{compute_constants, BoundInputs};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn nonzero(max: i64) -> impl Strategy<Value = i64> {
    (1..=max).prop_flat_map(|n| prop_oneof![Just(n), Just(-n)])
}

fn rational(max: i64) -> impl Strategy<Value = Rational> {
    (nonzero(max), 1..=max).prop_map(|(p, q)| rat(p, q))
}

fn poly(max_deg: usize, coeff: i64) -> impl Strategy<Value = Poly> {
    (prop::collection::vec(-coeff..=coeff, 1..=max_deg), nonzero(coeff)).prop_map(|(mut rest, lead)| {
        rest.insert(0, lead);
        Poly::from_i64s(&rest)
    })
}

fn factored(xs: &[Rational]) -> Vec<FactoredRational> {
    xs.iter().map(|x| FactoredRational::factor(x).unwrap()).collect()
}

fn all_k(n: usize, bound: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    (0..side.pow(n as u32)).map(move |mut idx| {
        (0..n)
            .map(|_| {
                let v = (idx % side) as i64 - bound;
                idx /= side;
                v
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn factor_round_trip(p in nonzero(1_000_000), q in 1i64..=1_000_000) {
        let x = rat(p, q);
        prop_assert_eq!(FactoredRational::factor(&x).unwrap().to_rational(), x);
    }

    #[test]
    fn height_is_group_compatible(x in rational(1000), y in rational(1000), k in -10i32..=10) {
        let hx = height(&x).unwrap().value;
        let hy = height(&y).unwrap().value;
        let hxy = height(&(&x * &y)).unwrap().value;
        prop_assert!(hxy <= hx + hy + 1e-9);
        let hk = height(&x.pow(k)).unwrap().value;
        prop_assert!((hk - f64::from(k.abs()) * hx).abs() <= 1e-9 * (1.0 + hk));
    }

    #[test]
    fn product_formula_on_s_units(exps in prop::collection::vec(-6i64..=6, 3), negative: bool) {
        let s = PlaceSet::from_u64s(&[2, 3, 5, 7]).unwrap();
        let base = [2i64, 3, 7];
        let mut x = Rational::one();
        for (b, e) in base.iter().zip(&exps) {
            x *= Rational::from_integer((*b).into()).pow(*e as i32);
        }
        if negative { x = -x; }
        prop_assert_eq!(s_norm(&FactoredRational::factor(&x).unwrap(), &s), Rational::one());
    }

    #[test]
    fn log_star_monotone(a in 0.0f64..1e6, b in 0.0f64..1e6) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (ls, hs) = (log_star(lo.max(1e-300)).unwrap(), log_star(hi.max(1e-300)).unwrap());
        prop_assert!(ls >= 1.0 && ls <= hs);
    }

    #[test]
    fn enumeration_sound_and_monotone(n1 in 1u32..=25, n2 in 1u32..=25) {
        let (lo, hi) = (n1.min(n2), n1.max(n2));
        let a = enumerate_bounded_height(&HeightBound::log_of(lo).unwrap()).unwrap();
        let b = enumerate_bounded_height(&HeightBound::log_of(hi).unwrap()).unwrap();
        let set: BTreeSet<_> = b.iter().cloned().collect();
        prop_assert_eq!(set.len(), b.len());
        for x in &b {
            prop_assert!(x.numer().abs() <= hi.into() && *x.denom() <= hi.into());
        }
        prop_assert!(a.len() <= b.len());
        prop_assert!(a.iter().all(|x| set.contains(x)));
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(f in poly(3, 5), g in poly(3, 5), c in poly(2, 3), share: bool) {
        let (f, g) = if share { (&f * &c, &g * &c) } else { (f, g) };
        let r = resultant(&f, &g).unwrap();
        prop_assert_eq!(r.is_zero(), !f.gcd(&g).is_constant());
    }

    #[test]
    fn squarefree_round_trip(f in poly(3, 4), g in poly(2, 4), e in 1u32..=3) {
        let h = &f * &g.pow(e);
        let sq = squarefree_decompose(&h).unwrap();
        prop_assert_eq!(sq.reconstruct(), h.clone());
        let rad = sq.radical();
        prop_assert!(rad.gcd(&rad.derivative()).is_constant());
        prop_assert_eq!(discriminant(&h).unwrap().is_zero(), sq.distinct_root_count() < h.degree().unwrap());
    }

    #[test]
    fn coprime_basis_reconstructs(factors in prop::collection::vec(poly(2, 3), 1..=4), picks in prop::collection::vec(prop::collection::vec(0u8..=2, 4), 1..=3)) {
        let fs: Vec<Poly> = picks
            .iter()
            .map(|row| {
                let mut p = Poly::constant(rat(2, 1));
                for (f, &e) in factors.iter().zip(row) {
                    p = &p * &f.pow(u32::from(e));
                }
                p
            })
            .collect();
        let cb = coprime_basis(&fs).unwrap();
        for (i, f) in fs.iter().enumerate() {
            prop_assert_eq!(&cb.reconstruct(i), f);
        }
        for (i, a) in cb.basis.iter().enumerate() {
            for b in &cb.basis[i + 1..] {
                prop_assert!(a.is_coprime(b));
            }
        }
    }

    #[test]
    fn radical_height_bound(f in poly(8, 100)) {
        let n = f.degree().unwrap() as f64;
        let rad = squarefree_decompose(&f).unwrap().radical();
        let lhs = poly_heights(&rad).unwrap().h.value;
        let rhs = 2.0 * poly_heights(&f).unwrap().h.value + n * std::f64::consts::LN_2;
        prop_assert!(lhs <= rhs + 1e-9, "{} > {}", lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn absolute_dependence_matches_brute_force(xs in prop::collection::vec(rational(30), 1..=3)) {
        let fs = factored(&xs);
        let verdict = dependence_absolute(&fs).unwrap();
        if let Some(w) = &verdict {
            prop_assert!(w.verify(&fs, &GroupSpec::trivial()));
        }
        let brute = all_k(fs.len(), 6)
            .filter(|k| k.iter().any(|&v| v != 0))
            .any(|k| FactoredRational::power_product(&fs, &k).is_one());
        prop_assert_eq!(brute, verdict.is_some());
    }

    #[test]
    fn div_dependence_finds_brute_force_relations(
        xs in prop::collection::vec(rational(30), 1..=3),
        gens in prop::collection::vec(rational(12), 0..=2),
    ) {
        let fs = factored(&xs);
        let gamma = GroupSpec::from_rationals(&gens).unwrap();
        let verdict = dependence_mod_gamma_div(&fs, &gamma).unwrap();
        if let Some(w) = &verdict {
            prop_assert!(w.verify(&fs, &gamma));
        }
        let lattice = GroupLattice::new(&gamma);
        let brute = all_k(fs.len(), 3).filter(|k| k.iter().any(|&v| v != 0)).any(|k| {
            let y = FactoredRational::power_product(&fs, &k);
            (1..=12).any(|m| lattice.membership(&y.pow(m)).unwrap().is_some())
        });
        if brute {
            prop_assert!(verdict.is_some());
        }
    }

    #[test]
    fn div_membership_closed_under_powers(x in rational(50), gens in prop::collection::vec(rational(12), 0..=2)) {
        let gamma = GroupSpec::from_rationals(&gens).unwrap();
        let fx = FactoredRational::factor(&x).unwrap();
        let v = gamma_div_membership(&fx, &gamma).unwrap();
        if v.is_in() {
            prop_assert!(v.witness.unwrap().verify(std::slice::from_ref(&fx), &gamma));
            for j in 1..=5 {
                prop_assert!(gamma_div_membership(&fx.pow(j), &gamma).unwrap().is_in());
            }
        }
    }

    #[test]
    fn sandwich_monotone_in_epsilon(x in rational(40), g in rational(10), e1 in 0u32..=12, e2 in 0u32..=12) {
        let gamma = GroupSpec::from_rationals(&[g]).unwrap();
        let fx = FactoredRational::factor(&x).unwrap();
        let (lo, hi) = (e1.min(e2), e1.max(e2));
        let eps = |n: u32| if n == 0 { HeightBound::zero() } else { HeightBound::log_of(n).unwrap() };
        let a = eps_membership_sandwich(&fx, &gamma, &eps(lo)).unwrap();
        let b = eps_membership_sandwich(&fx, &gamma, &eps(hi)).unwrap();
        if a.is_in() { prop_assert!(b.is_in()); }
        if b.is_out() { prop_assert!(a.is_out()); }
        for v in [&a, &b] {
            if let Some(w) = &v.witness {
                prop_assert!(w.verify(std::slice::from_ref(&fx), &gamma));
            }
        }
    }

    #[test]
    fn lf_check_symmetric_and_scale_invariant(
        f1 in poly(3, 4),
        f2 in poly(3, 4),
        c in nonzero(5),
    ) {
        let r = lf_generation_check(&f1, &f2).unwrap();
        let swapped = lf_generation_check(&f2, &f1).unwrap();
        prop_assert_eq!(r.is_some(), swapped.is_some());
        if let (Some(a), Some(b)) = (&r, &swapped) {
            let norm = |k: &[i64]| k.iter().map(|x| x.abs()).sum::<i64>();
            prop_assert_eq!(norm(&a.k), norm(&b.k));
        }
        let scaled = lf_generation_check(&f1.scale(&rat(c, 1)), &f2).unwrap();
        prop_assert_eq!(scaled.map(|s| s.k), r.map(|s| s.k));
    }

    #[test]
    fn s_f_gamma_eps_monotone(g1 in 2i64..=12, g2 in 2i64..=12, e in 0u32..=4) {
        let polys = vec![Poly::from_i64s(&[1, 0, -1]), Poly::from_i64s(&[1, 0, -4])];
        let eps = |n: u32| if n <= 1 { HeightBound::zero() } else { HeightBound::log_of(n).unwrap() };
        let small = InstanceSpec::new(polys.clone(), GroupSpec::from_rationals(&[rat(g1, 1)]).unwrap(), eps(e), HeightBound::zero()).unwrap();
        let big = InstanceSpec::new(polys, GroupSpec::from_rationals(&[rat(g1, 1), rat(g2, 1)]).unwrap(), eps(e + 1), HeightBound::zero()).unwrap();
        let a = s_f_gamma_eps(&small).unwrap().total;
        let b = s_f_gamma_eps(&big).unwrap().total;
        prop_assert!(b.is_superset(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bound_chain_holds(n in 2u64..=8, s in 1u64..=6, hf in 0u32..=50, ps in prop::sample::select(vec![1u64, 2, 3, 97, 1009]), nsb in 1u64..=100) {
        let h = if hf <= 1 { HeightBound::zero() } else { HeightBound::log_of(hf).unwrap() };
        let r = compute_constants(&BoundInputs::rational(n, s, h, rat(ps as i64, 1), rat(nsb as i64, 1))).unwrap();
        prop_assert!(r.chain_holds && r.fixed_point_holds);
    }

    #[test]
    fn hyperelliptic_search_stable_under_enlargement(c in 1i64..=20, m1 in 3u32..=6, extra in 0u32..=4) {
        let f = Poly::from_i64s(&[1, 0, c]);
        let b = Rational::one();
        let s = PlaceSet::archimedean();
        let small = hyperelliptic_search(&f, &b, &s, &HeightBound::log_of(60u32).unwrap(), m1).unwrap();
        let big = hyperelliptic_search(&f, &b, &s, &HeightBound::log_of(120u32).unwrap(), m1 + extra).unwrap();
        let restricted: Vec<_> = big
            .solutions
            .iter()
            .filter(|x| x.m <= m1 && x.x.numer().abs() <= 60.into())
            .cloned()
            .collect();
        prop_assert_eq!(small.solutions, restricted);
    }
}

#[test]
fn scans_grow_on_the_counterexample() {
    use muldep::expsearch::{scan_theorem12, ScanOptions};
    let inst = |n: u32| {
        InstanceSpec::new(
            vec![Poly::x(), &Poly::from_i64s(&[1, 1]) * &Poly::from_i64s(&[1, 2])],
            GroupSpec::parse(&["2"]).unwrap(),
            HeightBound::zero(),
            HeightBound::log_of(n).unwrap(),
        )
        .unwrap()
    };
    let opts = ScanOptions { override_hypotheses: true, ..ScanOptions::default() };
    let counts: Vec<usize> =
        [4u32, 8, 16, 32].iter().map(|&n| scan_theorem12(&inst(n), &opts).unwrap().hit_alphas().len()).collect();
    assert!(counts.windows(2).all(|w| w[0] < w[1]), "{counts:?}");
}

#[test]
fn stable_hit_count_on_the_finite_example() {
    use muldep::expsearch::{scan_theorem12, ScanOptions};
    let run = |h: &str| {
        let inst = InstanceSpec::new(
            vec![Poly::from_i64s(&[1, 0, -1]), Poly::from_i64s(&[1, 0, -4])],
            GroupSpec::parse(&["2"]).unwrap(),
            HeightBound::parse("0.1").unwrap(),
            HeightBound::parse(h).unwrap(),
        )
        .unwrap();
        let r = scan_theorem12(&inst, &ScanOptions::default()).unwrap();
        assert!(r.verify_hits());
        r.hit_alphas()
    };
    assert_eq!(run("2.5"), run("3.5"));
}

#[test]
fn primes_sample_is_sane() {
    let s = PlaceSet::new([2u32, 3].map(BigUint::from)).unwrap();
    assert_eq!(s.s(), 3);
}
