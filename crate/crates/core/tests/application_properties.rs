use std::collections::BTreeSet;

use num_rational::Ratio;
use optrig::granular::{
    compose_stress, principal_decompose, repose_report, StressTensor2,
};
use optrig::pythagorean::{
    enumerate_primitive_triples, euclid_triple, on_unit_circle, params_from_triple,
    pyth_antieigenvectors, pyth_matrix, pyth_trig, stereographic_point_exact, validate_params,
};
use optrig::sharpe::{gm_am_ratio, two_period_report, SigmaConvention};
use optrig::trig::{mu1_closed, nu1_closed, turning_angle, SpdMatrix};
use proptest::prelude::*;

fn tensor() -> impl Strategy<Value = StressTensor2> {
    (0.01f64..100.0, 0.0f64..0.95, -1.6f64..1.6).prop_map(|(s2, frac, psi)| {
        let s1 = s2 / (1.0 - frac);
        compose_stress(&optrig::granular::PrincipalStress {
            psi,
            sigma1: s1,
            sigma2: s2,
        })
        .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn repose_equals_turning_angle(s in tensor()) {
        let r = repose_report(&s).unwrap();
        prop_assert!((r.theta.radians - r.phi.radians).abs() <= 1e-10);
        let p = r.principal;
        let ratio = (p.sigma1 - p.sigma2) / (p.sigma1 + p.sigma2);
        prop_assert!((r.convex_value - ratio).abs() <= 1e-10);
        prop_assert!((r.theta.radians.sin() - r.deviator / r.mean_stress).abs() <= 1e-12);
    }

    #[test]
    fn repose_rotation_and_scale_invariant(s in tensor(), angle in -3.0f64..3.0, c in 1e-3f64..1e3) {
        let base = repose_report(&s).unwrap().theta.radians;
        let rotated = repose_report(&s.rotated(angle)).unwrap().theta.radians;
        prop_assert!((base - rotated).abs() <= 1e-10);
        let scaled = repose_report(&s.scaled(c)).unwrap().theta.radians;
        prop_assert!((base - scaled).abs() <= 1e-12);
    }

    #[test]
    fn decompose_compose_round_trip(s in tensor()) {
        let back = compose_stress(&principal_decompose(&s).unwrap()).unwrap();
        let scale = s.sigma_xx.abs().max(s.sigma_zz.abs());
        prop_assert!((back.sigma_xx - s.sigma_xx).abs() <= 1e-12 * scale);
        prop_assert!((back.sigma_xz - s.sigma_xz).abs() <= 1e-12 * scale);
        prop_assert!((back.sigma_zz - s.sigma_zz).abs() <= 1e-12 * scale);
    }

    #[test]
    fn gm_am_properties(r1 in 1e-6f64..10.0, r2 in 1e-6f64..10.0, c in 1e-3f64..1e3) {
        let g = gm_am_ratio(r1, r2).unwrap();
        let diag = SpdMatrix::diagonal(&[r1, r2]).unwrap();
        prop_assert!((g - mu1_closed(diag.spectral())).abs() <= 1e-12);
        prop_assert_eq!(g, gm_am_ratio(r2, r1).unwrap());
        prop_assert!((gm_am_ratio(c * r1, c * r2).unwrap() - g).abs() <= 1e-14);
        prop_assert!(g > 0.0 && g <= 1.0);
    }

    #[test]
    fn g_ratio_ignores_sigma_convention(r1 in 0.001f64..0.5, r2 in 0.001f64..0.5) {
        prop_assume!((r1 - r2).abs() > 1e-9);
        let p = two_period_report(r1, r2, 0.0, SigmaConvention::Population).unwrap();
        let s = two_period_report(r1, r2, 0.0, SigmaConvention::Sample).unwrap();
        prop_assert!((p.g_ratio - s.g_ratio).abs() <= 1e-14);
        prop_assert!((p.g_ratio - p.mu1_crosscheck).abs() <= 1e-12);
        prop_assert!(p.g_ratio < 1.0);
    }
}

#[test]
fn g_is_one_only_on_the_diagonal() {
    for i in 1..=50 {
        for j in 1..=50 {
            let g = gm_am_ratio(i as f64 * 0.01, j as f64 * 0.01).unwrap();
            assert_eq!(g == 1.0, i == j, "({i}, {j}) -> {g}");
        }
    }
}

fn valid_params(m_max: i64) -> impl Iterator<Item = optrig::pythagorean::TripleParams> {
    (2..=m_max).flat_map(|m| (1..m).filter_map(move |n| validate_params(m, n).ok()))
}

#[test]
fn euclid_triples_are_primitive() {
    use num_integer::Integer;
    for p in valid_params(100) {
        let t = euclid_triple(&p).unwrap();
        assert!(t.is_pythagorean());
        assert_eq!(t.a.gcd(&t.b), 1);
        assert_eq!(t.a.gcd(&t.c), 1);
        assert_eq!(t.b.gcd(&t.c), 1);
    }
}

#[test]
fn proposition_cross_check() {
    for p in valid_params(100) {
        let (cos, sin) = pyth_trig(&p).unwrap();
        let t = euclid_triple(&p).unwrap();
        assert_eq!(cos, Ratio::new(t.a as i128, t.c as i128));
        assert_eq!(sin, Ratio::new(t.b as i128, t.c as i128));
        let a = pyth_matrix(&p).unwrap();
        let to_f = |r: Ratio<i128>| *r.numer() as f64 / *r.denom() as f64;
        assert!((to_f(cos) - mu1_closed(a.spectral())).abs() <= 1e-14);
        assert!((to_f(sin) - nu1_closed(a.spectral())).abs() <= 1e-14);

        let (px, py) = stereographic_point_exact(Ratio::new(p.m() as i128, p.n() as i128)).unwrap();
        assert_eq!((px, py), (cos, sin));
        assert_eq!(on_unit_circle(&px, &py), Some(true));

        let target = (2.0 * (p.m() * p.n()) as f64 / t.c as f64).acos();
        for x in pyth_antieigenvectors(&p) {
            assert!((turning_angle(&x, &a).unwrap() - target).abs() <= 1e-10);
        }
    }
}

#[test]
fn pyth_antieigenvectors_match_general_formula() {
    for p in valid_params(30) {
        let a = pyth_matrix(&p).unwrap();
        let general = optrig::trig::antieigenvectors(a.spectral(), 1e-10).unwrap();
        let special = pyth_antieigenvectors(&p);
        for (g, s) in general.iter().zip(&special) {
            assert!((g[0] - s[0]).abs() < 1e-15 && (g[1] - s[1]).abs() < 1e-15);
        }
    }
}

#[test]
fn inverse_round_trip() {
    for p in valid_params(1000) {
        assert_eq!(params_from_triple(&euclid_triple(&p).unwrap()).unwrap(), p);
    }
}

fn brute_force(c_max: u64) -> BTreeSet<(u64, u64, u64)> {
    use num_integer::Integer;
    let mut out = BTreeSet::new();
    for a in 1..c_max {
        for b in (a + 1)..c_max {
            let c2 = a * a + b * b;
            let c = c2.isqrt();
            if c <= c_max && c * c == c2 && a.gcd(&b) == 1 {
                out.insert((a, b, c));
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for c_max in [5, 13, 30, 100, 257, 500] {
        let got: Vec<_> = enumerate_primitive_triples(c_max)
            .into_iter()
            .map(|(_, t)| (t.a.min(t.b), t.a.max(t.b), t.c))
            .collect();
        let set: BTreeSet<_> = got.iter().copied().collect();
        assert_eq!(set.len(), got.len(), "duplicates for c_max = {c_max}");
        assert_eq!(set, brute_force(c_max), "c_max = {c_max}");
    }
    assert_eq!(enumerate_primitive_triples(100).len(), 16);
}

#[test]
fn enumeration_order() {
    let all = enumerate_primitive_triples(200);
    assert!(all
        .windows(2)
        .all(|w| (w[0].1.c, w[0].1.b) < (w[1].1.c, w[1].1.b)));
}
