use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use wedge_iso::profile::IsoperimetricProfile;
use wedge_iso::quadrature::{big_h, big_h_inverse};
use wedge_iso::sigma_map::SigmaMap;
use wedge_iso::verification::{random_sweep, SweepOptions};
use wedge_iso::wedge_geometry::{measure2d, perimeter2d, FourierShape, WedgeWeight};

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.3..0.3f64, 1..6)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn big_h_is_increasing(c in 0.0..2.0f64, m in 0.0..6.0f64, r in 1e-3..5.0f64, dr in 1e-3..1.0f64) {
        let a = big_h(r, c, m, 1e-12).unwrap();
        let b = big_h(r + dr, c, m, 1e-12).unwrap();
        prop_assert!(a > 0.0 && b > a);
    }

    #[test]
    fn big_h_inverse_round_trip(c in 0.0..2.0f64, m in 0.0..6.0f64, e in -6.0..6.0f64) {
        let s = 10f64.powf(e);
        let r = big_h_inverse(s, c, m, 1e-12).unwrap();
        let back = big_h(r, c, m, 1e-12).unwrap();
        prop_assert!((back - s).abs() <= 1e-10 * (1.0 + s), "s = {s}, H(H^-1(s)) = {back}");
    }

    #[test]
    fn flat_weights_scale_homogeneously(a in coeffs(), k1 in 0.0..3.0f64, k2 in 0.0..3.0f64, lambda in 0.2..5.0f64) {
        let w = WedgeWeight::planar(0.0, k1, k2).unwrap();
        let s = FourierShape::new(a).unwrap();
        let big = s.scaled(lambda);
        let d = k1 + k2;
        let mu = measure2d(&s, &w, 1e-12).unwrap();
        let p = perimeter2d(&s, &w, 1e-12).unwrap();
        let mu_big = measure2d(&big, &w, 1e-12).unwrap();
        let p_big = perimeter2d(&big, &w, 1e-12).unwrap();
        prop_assert!((mu_big / (lambda.powf(d + 2.0) * mu) - 1.0).abs() < 1e-9);
        prop_assert!((p_big / (lambda.powf(d + 1.0) * p) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn profile_scales_like_a_power(k in prop::collection::vec(0.0..3.0f64, 2..5), m in 1e-3..1e3f64, t in 0.1..10.0f64) {
        let p = IsoperimetricProfile::new(WedgeWeight::new(0.0, k.clone()).unwrap(), 1e-12).unwrap();
        let d = k.len() as f64 + k.iter().sum::<f64>();
        let ratio = p.profile_value(t * m).unwrap() / p.profile_value(m).unwrap();
        prop_assert!((ratio / t.powf((d - 1.0) / d) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn profile_is_increasing_with_gaussian_factor(c in 0.0..2.0f64, k1 in 0.0..3.0f64, k2 in 0.0..3.0f64, m in 1e-3..1e3f64) {
        let p = IsoperimetricProfile::new(WedgeWeight::planar(c, k1, k2).unwrap(), 1e-12).unwrap();
        prop_assert!(p.profile_value(m * 1.01).unwrap() > p.profile_value(m).unwrap());
    }

    #[test]
    fn smooth_shapes_never_beat_the_quarter_disc(a in coeffs(), c in 0.0..1.5f64, k1 in 0.0..3.0f64, k2 in 0.0..3.0f64) {
        let w = WedgeWeight::planar(c, k1, k2).unwrap();
        let s = FourierShape::new(a).unwrap();
        let p = IsoperimetricProfile::new(w.clone(), 1e-11).unwrap();
        let m = measure2d(&s, &w, 1e-11).unwrap();
        let per = perimeter2d(&s, &w, 1e-11).unwrap();
        prop_assert!(per >= p.profile_value(m).unwrap() * (1.0 - 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn sigma_is_an_increasing_bijection(k in 0.0..4.0f64, l in 0.0..4.0f64) {
        let map = SigmaMap::new(k, l, 129, 1e-11).unwrap();
        prop_assert!(map.eval(0.0).unwrap().abs() < 1e-12);
        prop_assert!((map.eval(FRAC_PI_2).unwrap() - PI).abs() < 1e-12);
        let mut prev = 0.0;
        for i in 1..=200 {
            let t = i as f64 * FRAC_PI_2 / 201.0;
            let s = map.eval(t).unwrap();
            prop_assert!(s > prev);
            prop_assert!((map.inverse(s).unwrap() - t).abs() < 1e-9);
            prop_assert!(map.derivative(t).unwrap() >= 1.0 - 1e-9);
            prev = s;
        }
    }

    #[test]
    fn sweeps_are_reproducible(seed in any::<u64>()) {
        let w = WedgeWeight::planar(0.5, 1.0, 0.0).unwrap();
        let a = random_sweep(&w, 8, seed, 0.3, &SweepOptions::default()).unwrap();
        let b = random_sweep(&w, 8, seed, 0.3, &SweepOptions::default()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn sweep_matrix_has_no_violations() {
    let ks = [0.0, 0.5, 1.0, 2.0];
    let opts = SweepOptions { tol_abs: 1e-7, ..SweepOptions::default() };
    for (i, (c, k1, k2)) in [0.0, 0.5, 1.0]
        .into_iter()
        .flat_map(|c| ks.into_iter().flat_map(move |a| ks.into_iter().map(move |b| (c, a, b))))
        .enumerate()
    {
        let w = WedgeWeight::planar(c, k1, k2).unwrap();
        let rep = random_sweep(&w, 500, 1000 + i as u64, 0.3, &opts).unwrap();
        assert_eq!((rep.violations, rep.non_finite), (0, 0), "c = {c}, k = ({k1}, {k2})");
    }
}
