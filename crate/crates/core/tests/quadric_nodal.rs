use courant_cube::nodal::{
    count_components, count_nodal_domains, count_nodal_domains_with, sample_field, sweep_eigenspace, EigenCombo,
    NodalConfig, SweepConfig,
};
use courant_cube::quadric::{classify, phi, predict_components, reduce_to_quadric, subcase_margin};
use courant_cube::spectrum::{enumerate_groups, find_group, BoxSpec};
use courant_cube::symmetry::{group_parity, Parity};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.1 && norm <= 1.0 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

#[test]
fn reduction_identity_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let abc = unit_vector(&mut rng, 3);
        let q = reduce_to_quadric(abc[0], abc[1], abc[2]).unwrap();
        for _ in 0..1000 {
            let (x, y, z) = (rng.gen_range(0.0..PI), rng.gen_range(0.0..PI), rng.gen_range(0.0..PI));
            let lhs = phi([abc[0], abc[1], abc[2]], x, y, z);
            let rhs = x.sin() * y.sin() * z.sin() * q.value(x.cos(), y.cos(), z.cos());
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), -2.0f64..2.0]
}

proptest! {
    #[test]
    fn predictions_are_two_three_or_four(a in coeff(), b in coeff(), c in coeff()) {
        prop_assume!(a != 0.0 || b != 0.0 || c != 0.0);
        let p = predict_components(&reduce_to_quadric(a, b, c).unwrap());
        prop_assert!((2..=4).contains(&p.count));
        if let Some(w0) = p.w0 {
            prop_assert!((0.0..1.0).contains(&w0));
        }
    }

    #[test]
    fn scale_and_sign_invariance(a in coeff(), b in coeff(), c in coeff(), t in prop_oneof![-50.0f64..-0.01, 0.01f64..50.0]) {
        prop_assume!(a != 0.0 || b != 0.0 || c != 0.0);
        let q = reduce_to_quadric(a, b, c).unwrap();
        let qt = reduce_to_quadric(t * a, t * b, t * c).unwrap();
        prop_assert_eq!(classify(&q), classify(&qt));
        let (p, pt) = (predict_components(&q), predict_components(&qt));
        prop_assert_eq!(p.count, pt.count);
        prop_assert_eq!(p.subcase, pt.subcase);
    }

    #[test]
    fn permutation_leaves_count_unchanged(a in coeff(), b in coeff(), c in coeff()) {
        prop_assume!(a != 0.0 || b != 0.0 || c != 0.0);
        let base = predict_components(&reduce_to_quadric(a, b, c).unwrap()).count;
        for [x, y, z] in [[a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]] {
            let q = reduce_to_quadric(x, y, z).unwrap();
            prop_assert_eq!(predict_components(&q).count, base);
            let mut sorted = q.coeffs;
            sorted.sort_by(f64::total_cmp);
            let mut orig = reduce_to_quadric(a, b, c).unwrap().coeffs;
            orig.sort_by(f64::total_cmp);
            prop_assert_eq!(sorted, orig);
        }
    }
}

#[test]
fn predictor_matches_numerics_away_from_boundaries() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 40 {
        let v = unit_vector(&mut rng, 3);
        let q = reduce_to_quadric(v[0], v[1], v[2]).unwrap();
        if subcase_margin(&q) <= 1e-2 {
            continue;
        }
        let combo = EigenCombo::phi(v[0], v[1], v[2]).unwrap();
        let count = count_nodal_domains(&combo, 64).unwrap();
        assert!(count.converged, "{v:?}");
        assert_eq!(count.total, predict_components(&q).count as usize, "{v:?}");
        checked += 1;
    }
}

#[test]
fn product_modes_count_lmn() {
    for g in enumerate_groups(&BoxSpec::CUBE, 27.0).unwrap() {
        for t in &g.modes {
            let c = count_nodal_domains(&EigenCombo::pure(*t), 32).unwrap();
            assert_eq!(c.total as u64, (t.l * t.m * t.n) as u64, "{t}");
        }
    }
}

#[test]
fn sign_flip_and_antipodal_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for value in [6.0, 9.0, 11.0, 14.0] {
        let g = find_group(&BoxSpec::CUBE, value).unwrap();
        for _ in 0..8 {
            let combo = EigenCombo::new(g.clone(), unit_vector(&mut rng, g.multiplicity())).unwrap();
            let base = count_components(&sample_field(&combo, 64).unwrap());
            let flipped = count_components(&sample_field(&combo.negated(), 64).unwrap());
            assert_eq!(base.positive_components, flipped.negative_components);
            assert_eq!(base.negative_components, flipped.positive_components);
            let mirrored = count_components(&sample_field(&combo.antipodal(), 64).unwrap());
            assert_eq!(base.total, mirrored.total);
            if group_parity(&g) == Some(Parity::Odd) {
                // g swaps the sign of an odd function, so its domains pair up
                assert_eq!(base.positive_components, base.negative_components, "λ = {value}");
                assert_eq!(base.total % 2, 0);
                assert_eq!(combo.value_at(PI / 2.0, PI / 2.0, PI / 2.0).abs() < 1e-12, true);
            }
        }
    }
}

#[test]
fn courant_bound_on_small_eigenspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = NodalConfig { max_resolution: 256 };
    for g in enumerate_groups(&BoxSpec::CUBE, 27.0).unwrap() {
        for _ in 0..10 {
            let combo = EigenCombo::new(g.clone(), unit_vector(&mut rng, g.multiplicity())).unwrap();
            let c = count_nodal_domains_with(&combo, 32, &cfg).unwrap();
            assert!(c.total as u64 <= g.k_max, "λ = {}: {}", g.value, c.total);
        }
    }
}

#[test]
fn every_lambda_six_eigenfunction_has_two_domains() {
    let g = find_group(&BoxSpec::CUBE, 6.0).unwrap();
    let cfg = SweepConfig { samples: 100, resolution: 64, seed: 2, nodal: NodalConfig::default() };
    let r = sweep_eigenspace(&g, &cfg).unwrap();
    assert_eq!(r.histogram.into_iter().collect::<Vec<_>>(), vec![(2, 100)]);
}

#[test]
fn sweeps_are_reproducible() {
    let g = find_group(&BoxSpec::CUBE, 11.0).unwrap();
    let cfg = SweepConfig { samples: 12, resolution: 32, seed: 4, nodal: NodalConfig::default() };
    let a = sweep_eigenspace(&g, &cfg).unwrap();
    let b = sweep_eigenspace(&g, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.samples.iter().enumerate().all(|(i, s)| s.index == i));
    let other = sweep_eigenspace(&g, &SweepConfig { seed: 5, ..cfg }).unwrap();
    assert_ne!(a.samples[0].coeffs, other.samples[0].coeffs);
}

#[test]
fn tangent_ellipsoid_stays_bounded() {
    // a + b = 1/4 exactly: the ellipsoid touches the vertical edges
    let combo = EigenCombo::phi(0.75, 0.125, 0.125).unwrap();
    let c = count_nodal_domains_with(&combo, 16, &NodalConfig { max_resolution: 64 }).unwrap();
    assert!(c.resolution_used <= 64);
    assert!((2..=3).contains(&c.total));
}
