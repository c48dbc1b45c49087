mod common;

use lexprop::propagate::{pole_proximities, polarity, random_walk_proximity, SeedSet, WalkParams};
use lexprop::LexicalGraph;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("w{i}")).collect()
}

fn random_graph(n: usize, k: usize, rng: &mut ChaCha8Rng) -> (LexicalGraph, Vec<Vec<f64>>) {
    let v: Vec<Vec<f64>> = (0..n).map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let g = LexicalGraph::from_vectors(names(n), &v, k).unwrap();
    let w = (0..n).map(|i| (0..n).map(|j| g.weight(i, j)).collect()).collect();
    (g, w)
}

fn tight() -> WalkParams {
    WalkParams {
        tolerance: 1e-13,
        max_iter: 10_000,
        ..WalkParams::default()
    }
}

#[test]
fn matches_linear_solve_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..40 {
        let n = rng.gen_range(4..=20);
        let (g, w) = random_graph(n, rng.gen_range(1..4), &mut rng);
        let n_seeds = rng.gen_range(1..=3);
        let seeds: Vec<usize> = (0..n_seeds).map(|_| rng.gen_range(0..n)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let seed_names: Vec<String> = seeds.iter().map(|&i| format!("w{i}")).collect();
        for beta in [0.5, 0.85, 0.9] {
            let params = WalkParams { damping: beta, ..tight() };
            let out = random_walk_proximity(&g, &seed_names, &params).unwrap();
            let oracle = common::stationary_solve(&w, &seeds, beta);
            assert!(out.converged);
            for i in 0..n {
                assert!((out.proximity[i] - oracle[i]).abs() < 1e-9, "{} vs {}", out.proximity[i], oracle[i]);
            }
        }
    }
}

#[test]
fn default_tolerance_is_close_to_fixed_point() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (g, w) = random_graph(20, 3, &mut rng);
    let out = random_walk_proximity(&g, &["w0".into(), "w7".into()], &WalkParams::default()).unwrap();
    let oracle = common::stationary_solve(&w, &[0, 7], 0.9);
    let l1: f64 = out.proximity.iter().zip(&oracle).map(|(a, b)| (a - b).abs()).sum();
    assert!(out.converged && out.residual < 1e-6);
    assert!(l1 < 1e-4, "{l1}");
}

#[test]
fn pole_walks_agree_with_single_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (g, _) = random_graph(15, 3, &mut rng);
    let seeds = SeedSet::new(["w0", "w1"], ["w2"]).unwrap();
    let both = pole_proximities(&g, &seeds, &WalkParams::default()).unwrap();
    let pos = random_walk_proximity(&g, seeds.positive(), &WalkParams::default()).unwrap();
    assert_eq!(both.table.pos, pos.proximity);
    assert_eq!(both.table.words, g.words());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn proximities_form_a_distribution(seed in any::<u64>(), n in 3usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_graph(n, 2, &mut rng);
        let out = random_walk_proximity(&g, &["w0".into()], &WalkParams::default()).unwrap();
        prop_assert!(out.proximity.iter().all(|&p| p >= 0.0));
        prop_assert!((out.proximity.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn invariant_under_weight_scaling(seed in any::<u64>(), n in 3usize..20, scale in 0.1f64..10.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, w) = random_graph(n, 2, &mut rng);
        let scaled: Vec<Vec<f64>> = w.iter().map(|r| r.iter().map(|x| x * scale).collect()).collect();
        let a = common::stationary_solve(&w, &[0], 0.9);
        let b = common::stationary_solve(&scaled, &[0], 0.9);
        for i in 0..n {
            prop_assert!((a[i] - b[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn adding_a_seed_raises_its_proximity(seed in any::<u64>(), n in 4usize..25) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, _) = random_graph(n, 2, &mut rng);
        let extra = rng.gen_range(1..n);
        let base = random_walk_proximity(&g, &["w0".into()], &tight()).unwrap();
        let more = random_walk_proximity(&g, &["w0".into(), format!("w{extra}")], &tight()).unwrap();
        prop_assert!(more.proximity[extra] >= base.proximity[extra] - 1e-12);
    }

    #[test]
    fn polarity_in_unit_interval(p in 0.0f64..1.0, q in 0.0f64..1.0) {
        match polarity(p, q) {
            Some(x) => prop_assert!((0.0..=1.0).contains(&x)),
            None => prop_assert!(p + q == 0.0),
        }
    }
}
