mod common;

use common::{coin, enumerate_paths};
use proptest::prelude::*;
use qwc::walk::{
    hadamard_state, hadamard_walk, mcms_walk, scms_walk, CoinOperator, LatticeWalk, StepSpec,
    WalkState,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn assert_same(actual: &[(f64, f64)], expected: &[(f64, f64)], tol: f64) {
    assert_eq!(actual.len(), expected.len(), "{actual:?} vs {expected:?}");
    for (a, e) in actual.iter().zip(expected) {
        assert!((a.0 - e.0).abs() < tol, "position {} vs {}", a.0, e.0);
        assert!((a.1 - e.1).abs() < tol, "probability {} vs {} at {}", a.1, e.1, a.0);
    }
}

#[test]
fn hadamard_matches_enumeration() {
    for t in 1..=12 {
        let coins = vec![coin(0.5); t];
        let steps = vec![(1.0, 1.0); t];
        let expected = enumerate_paths(&coins, &steps, 1e-9);
        let got = hadamard_walk(t as u32).unwrap();
        assert_same(got.points(), &expected, 1e-12);
        assert_same(hadamard_state(t as u32).distribution().points(), &expected, 1e-12);
    }
}

#[test]
fn scms_worked_example() {
    let d = scms_walk(0.8, 1.0, 2).unwrap().distribution();
    assert_same(d.points(), &[(-0.2, 0.16), (0.3, 0.20), (0.8, 0.64)], 1e-12);
}

#[test]
fn mcms_worked_example() {
    let s = mcms_walk(&[0.8, 0.6], 1.0).unwrap();
    let comps = s.components();
    let squares: Vec<f64> = comps.iter().map(|c| c.2 * c.2).collect();
    let mut sorted = squares.clone();
    sorted.sort_by(f64::total_cmp);
    let mut want = vec![0.48, 0.32, 0.08, 0.12];
    want.sort_by(f64::total_cmp);
    for (a, b) in sorted.iter().zip(&want) {
        assert!((a - b).abs() < 1e-12);
    }
    assert_eq!(comps.iter().filter(|c| c.2 < 0.0).count(), 1);
    assert!((s.total_probability() - 1.0).abs() < 1e-12);
}

#[test]
fn coin_is_unitary_across_rho() {
    for i in 0..=1000 {
        let rho = 0.5 + 0.5 * i as f64 / 1000.0;
        let m = CoinOperator::biased(rho).unwrap().matrix();
        for a in 0..2 {
            for b in 0..2 {
                let dot: f64 = (0..2).map(|k| m[k][a] * m[k][b]).sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-12, "rho={rho} ({a},{b}) -> {dot}");
            }
        }
    }
}

#[test]
fn coin_rejects_out_of_range() {
    for rho in [0.49, 1.01, f64::NAN, -1.0] {
        assert!(CoinOperator::biased(rho).is_err(), "{rho}");
    }
}

#[test]
fn measurement_frequencies_fit_distribution() {
    // chi-square, df = 2, alpha = 0.001
    const CRITICAL: f64 = 13.8155;
    const DRAWS: usize = 100_000;
    let state = scms_walk(0.8, 1.0, 2).unwrap();
    let dist = state.distribution();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut counts = vec![0usize; dist.len()];
    for _ in 0..DRAWS {
        let x = state.measure(&mut rng).unwrap();
        let idx = dist.points().iter().position(|p| p.0 == x).unwrap();
        counts[idx] += 1;
    }
    let chi2: f64 = dist
        .points()
        .iter()
        .zip(&counts)
        .map(|(&(_, p), &c)| {
            let e = p * DRAWS as f64;
            (c as f64 - e).powi(2) / e
        })
        .sum();
    assert!(chi2 < CRITICAL, "chi2 = {chi2}");
}

#[test]
fn measure_rejects_unnormalized_state() {
    use qwc::walk::Amplitude;
    let s = WalkState::from_entries(vec![Amplitude { position: 0.0, up: 0.5, down: 0.0 }]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(s.measure(&mut rng).is_err());
}

fn etas() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.5f64..=1.0, 1..=8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scms_matches_enumeration(rho in 0.5f64..=1.0, delta in -5.0f64..5.0, r in 1u32..=10) {
        prop_assume!(delta.abs() > 1e-3);
        let got = scms_walk(rho, delta, r).unwrap().distribution();
        let spec = StepSpec::toward(delta, rho, r);
        let coins = vec![coin(rho); r as usize];
        let steps = vec![(spec.right_len, spec.left_len); r as usize];
        let want = enumerate_paths(&coins, &steps, 1e-9 * delta.abs().max(1.0));
        // enumeration keeps exact-zero cancellations out; so does the lattice
        assert_same(got.points(), &want, 1e-9);
    }

    #[test]
    fn mcms_matches_enumeration(e in etas(), delta in -5.0f64..5.0) {
        prop_assume!(delta.abs() > 1e-3);
        let got = mcms_walk(&e, delta).unwrap().distribution();
        let k = e.len() as u32;
        let coins: Vec<_> = e.iter().map(|&x| coin(x)).collect();
        let steps: Vec<_> = e
            .iter()
            .map(|&x| {
                let s = StepSpec::toward(delta, x, k);
                (s.right_len, s.left_len)
            })
            .collect();
        let want = enumerate_paths(&coins, &steps, 1e-9 * delta.abs().max(1.0));
        assert_same(got.points(), &want, 1e-9);
    }

    #[test]
    fn normalized_after_every_step(e in prop::collection::vec(0.5f64..=1.0, 1..=40)) {
        let mut lattice = LatticeWalk::new();
        let mut general = WalkState::initial();
        for &rho in &e {
            let c = CoinOperator::biased(rho).unwrap();
            lattice.step(&c, &StepSpec::unit()).unwrap();
            general.apply(&c, &StepSpec::toward(1.0, rho, 3)).unwrap();
            prop_assert!((lattice.state().total_probability() - 1.0).abs() < 1e-10);
            prop_assert!((general.total_probability() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn walk_never_overshoots(rho in 0.5f64..=1.0, delta in -5.0f64..5.0, r in 1u32..=10) {
        prop_assume!(delta != 0.0);
        let d = scms_walk(rho, delta, r).unwrap().distribution();
        for &(x, _) in d.points() {
            prop_assert!(x.abs() <= delta.abs() * (1.0 + 1e-12));
            prop_assert!(x * delta <= delta * delta * rho * (1.0 + 1e-12));
        }
    }
}
