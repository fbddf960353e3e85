//! Mean-field dynamics invariants.

use bpsp_core::mfaoa::{self, effective_magnetization, linear_schedule, step};
use bpsp_core::{generate_instance, to_ising, IsingModel, MfConfig, MfState, Pin, StepRule};
use proptest::prelude::*;

fn pinned_last(model: &IsingModel) -> MfState {
    MfState::initial(model.spins(), Some(model.spins() - 1)).unwrap()
}

#[test]
fn norm_is_preserved_per_step_and_over_long_runs() {
    let seq = generate_instance(40, 3).unwrap();
    let model = to_ising(&seq);
    let cfg = MfConfig::default();
    let schedule = linear_schedule(10_000, 0.5).unwrap();
    let mut state = pinned_last(&model);
    for (&g, &b) in schedule.gammas.iter().zip(&schedule.betas) {
        state = step(&state, &model, g, b, &cfg);
        assert!(state.max_norm_error() < 1e-9);
    }
    assert!(state.max_norm_error() < 1e-6);
}

#[test]
fn pinned_spin_never_moves() {
    let seq = generate_instance(30, 11).unwrap();
    let model = to_ising(&seq);
    let cfg = MfConfig {
        record_every: 0,
        ..MfConfig::default()
    };
    let schedule = linear_schedule(500, 0.5).unwrap();
    let mut state = pinned_last(&model);
    for (&g, &b) in schedule.gammas.iter().zip(&schedule.betas) {
        state = step(&state, &model, g, b, &cfg);
        assert_eq!(state.vectors()[29], [0.0, 0.0, 1.0]);
    }
}

#[test]
fn zero_field_is_a_fixed_point() {
    let model = IsingModel::new(6, vec![], 0).unwrap();
    let cfg = MfConfig {
        pin: Pin::None,
        steps: StepRule::Fixed(300),
        ..MfConfig::default()
    };
    let out = mfaoa::evolve_model(&model, &cfg).unwrap();
    for v in out.final_state.vectors() {
        assert!(v[2].abs() < 1e-12);
    }
    assert!(out.spins.values().iter().all(|&s| s == 1));
}

#[test]
fn vanishing_driver_leaves_z_unchanged() {
    let seq = generate_instance(20, 5).unwrap();
    let model = to_ising(&seq);
    let cfg = MfConfig::default();
    let mut state = pinned_last(&model);
    state = step(&state, &model, 0.3, 0.2, &cfg);
    let before: Vec<f64> = state.vectors().iter().map(|v| v[2]).collect();
    let after = step(&state, &model, 0.7, 0.0, &cfg);
    for (a, b) in before.iter().zip(after.vectors()) {
        assert!((a - b[2]).abs() < 1e-14);
    }
}

#[test]
fn runs_are_deterministic() {
    let seq = generate_instance(100, 8).unwrap();
    let a = mfaoa::run(&seq, &MfConfig::default()).unwrap();
    let b = mfaoa::run(&seq, &MfConfig::default()).unwrap();
    assert_eq!(a.colouring, b.colouring);
    assert_eq!(a.outcome.final_state.vectors(), b.outcome.final_state.vectors());
}

#[test]
fn trajectory_ends_at_rounded_energy() {
    let seq = generate_instance(50, 2).unwrap();
    let cfg = MfConfig {
        record_every: 100,
        ..MfConfig::default()
    };
    let run = mfaoa::run(&seq, &cfg).unwrap();
    let last = run.outcome.trajectory.last().unwrap();
    assert_eq!(last.step, 1000);
    assert_eq!(last.energy, run.swaps as f64);
    assert_eq!(run.outcome.trajectory.len(), 11);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn magnetization_is_bounded_by_degree(n in 2usize..60, seed: u64, g in 0.0f64..1.0, b in 0.0f64..1.0) {
        let model = to_ising(&generate_instance(n, seed).unwrap());
        let state = step(&pinned_last(&model), &model, g, b, &MfConfig::default());
        for i in 0..n {
            let m = effective_magnetization(&model, &state, i).unwrap();
            let bound: i32 = model.neighbours(i).iter().map(|&(_, w)| w.abs()).sum();
            prop_assert!(m.abs() <= f64::from(bound) + 1e-12);
        }
    }

    #[test]
    fn rounding_is_consistent_with_signs(n in 2usize..40, seed: u64) {
        let seq = generate_instance(n, seed).unwrap();
        let run = mfaoa::run(&seq, &MfConfig { steps: StepRule::Fixed(50), ..MfConfig::default() }).unwrap();
        for (v, &s) in run.outcome.final_state.vectors().iter().zip(run.outcome.spins.values()) {
            prop_assert_eq!(s, if v[2] >= 0.0 { 1 } else { -1 });
        }
    }
}
