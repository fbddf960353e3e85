//! Solver laboratory for the binary paint shop problem.
//!
//! A paint shop instance is a sequence of 2n cars in which each of n car
//! types appears twice; the two appearances get different colours and the
//! goal is to minimise colour changes along the sequence. The crate provides
//! the exact Ising reduction, greedy baselines, mean-field approximate
//! optimisation, a small QAOA simulator with published angles and the
//! power-law depth extrapolation, an exhaustive oracle, and a seeded Monte
//! Carlo harness.

pub mod colouring;
pub mod ensemble;
pub mod error;
pub mod export;
pub mod heuristics;
pub mod instance;
pub mod ising;
pub mod mfaoa;
pub mod oracle;
pub mod qaoa;
pub mod rng;

pub use colouring::{swap_count, validate, Colouring};
pub use ensemble::{
    monte_carlo, solve_qaoa, Algorithm, Ensemble, EnsembleSpec, EnsembleStats, QaoaOutcome, QaoaSolver, RunOptions,
    RunRecord, Solver,
};
pub use error::{Error, Result};
pub use heuristics::{greedy, recursive_greedy, Heuristic, HeuristicResult};
pub use instance::{generate_instance, CarSequence, Occurrence};
pub use ising::{
    colouring_from_spins, coupling_stats, energy, spins_from_colouring, to_ising, CouplingStats, Edge, Energy,
    IsingModel, SpinAssignment,
};
pub use mfaoa::{MfConfig, MfState, Pin, Schedule, StepRule};
pub use oracle::{brute_force, brute_force_full, Optimum};
