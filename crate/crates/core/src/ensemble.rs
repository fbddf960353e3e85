//! Seeded Monte Carlo ensembles over solvers.
//!
//! Instance `i` of an ensemble with base seed `s` is
//! `generate_instance(n, derive_seed(s, i))`, so every record can be
//! regenerated on its own and results do not depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::colouring::{swap_count, Colouring};
use crate::error::{Error, Result};
use crate::heuristics::{greedy, recursive_greedy};
use crate::instance::{generate_instance, CarSequence};
use crate::ising::{colouring_from_spins, to_ising, SpinAssignment};
use crate::mfaoa::{self, MfConfig};
use crate::oracle::brute_force;
use crate::qaoa::{angle_table, expectation, AngleSet, Simulator};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Greedy,
    #[serde(rename = "rgreedy")]
    RecursiveGreedy,
    MfAoa,
    Qaoa,
    #[serde(rename = "brute")]
    BruteForce,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Greedy,
        Algorithm::RecursiveGreedy,
        Algorithm::MfAoa,
        Algorithm::Qaoa,
        Algorithm::BruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::RecursiveGreedy => "rgreedy",
            Algorithm::MfAoa => "mfaoa",
            Algorithm::Qaoa => "qaoa",
            Algorithm::BruteForce => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown algorithm {s:?}")))
    }
}

/// QAOA as a solver: evolve, then read out the most probable basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaSolver {
    pub angles: AngleSet,
    pub simulator: Simulator,
}

impl QaoaSolver {
    pub fn from_table(p: usize) -> Result<Self> {
        Ok(QaoaSolver {
            angles: angle_table(p)?,
            simulator: Simulator::default(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QaoaOutcome {
    /// ⟨H⟩ in the prepared state.
    pub expectation: f64,
    pub colouring: Colouring,
    pub swaps: usize,
    /// Probability of the read-out basis state.
    pub probability: f64,
}

pub fn solve_qaoa(seq: &CarSequence, solver: &QaoaSolver) -> Result<QaoaOutcome> {
    let model = to_ising(seq);
    let diag = solver.simulator.cost_diagonal(&model)?;
    let state = solver.simulator.evolve_diagonal(&diag, &solver.angles);
    let best = state.most_likely();
    let colouring = colouring_from_spins(seq, &SpinAssignment::from_index(best as u64, seq.n()))?;
    Ok(QaoaOutcome {
        expectation: expectation(&state, &diag)?,
        swaps: swap_count(seq, &colouring)?,
        probability: state.amplitudes()[best].norm_sqr(),
        colouring,
    })
}

/// An algorithm together with its configuration.
#[derive(Debug, Clone, PartialEq)]
pub enum Solver {
    Greedy,
    RecursiveGreedy,
    MfAoa(MfConfig),
    Qaoa(QaoaSolver),
    BruteForce,
}

impl Solver {
    pub fn algorithm(&self) -> Algorithm {
        match self {
            Solver::Greedy => Algorithm::Greedy,
            Solver::RecursiveGreedy => Algorithm::RecursiveGreedy,
            Solver::MfAoa(_) => Algorithm::MfAoa,
            Solver::Qaoa(_) => Algorithm::Qaoa,
            Solver::BruteForce => Algorithm::BruteForce,
        }
    }

    /// Default configuration for `algorithm` (QAOA uses the depth-1 angles).
    pub fn default_for(algorithm: Algorithm) -> Result<Self> {
        Ok(match algorithm {
            Algorithm::Greedy => Solver::Greedy,
            Algorithm::RecursiveGreedy => Solver::RecursiveGreedy,
            Algorithm::MfAoa => Solver::MfAoa(MfConfig::default()),
            Algorithm::Qaoa => Solver::Qaoa(QaoaSolver::from_table(1)?),
            Algorithm::BruteForce => Solver::BruteForce,
        })
    }

    pub fn solve(&self, seq: &CarSequence) -> Result<(Colouring, usize)> {
        Ok(match self {
            Solver::Greedy => {
                let r = greedy(seq);
                (r.colouring, r.swaps)
            }
            Solver::RecursiveGreedy => {
                let r = recursive_greedy(seq);
                (r.colouring, r.swaps)
            }
            Solver::MfAoa(cfg) => {
                let r = mfaoa::run(seq, cfg)?;
                (r.colouring, r.swaps)
            }
            Solver::Qaoa(q) => {
                let r = solve_qaoa(seq, q)?;
                (r.colouring, r.swaps)
            }
            Solver::BruteForce => {
                let r = brute_force(seq)?;
                (r.colouring, r.swaps)
            }
        })
    }
}

/// One solved instance. The ratio is derived from the exact (swaps, n) pair.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub n: usize,
    pub algorithm: Algorithm,
    /// Seed the instance was generated from.
    pub seed: u64,
    pub instance: usize,
    pub swaps: usize,
    /// Wall time in milliseconds; 0 when timing is off.
    pub wall_ms: f64,
}

impl RunRecord {
    pub fn ratio(&self) -> f64 {
        self.swaps as f64 / self.n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub n: usize,
    #[serde(rename = "algo")]
    pub algorithm: Algorithm,
    pub count: usize,
    pub mean_ratio: f64,
    /// Bessel-corrected sample standard deviation of the per-instance
    /// ratios; absent for a single instance.
    pub std_ratio: Option<f64>,
}

impl EnsembleStats {
    /// Aggregates records of one (n, algorithm) group. One pass, Welford.
    pub fn from_records(records: &[RunRecord]) -> Result<Self> {
        let first = records
            .first()
            .ok_or_else(|| Error::invalid("statistics need at least one record"))?;
        if records.iter().any(|r| r.n != first.n || r.algorithm != first.algorithm) {
            return Err(Error::invalid("records mix instance sizes or algorithms"));
        }
        let mut mean = 0.0;
        let mut m2 = 0.0;
        for (k, r) in records.iter().enumerate() {
            let x = r.ratio();
            let delta = x - mean;
            mean += delta / (k + 1) as f64;
            m2 += delta * (x - mean);
        }
        let count = records.len();
        let total: usize = records.iter().map(|r| r.swaps).sum();
        Ok(EnsembleStats {
            n: first.n,
            algorithm: first.algorithm,
            count,
            mean_ratio: total as f64 / (count * first.n) as f64,
            std_ratio: (count >= 2).then(|| (m2 / (count - 1) as f64).sqrt()),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Worker threads; 0 uses rayon's global pool.
    pub workers: usize,
    /// Measure per-instance wall time. Off keeps the output reproducible.
    pub timing: bool,
}

#[derive(Debug, Clone)]
pub struct Ensemble {
    pub stats: EnsembleStats,
    pub records: Vec<RunRecord>,
}

/// Solves `spec.count` random instances and aggregates the ratios. Records
/// come back ordered by instance index whatever the worker count.
pub fn monte_carlo(solver: &Solver, spec: EnsembleSpec, options: RunOptions) -> Result<Ensemble> {
    if spec.count == 0 {
        return Err(Error::invalid("ensemble needs at least one instance"));
    }
    if spec.n == 0 {
        return Err(Error::invalid("instance size n must be at least 1"));
    }
    let algorithm = solver.algorithm();
    let job = |instance: usize| -> Result<RunRecord> {
        let seed = derive_seed(spec.seed, instance as u64);
        let seq = generate_instance(spec.n, seed)?;
        let start = Instant::now();
        let (_, swaps) = solver.solve(&seq)?;
        let wall_ms = if options.timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        Ok(RunRecord {
            n: spec.n,
            algorithm,
            seed,
            instance,
            swaps,
            wall_ms,
        })
    };
    let run_all = || (0..spec.count).into_par_iter().map(job).collect::<Result<Vec<_>>>();
    let records = if options.workers == 0 {
        run_all()?
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(options.workers)
            .build()
            .map_err(|e| Error::invalid(format!("cannot start {} workers: {e}", options.workers)))?
            .install(run_all)?
    };
    Ok(Ensemble {
        stats: EnsembleStats::from_records(&records)?,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
            assert_eq!(serde_json::to_string(&a).unwrap(), format!("\"{}\"", a.name()));
        }
        assert_eq!("sa".parse::<Algorithm>().unwrap_err().kind(), "invalid-argument");
    }

    #[test]
    fn stats_of_a_single_record() {
        let r = RunRecord {
            n: 4,
            algorithm: Algorithm::Greedy,
            seed: 0,
            instance: 0,
            swaps: 3,
            wall_ms: 0.0,
        };
        let s = EnsembleStats::from_records(&[r]).unwrap();
        assert_eq!(s.mean_ratio, 0.75);
        assert_eq!(s.std_ratio, None);
        assert!(EnsembleStats::from_records(&[]).is_err());
    }

    #[test]
    fn ensemble_is_ordered_and_reproducible() {
        let spec = EnsembleSpec {
            n: 30,
            count: 40,
            seed: 9,
        };
        let a = monte_carlo(
            &Solver::Greedy,
            spec,
            RunOptions {
                workers: 1,
                timing: false,
            },
        )
        .unwrap();
        let b = monte_carlo(
            &Solver::Greedy,
            spec,
            RunOptions {
                workers: 3,
                timing: false,
            },
        )
        .unwrap();
        assert_eq!(a.records, b.records);
        assert!(a.records.iter().enumerate().all(|(i, r)| r.instance == i));
        assert_eq!(a.records[5].seed, derive_seed(9, 5));
    }

    #[test]
    fn empty_ensemble_is_rejected() {
        let spec = EnsembleSpec {
            n: 3,
            count: 0,
            seed: 0,
        };
        assert!(monte_carlo(&Solver::Greedy, spec, RunOptions::default()).is_err());
    }

    #[test]
    fn qaoa_readout_is_valid() {
        let seq = generate_instance(6, 1).unwrap();
        let out = solve_qaoa(&seq, &QaoaSolver::from_table(2).unwrap()).unwrap();
        assert!(crate::colouring::validate(&seq, &out.colouring).unwrap().is_empty());
        assert!(out.probability > 0.0 && out.probability <= 1.0);
    }
}
