//! Mean-field approximate optimisation.
//!
//! Each spin is a classical unit vector n_i = (x, y, z) starting on the +x
//! axis. Step t applies two rotations per spin:
//!
//! * the problem rotation V^P in the x–y plane, by an angle proportional to
//!   γ_t and to the spin's effective magnetization m_i computed from the
//!   state before the step;
//! * the driver rotation V^D in the y–z plane, by 2 Δ_i β_t.
//!
//! With a linear schedule this is a Trotterised adiabatic sweep from the
//! driver's ground state (all spins along +x) to the problem's, and the
//! answer is read off as σ_i = sign(n_i^z).
//!
//! The cost is zero-field, so the all-zero z configuration is a fixed point.
//! One spin (the last, by default) is pinned to (0, 0, 1) to break the
//! global flip symmetry.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::colouring::{swap_count, Colouring};
use crate::error::{Error, Result};
use crate::instance::CarSequence;
use crate::ising::{colouring_from_spins, to_ising, IsingModel, SpinAssignment};

pub type Vec3 = [f64; 3];

const PINNED: Vec3 = [0.0, 0.0, 1.0];
const START: Vec3 = [1.0, 0.0, 0.0];

/// Rotation in the x–y plane: (x, y) ↦ (x cos θ + y sin θ, −x sin θ + y cos θ).
pub fn rotate_xy(v: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    [v[0] * c + v[1] * s, -v[0] * s + v[1] * c, v[2]]
}

/// Rotation in the y–z plane: (y, z) ↦ (y cos θ + z sin θ, −y sin θ + z cos θ).
pub fn rotate_yz(v: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    [v[0], v[1] * c + v[2] * s, -v[1] * s + v[2] * c]
}

fn norm(v: &Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct MfState {
    vectors: Vec<Vec3>,
    pinned: Option<usize>,
}

impl MfState {
    /// All spins on +x, except the pinned one which sits on +z.
    pub fn initial(spins: usize, pinned: Option<usize>) -> Result<Self> {
        if let Some(p) = pinned {
            if p >= spins {
                return Err(Error::invalid(format!(
                    "pinned spin {p} out of range for {spins} spins"
                )));
            }
        }
        let mut vectors = vec![START; spins];
        if let Some(p) = pinned {
            vectors[p] = PINNED;
        }
        Ok(MfState { vectors, pinned })
    }

    pub fn from_vectors(vectors: Vec<Vec3>, pinned: Option<usize>) -> Result<Self> {
        if let Some(p) = pinned {
            if p >= vectors.len() {
                return Err(Error::invalid(format!("pinned spin {p} out of range")));
            }
            if vectors[p] != PINNED {
                return Err(Error::invalid("pinned spin must be (0, 0, 1)"));
            }
        }
        Ok(MfState { vectors, pinned })
    }

    pub fn vectors(&self) -> &[Vec3] {
        &self.vectors
    }

    pub fn pinned(&self) -> Option<usize> {
        self.pinned
    }

    /// Largest deviation of any spin's norm from 1.
    pub fn max_norm_error(&self) -> f64 {
        self.vectors.iter().map(|v| (norm(v) - 1.0).abs()).fold(0.0, f64::max)
    }

    pub fn mean_abs_z(&self) -> f64 {
        self.vectors.iter().map(|v| v[2].abs()).sum::<f64>() / self.vectors.len() as f64
    }

    /// σ_i = sign(n_i^z), with sign(0) = +1.
    pub fn round(&self) -> SpinAssignment {
        SpinAssignment::from_values_unchecked(self.vectors.iter().map(|v| if v[2] >= 0.0 { 1 } else { -1 }).collect())
    }
}

/// Angles γ_t, β_t for t = 1…T.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub gammas: Vec<f64>,
    pub betas: Vec<f64>,
    pub tau: f64,
}

impl Schedule {
    pub fn steps(&self) -> usize {
        self.gammas.len()
    }
}

/// γ_t = τ t/T and β_t = τ (1 − t/T).
pub fn linear_schedule(steps: usize, tau: f64) -> Result<Schedule> {
    if steps == 0 {
        return Err(Error::invalid("schedule needs at least one step"));
    }
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::invalid(format!("step scale tau must be positive, got {tau}")));
    }
    let t_max = steps as f64;
    let (gammas, betas) = (1..=steps)
        .map(|t| {
            let s = t as f64 / t_max;
            (tau * s, tau * (1.0 - s))
        })
        .unzip();
    Ok(Schedule { gammas, betas, tau })
}

/// Number of time steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StepRule {
    /// T = max(1000, n).
    Auto,
    Fixed(usize),
}

impl StepRule {
    pub fn steps_for(self, n: usize) -> usize {
        match self {
            StepRule::Auto => n.max(1000),
            StepRule::Fixed(t) => t,
        }
    }
}

/// Which spin, if any, is held at +z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pin {
    Last,
    Index(usize),
    None,
}

impl Pin {
    fn resolve(self, spins: usize) -> Option<usize> {
        match self {
            Pin::Last => Some(spins - 1),
            Pin::Index(i) => Some(i),
            Pin::None => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MfConfig {
    /// Uniform driver strength Δ_i.
    pub delta: f64,
    pub steps: StepRule,
    /// Scale of the linear schedule.
    pub tau: f64,
    pub pin: Pin,
    /// Record a trajectory point every this many steps (0 = never).
    pub record_every: usize,
}

impl Default for MfConfig {
    fn default() -> Self {
        MfConfig {
            delta: 1.0,
            steps: StepRule::Auto,
            tau: 0.5,
            pin: Pin::Last,
            record_every: 0,
        }
    }
}

impl MfConfig {
    fn check(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::invalid(format!("delta must be positive, got {}", self.delta)));
        }
        if let StepRule::Fixed(0) = self.steps {
            return Err(Error::invalid("step count must be positive"));
        }
        Ok(())
    }
}

/// m_i = Σ_j J_ij n_j^z (zero local field). Each edge (i, j, w) contributes
/// w to both endpoints.
pub fn effective_magnetization(model: &IsingModel, state: &MfState, i: usize) -> Result<f64> {
    if i >= model.spins() || state.vectors.len() != model.spins() {
        return Err(Error::invalid(format!(
            "spin {i} out of range for a model with {} spins and a state with {}",
            model.spins(),
            state.vectors.len()
        )));
    }
    Ok(magnetization(model, &state.vectors, i))
}

fn magnetization(model: &IsingModel, vectors: &[Vec3], i: usize) -> f64 {
    model
        .neighbours(i)
        .iter()
        .map(|&(j, w)| f64::from(w) * vectors[j][2])
        .sum()
}

/// Problem-rotation angle for a spin with magnetization `m`.
///
/// The spin tracks the direction of its effective field, which would
/// maximise Σ J z z if the field were +m. The paint shop cost is minimised,
/// so the field along z is −m: the problem Hamiltonian of the dynamics is
/// the negated coupling form.
fn problem_angle(m: f64, gamma: f64) -> f64 {
    -2.0 * m * gamma
}

/// One step: V^P with magnetizations from the pre-step state, then V^D.
/// The pinned spin is left untouched.
pub fn step(state: &MfState, model: &IsingModel, gamma: f64, beta: f64, cfg: &MfConfig) -> MfState {
    let mut fields = vec![0.0; state.vectors.len()];
    let mut next = state.clone();
    advance(&mut next, model, gamma, beta, cfg.delta, &mut fields);
    next
}

fn advance(state: &mut MfState, model: &IsingModel, gamma: f64, beta: f64, delta: f64, fields: &mut [f64]) {
    for (i, m) in fields.iter_mut().enumerate() {
        *m = magnetization(model, &state.vectors, i);
    }
    let driver = 2.0 * delta * beta;
    for (i, v) in state.vectors.iter_mut().enumerate() {
        if Some(i) == state.pinned {
            continue;
        }
        *v = rotate_yz(rotate_xy(*v, problem_angle(fields[i], gamma)), driver);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub step: usize,
    pub mean_abs_z: f64,
    /// Energy of the state rounded at this step.
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct MfOutcome {
    pub spins: SpinAssignment,
    pub final_state: MfState,
    pub steps: usize,
    pub trajectory: Vec<TrajectoryPoint>,
}

/// Evolves the model under the linear schedule and rounds the result.
pub fn evolve_model(model: &IsingModel, cfg: &MfConfig) -> Result<MfOutcome> {
    cfg.check()?;
    let steps = cfg.steps.steps_for(model.spins());
    let schedule = linear_schedule(steps, cfg.tau)?;
    evolve_with_schedule(model, &schedule, cfg)
}

pub fn evolve_with_schedule(model: &IsingModel, schedule: &Schedule, cfg: &MfConfig) -> Result<MfOutcome> {
    cfg.check()?;
    let mut state = MfState::initial(model.spins(), cfg.pin.resolve(model.spins()))?;
    let mut fields = vec![0.0; model.spins()];
    let mut trajectory = Vec::new();
    let record = |state: &MfState, step: usize, out: &mut Vec<TrajectoryPoint>| {
        let z = state.round();
        out.push(TrajectoryPoint {
            step,
            mean_abs_z: state.mean_abs_z(),
            energy: model.doubled_energy_of(z.values()) as f64 / 2.0,
        });
    };
    if cfg.record_every > 0 {
        record(&state, 0, &mut trajectory);
    }
    for (t, (&gamma, &beta)) in schedule.gammas.iter().zip(&schedule.betas).enumerate() {
        advance(&mut state, model, gamma, beta, cfg.delta, &mut fields);
        let done = t + 1;
        if cfg.record_every > 0 && (done % cfg.record_every == 0 || done == schedule.steps()) {
            record(&state, done, &mut trajectory);
        }
    }
    Ok(MfOutcome {
        spins: state.round(),
        final_state: state,
        steps: schedule.steps(),
        trajectory,
    })
}

#[derive(Debug, Clone)]
pub struct MfRun {
    pub colouring: Colouring,
    pub swaps: usize,
    pub outcome: MfOutcome,
}

/// Solves an instance: reduce, evolve, round, convert back to a colouring.
pub fn run(seq: &CarSequence, cfg: &MfConfig) -> Result<MfRun> {
    let model = to_ising(seq);
    let outcome = evolve_model(&model, cfg)?;
    let colouring = colouring_from_spins(seq, &outcome.spins)?;
    let swaps = swap_count(seq, &colouring)?;
    Ok(MfRun {
        colouring,
        swaps,
        outcome,
    })
}

/// Writes `step,mean_abs_z,energy` rows.
pub fn write_trajectory_csv(path: impl AsRef<Path>, points: &[TrajectoryPoint]) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::from("step,mean_abs_z,energy\n");
    for p in points {
        out.push_str(&format!("{},{},{}\n", p.step, p.mean_abs_z, p.energy));
    }
    std::fs::File::create(path)
        .and_then(|mut f| f.write_all(out.as_bytes()))
        .map_err(|e| Error::io(path, e))
}
