use num_complex::Complex64;
use rayon::prelude::*;

use super::angles::AngleSet;
use crate::error::{Error, Result};
use crate::ising::IsingModel;

pub const DEFAULT_MAX_QUBITS: usize = 20;

/// Amplitudes over the 2^n computational basis states. Qubit i is bit i of
/// the basis index; bit value 0 is spin +1.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// |+⟩^⊗n.
    pub fn uniform(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        let amp = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        StateVector {
            amplitudes: vec![amp; dim],
        }
    }

    pub fn basis(qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        StateVector { amplitudes }
    }

    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if !amplitudes.len().is_power_of_two() {
            return Err(Error::invalid("amplitude count must be a power of two"));
        }
        Ok(StateVector { amplitudes })
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn qubits(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    /// Σ |a_b|².
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.par_iter().map(|a| a.norm_sqr()).sum()
    }

    /// Basis index of largest probability (lowest index on ties).
    pub fn most_likely(&self) -> usize {
        let mut best = (0, f64::NEG_INFINITY);
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p > best.1 {
                best = (i, p);
            }
        }
        best.0
    }

    fn apply_phase(&mut self, diag: &[f64], gamma: f64) {
        self.amplitudes
            .par_iter_mut()
            .zip(diag.par_iter())
            .for_each(|(a, &e)| *a *= Complex64::from_polar(1.0, -gamma * e));
    }

    /// exp(−iβ H_D) with driver H_D = −Σ X_j, i.e. exp(+iβ X) on every qubit.
    fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let diag = Complex64::new(c, 0.0);
        let off = Complex64::new(0.0, s);
        for q in 0..self.qubits() {
            let half = 1usize << q;
            self.amplitudes.par_chunks_mut(2 * half).for_each(|block| {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    *a = diag * x + off * y;
                    *b = off * x + diag * y;
                }
            });
        }
    }
}

/// Σ_b |a_b|² diag_b.
pub fn expectation(state: &StateVector, diag: &[f64]) -> Result<f64> {
    if state.amplitudes.len() != diag.len() {
        return Err(Error::invalid(format!(
            "state has {} amplitudes, diagonal has {} entries",
            state.amplitudes.len(),
            diag.len()
        )));
    }
    Ok(state
        .amplitudes
        .par_iter()
        .zip(diag.par_iter())
        .map(|(a, &e)| a.norm_sqr() * e)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Simulator {
    pub max_qubits: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

impl Simulator {
    pub fn with_max_qubits(max_qubits: usize) -> Self {
        Simulator { max_qubits }
    }

    fn check(&self, qubits: usize) -> Result<()> {
        if qubits > self.max_qubits || qubits >= usize::BITS as usize {
            return Err(Error::ResourceLimit {
                what: "qubit count",
                requested: qubits,
                limit: self.max_qubits,
            });
        }
        Ok(())
    }

    /// Energy (including c′/2) of every basis state.
    pub fn cost_diagonal(&self, model: &IsingModel) -> Result<Vec<f64>> {
        let n = model.spins();
        self.check(n)?;
        let edges = model.edges();
        let constant = model.constant();
        Ok((0..1usize << n)
            .into_par_iter()
            .map(|b| {
                let coupling: i64 = edges
                    .iter()
                    .map(|e| {
                        let parity = ((b >> e.i) ^ (b >> e.j)) & 1;
                        if parity == 0 {
                            i64::from(e.weight)
                        } else {
                            -i64::from(e.weight)
                        }
                    })
                    .sum();
                (coupling + constant) as f64 / 2.0
            })
            .collect())
    }

    /// Prepares |γ, β⟩ = Π_k U_D(β_k) U_P(γ_k) |+⟩.
    pub fn evolve(&self, model: &IsingModel, angles: &AngleSet) -> Result<StateVector> {
        let diag = self.cost_diagonal(model)?;
        Ok(self.evolve_diagonal(&diag, angles))
    }

    /// As [`Simulator::evolve`] with a precomputed cost diagonal.
    pub fn evolve_diagonal(&self, diag: &[f64], angles: &AngleSet) -> StateVector {
        let standard = angles.to_standard();
        let mut state = StateVector::uniform(diag.len().trailing_zeros() as usize);
        for (&gamma, &beta) in standard.gammas.iter().zip(&standard.betas) {
            state.apply_phase(diag, gamma);
            state.apply_mixer(beta);
        }
        state
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::CarSequence;
    use crate::ising::to_ising;
    use crate::qaoa::angles::Convention;

    fn example_model() -> IsingModel {
        to_ising(&CarSequence::new(vec![0, 1, 0, 2, 2, 1]).unwrap())
    }

    #[test]
    fn diagonal_examples() {
        let m = to_ising(&CarSequence::new(vec![0, 0]).unwrap());
        assert_eq!(Simulator::default().cost_diagonal(&m).unwrap(), vec![1.0, 1.0]);

        let diag = Simulator::default().cost_diagonal(&example_model()).unwrap();
        // z = (+1, +1, −1) is index 0b100.
        assert_eq!(diag[0b100], 3.0);
        assert_eq!(diag.iter().sum::<f64>() / 8.0, 3.0);
    }

    #[test]
    fn qubit_cap() {
        let m = example_model();
        let err = Simulator::with_max_qubits(2).cost_diagonal(&m).unwrap_err();
        assert_eq!(err.kind(), "resource-limit");
        let angles = AngleSet::new(vec![], vec![], Convention::Standard).unwrap();
        assert!(Simulator::with_max_qubits(2).evolve(&m, &angles).is_err());
    }

    #[test]
    fn empty_circuit_is_uniform() {
        let angles = AngleSet::new(vec![], vec![], Convention::Standard).unwrap();
        let s = Simulator::default().evolve(&example_model(), &angles).unwrap();
        let expected = 8f64.sqrt().recip();
        assert!(s
            .amplitudes()
            .iter()
            .all(|a| (a.re - expected).abs() < 1e-15 && a.im == 0.0));
    }

    #[test]
    fn basis_state_expectation() {
        let diag = Simulator::default().cost_diagonal(&example_model()).unwrap();
        for b in 0..8 {
            assert_eq!(expectation(&StateVector::basis(3, b), &diag).unwrap(), diag[b]);
        }
        assert!(expectation(&StateVector::basis(2, 0), &diag).is_err());
    }

    #[test]
    fn uniform_expectation_is_half_constant() {
        let diag = Simulator::default().cost_diagonal(&example_model()).unwrap();
        assert!((expectation(&StateVector::uniform(3), &diag).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn most_likely_prefers_low_index() {
        assert_eq!(StateVector::uniform(3).most_likely(), 0);
        assert_eq!(StateVector::basis(3, 5).most_likely(), 5);
    }
}
