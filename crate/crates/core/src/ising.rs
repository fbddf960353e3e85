//! Exact reduction of a paint shop instance to a zero-field Ising model.
//!
//! Each car type becomes one spin whose sign encodes the colour given to the
//! type's first appearance (colour 0 ↦ +1). Walking the sequence, every pair
//! of adjacent cars contributes one term: −1 on the pair's edge when both are
//! first or both are second appearances, +1 when the appearances are mixed,
//! and a constant when the two cars are the same type. With the ½ prefactor
//!
//! ```text
//! H(z) = ½ Σ_{(i,j)∈E} J_ij z_i z_j + c′/2,   c′ = 2n − 1 + #same-type adjacencies
//! ```
//!
//! equals the number of colour changes of the corresponding colouring.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::colouring::{validate, Colouring};
use crate::error::{Error, Result};
use crate::instance::CarSequence;

/// Coupling between spins `i < j`. The weight is never zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsingModel {
    spins: usize,
    edges: Vec<Edge>,
    constant: i64,
    contributions: usize,
    same_type: usize,
    /// Symmetric adjacency in CSR form: neighbours of spin i are
    /// `adj[offsets[i]..offsets[i + 1]]` as (neighbour, weight).
    offsets: Vec<usize>,
    adj: Vec<(usize, i32)>,
}

impl IsingModel {
    /// Builds a model from an edge list. Pairs are normalised to `i < j`,
    /// repeated pairs are summed and zero weights dropped.
    pub fn new(spins: usize, edges: impl IntoIterator<Item = (usize, usize, i32)>, constant: i64) -> Result<Self> {
        if spins == 0 {
            return Err(Error::invalid("an Ising model needs at least one spin"));
        }
        let mut raw = Vec::new();
        for (a, b, w) in edges {
            if a == b || a >= spins || b >= spins {
                return Err(Error::invalid(format!("bad edge ({a}, {b}) for {spins} spins")));
            }
            raw.push((a.min(b), a.max(b), w));
        }
        Ok(Self::assemble(spins, raw, constant, 0, 0))
    }

    fn assemble(
        spins: usize,
        mut raw: Vec<(usize, usize, i32)>,
        constant: i64,
        contributions: usize,
        same_type: usize,
    ) -> Self {
        raw.sort_unstable();
        let mut edges: Vec<Edge> = Vec::with_capacity(raw.len());
        for (i, j, w) in raw {
            match edges.last_mut() {
                Some(e) if e.i == i && e.j == j => e.weight += w,
                _ => edges.push(Edge { i, j, weight: w }),
            }
        }
        edges.retain(|e| e.weight != 0);

        let mut degree = vec![0usize; spins];
        for e in &edges {
            degree[e.i] += 1;
            degree[e.j] += 1;
        }
        let mut offsets = Vec::with_capacity(spins + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..spins].to_vec();
        let mut adj = vec![(0usize, 0i32); offsets[spins]];
        for e in &edges {
            adj[fill[e.i]] = (e.j, e.weight);
            fill[e.i] += 1;
            adj[fill[e.j]] = (e.i, e.weight);
            fill[e.j] += 1;
        }

        IsingModel {
            spins,
            edges,
            constant,
            contributions,
            same_type,
            offsets,
            adj,
        }
    }

    pub fn spins(&self) -> usize {
        self.spins
    }

    /// Surviving edges sorted by `(i, j)`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// The additive constant c′ (the energy offset is c′/2).
    pub fn constant(&self) -> i64 {
        self.constant
    }

    /// Number of ±1 terms accumulated before cancellation.
    pub fn contributions(&self) -> usize {
        self.contributions
    }

    /// Number of adjacent same-type pairs folded into the constant.
    pub fn same_type_adjacencies(&self) -> usize {
        self.same_type
    }

    /// Neighbours of spin `i` with their coupling weights.
    pub fn neighbours(&self, i: usize) -> &[(usize, i32)] {
        &self.adj[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Twice the energy of a ±1 configuration, without validation.
    pub fn doubled_energy_of(&self, z: &[i8]) -> i64 {
        let coupling: i64 = self
            .edges
            .iter()
            .map(|e| i64::from(e.weight) * i64::from(z[e.i]) * i64::from(z[e.j]))
            .sum();
        coupling + self.constant
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&IsingJson::from(self)).expect("model serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: IsingJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        IsingModel::new(
            parsed.n,
            parsed
                .edges
                .into_iter()
                .map(|[i, j, w]| (i as usize, j as usize, w as i32)),
            parsed.constant,
        )
    }

    pub fn write_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }
}

/// On-disk form: `{"n": .., "edges": [[i, j, w], ..], "constant": ..}`.
#[derive(Debug, Serialize, Deserialize)]
struct IsingJson {
    n: usize,
    edges: Vec<[i64; 3]>,
    constant: i64,
}

impl From<&IsingModel> for IsingJson {
    fn from(m: &IsingModel) -> Self {
        IsingJson {
            n: m.spins,
            edges: m
                .edges
                .iter()
                .map(|e| [e.i as i64, e.j as i64, i64::from(e.weight)])
                .collect(),
            constant: m.constant,
        }
    }
}

/// Reduces an instance to its Ising model.
pub fn to_ising(seq: &CarSequence) -> IsingModel {
    let n = seq.n();
    let mut raw = Vec::with_capacity(seq.len());
    let mut same_type = 0;
    for pos in 0..seq.len() - 1 {
        let (a, b) = (seq.car(pos), seq.car(pos + 1));
        if a == b {
            same_type += 1;
            continue;
        }
        let weight = if seq.occurrence(pos) == seq.occurrence(pos + 1) {
            -1
        } else {
            1
        };
        raw.push((a.min(b), a.max(b), weight));
    }
    let contributions = raw.len();
    let constant = (2 * n - 1 + same_type) as i64;
    IsingModel::assemble(n, raw, constant, contributions, same_type)
}

/// A configuration of ±1 spins.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinAssignment {
    values: Vec<i8>,
}

impl SpinAssignment {
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if let Some(pos) = values.iter().position(|&v| v != 1 && v != -1) {
            return Err(Error::invalid(format!("spin {pos} is {}, expected ±1", values[pos])));
        }
        Ok(SpinAssignment { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<i8>) -> Self {
        SpinAssignment { values }
    }

    /// Spin configuration of basis index `index`: bit i = 0 ↦ +1, 1 ↦ −1.
    pub fn from_index(index: u64, spins: usize) -> Self {
        SpinAssignment {
            values: (0..spins).map(|i| if (index >> i) & 1 == 0 { 1 } else { -1 }).collect(),
        }
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn flipped(&self) -> Self {
        SpinAssignment {
            values: self.values.iter().map(|v| -v).collect(),
        }
    }
}

/// An exact half-integer energy, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Energy {
    doubled: i64,
}

impl Energy {
    pub fn from_doubled(doubled: i64) -> Self {
        Energy { doubled }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    /// The energy as an integer, when it is one.
    pub fn as_integer(self) -> Option<i64> {
        (self.doubled % 2 == 0).then_some(self.doubled / 2)
    }

    pub fn as_f64(self) -> f64 {
        self.doubled as f64 / 2.0
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_integer() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}", self.as_f64()),
        }
    }
}

/// Exact evaluation of ½ Σ J_ij z_i z_j + c′/2.
pub fn energy(model: &IsingModel, z: &SpinAssignment) -> Result<Energy> {
    if z.len() != model.spins() {
        return Err(Error::invalid(format!(
            "assignment has {} spins, model has {}",
            z.len(),
            model.spins()
        )));
    }
    Ok(Energy::from_doubled(model.doubled_energy_of(&z.values)))
}

/// Spin of each car type from the colour at its first appearance
/// (colour 0 ↦ +1). The colouring must be valid.
pub fn spins_from_colouring(seq: &CarSequence, f: &Colouring) -> Result<SpinAssignment> {
    let violations = validate(seq, f)?;
    if !violations.is_empty() {
        return Err(Error::ConstraintViolation { types: violations });
    }
    let values = (0..seq.n())
        .map(|car| if f.bits()[seq.positions(car)[0]] == 0 { 1 } else { -1 })
        .collect();
    Ok(SpinAssignment::from_values_unchecked(values))
}

/// The valid colouring encoded by a spin configuration.
pub fn colouring_from_spins(seq: &CarSequence, z: &SpinAssignment) -> Result<Colouring> {
    if z.len() != seq.n() {
        return Err(Error::invalid(format!(
            "assignment has {} spins, instance has {} car types",
            z.len(),
            seq.n()
        )));
    }
    let mut bits = vec![0u8; seq.len()];
    for (car, &spin) in z.values.iter().enumerate() {
        let first = if spin > 0 { 0 } else { 1 };
        let [a, b] = seq.positions(car);
        bits[a] = first;
        bits[b] = first ^ 1;
    }
    Ok(Colouring::from_bits_unchecked(bits))
}

/// Empirical coupling statistics over an ensemble of models.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CouplingStats {
    pub models: usize,
    pub spins: usize,
    pub edges: usize,
    /// Edge count per coupling weight.
    pub weight_histogram: BTreeMap<i32, usize>,
    /// Spin count per number of incident surviving edges.
    pub degree_histogram: BTreeMap<usize, usize>,
}

impl CouplingStats {
    /// Fraction of edges carrying `weight`; zero when there are no edges.
    pub fn weight_fraction(&self, weight: i32) -> f64 {
        if self.edges == 0 {
            return 0.0;
        }
        *self.weight_histogram.get(&weight).unwrap_or(&0) as f64 / self.edges as f64
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges as f64 / self.spins as f64
    }

    pub fn edges_per_spin(&self) -> f64 {
        self.edges as f64 / self.spins as f64
    }
}

pub fn coupling_stats(models: &[IsingModel]) -> Result<CouplingStats> {
    if models.is_empty() {
        return Err(Error::invalid("coupling statistics need at least one model"));
    }
    let mut stats = CouplingStats {
        models: models.len(),
        spins: 0,
        edges: 0,
        weight_histogram: BTreeMap::new(),
        degree_histogram: BTreeMap::new(),
    };
    for m in models {
        stats.spins += m.spins();
        stats.edges += m.edges().len();
        for e in m.edges() {
            *stats.weight_histogram.entry(e.weight).or_default() += 1;
        }
        for i in 0..m.spins() {
            *stats.degree_histogram.entry(m.degree(i)).or_default() += 1;
        }
    }
    Ok(stats)
}
