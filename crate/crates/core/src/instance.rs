//! Problem instances: sequences of 2n cars in which each of the n car types
//! appears exactly twice.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rng::SeededRng;

/// Whether a position holds the first or second appearance of its car type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Occurrence {
    First,
    Second,
}

/// A validated BPSP instance.
///
/// Car types are identified by `0..n`. The occurrence table is computed once
/// at construction and shared by every consumer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarSequence {
    seq: Vec<usize>,
    positions: Vec<[usize; 2]>,
}

impl CarSequence {
    /// Builds an instance from a raw sequence, checking that it has even
    /// length 2n and that every type in `0..n` occurs exactly twice.
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        if seq.is_empty() || !seq.len().is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "sequence length must be a positive even number, got {}",
                seq.len()
            )));
        }
        let n = seq.len() / 2;
        let mut positions = vec![[usize::MAX; 2]; n];
        let mut counts = vec![0u8; n];
        for (pos, &car) in seq.iter().enumerate() {
            if car >= n {
                return Err(Error::invalid(format!(
                    "car type {car} at position {pos} is outside 0..{n}"
                )));
            }
            if counts[car] == 2 {
                return Err(Error::invalid(format!("car type {car} occurs more than twice")));
            }
            positions[car][counts[car] as usize] = pos;
            counts[car] += 1;
        }
        if let Some(car) = counts.iter().position(|&c| c != 2) {
            return Err(Error::invalid(format!("car type {car} does not occur exactly twice")));
        }
        Ok(CarSequence { seq, positions })
    }

    /// Number of car types.
    pub fn n(&self) -> usize {
        self.positions.len()
    }

    /// Sequence length, always `2 * n`.
    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    /// Car type at `pos`.
    pub fn car(&self, pos: usize) -> usize {
        self.seq[pos]
    }

    /// Positions of the first and second appearance of `car`.
    pub fn positions(&self, car: usize) -> [usize; 2] {
        self.positions[car]
    }

    pub fn occurrence(&self, pos: usize) -> Occurrence {
        if self.positions[self.seq[pos]][0] == pos {
            Occurrence::First
        } else {
            Occurrence::Second
        }
    }

    /// Car types ordered by the position of their first appearance.
    pub fn types_by_first_occurrence(&self) -> impl Iterator<Item = usize> + '_ {
        self.seq
            .iter()
            .enumerate()
            .filter(|&(pos, &car)| self.positions[car][0] == pos)
            .map(|(_, &car)| car)
    }

    /// Number of adjacent positions holding the same car type.
    pub fn same_type_adjacencies(&self) -> usize {
        self.seq.windows(2).filter(|w| w[0] == w[1]).count()
    }

    pub fn read_from(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        text.parse()
    }

    pub fn write_to(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_string()).map_err(|e| Error::io(path, e))
    }
}

/// Draws a uniformly random arrangement of the multiset {0,0,1,1,…,n−1,n−1}.
///
/// Deterministic in `seed` on every platform (see [`crate::rng`]).
pub fn generate_instance(n: usize, seed: u64) -> Result<CarSequence> {
    if n == 0 {
        return Err(Error::invalid("instance size n must be at least 1"));
    }
    let mut seq: Vec<usize> = (0..2 * n).map(|i| i / 2).collect();
    SeededRng::new(seed).shuffle(&mut seq);
    CarSequence::new(seq)
}

/// Text format: `n` on the first line, the 2n car identifiers on the second.
impl fmt::Display for CarSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n())?;
        for (i, car) in self.seq.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{car}")?;
        }
        writeln!(f)
    }
}

impl FromStr for CarSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty instance file".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::Parse(format!("bad instance size {header:?}")))?;
        let seq = lines
            .flat_map(str::split_whitespace)
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad car identifier {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if seq.len() != 2 * n {
            return Err(Error::Parse(format!(
                "header says n = {n} but the sequence has {} entries",
                seq.len()
            )));
        }
        CarSequence::new(seq)
    }
}
