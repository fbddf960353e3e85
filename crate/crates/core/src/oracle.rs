//! Exhaustive minimisation for small instances.

use crate::colouring::{swap_count, Colouring};
use crate::error::{Error, Result};
use crate::instance::CarSequence;
use crate::ising::{colouring_from_spins, to_ising, SpinAssignment};

/// Largest n the quotient enumeration accepts (2^23 classes).
pub const BRUTE_FORCE_MAX_N: usize = 24;
/// Largest n the unreduced cross-check accepts.
pub const FULL_ENUMERATION_MAX_N: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub swaps: usize,
    pub colouring: Colouring,
}

/// Minimum number of colour changes and one optimal colouring.
///
/// Enumerates the 2^(n−1) spin configurations with the last spin fixed to +1
/// (the cost is invariant under a global flip) in Gray-code order, updating
/// the Ising energy incrementally.
pub fn brute_force(seq: &CarSequence) -> Result<Optimum> {
    let n = seq.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::ResourceLimit {
            what: "brute-force instance size",
            requested: n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    let model = to_ising(seq);
    let mut z = vec![1i8; n];
    let mut doubled = model.doubled_energy_of(&z);
    let mut best = (doubled, 0u64);
    let free = n - 1;
    for step in 1..(1u64 << free) {
        let k = step.trailing_zeros() as usize;
        let local: i64 = model
            .neighbours(k)
            .iter()
            .map(|&(j, w)| i64::from(w) * i64::from(z[j]))
            .sum();
        doubled -= 2 * i64::from(z[k]) * local;
        z[k] = -z[k];
        if doubled < best.0 {
            best = (doubled, step ^ (step >> 1));
        }
    }
    let (doubled, gray) = best;
    let spins = SpinAssignment::from_index(gray, n);
    let colouring = colouring_from_spins(seq, &spins)?;
    debug_assert_eq!(swap_count(seq, &colouring)? as i64 * 2, doubled);
    Ok(Optimum {
        swaps: (doubled / 2) as usize,
        colouring,
    })
}

/// Minimum over all 2^n spin configurations, scored by counting colour
/// changes directly. Cross-check for [`brute_force`].
pub fn brute_force_full(seq: &CarSequence) -> Result<usize> {
    let n = seq.n();
    if n > FULL_ENUMERATION_MAX_N {
        return Err(Error::ResourceLimit {
            what: "full enumeration instance size",
            requested: n,
            limit: FULL_ENUMERATION_MAX_N,
        });
    }
    let mut best = usize::MAX;
    for index in 0..(1u64 << n) {
        let f = colouring_from_spins(seq, &SpinAssignment::from_index(index, n))?;
        best = best.min(swap_count(seq, &f)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::validate;

    fn seq(v: &[usize]) -> CarSequence {
        CarSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_optima() {
        assert_eq!(brute_force(&seq(&[0, 0])).unwrap().swaps, 1);
        let s = seq(&[0, 1, 0, 2, 2, 1]);
        let opt = brute_force(&s).unwrap();
        assert_eq!(opt.swaps, 2);
        assert!(validate(&s, &opt.colouring).unwrap().is_empty());
        assert_eq!(swap_count(&s, &opt.colouring).unwrap(), 2);
    }

    #[test]
    fn all_n_two_sequences() {
        // Lexicographic order: 0011 0101 0110 1001 1010 1100.
        let seqs = [
            [0, 0, 1, 1],
            [0, 1, 0, 1],
            [0, 1, 1, 0],
            [1, 0, 0, 1],
            [1, 0, 1, 0],
            [1, 1, 0, 0],
        ];
        let minima: Vec<_> = seqs.iter().map(|s| brute_force(&seq(s)).unwrap().swaps).collect();
        assert_eq!(minima, vec![2, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn size_cap() {
        let s = crate::instance::generate_instance(BRUTE_FORCE_MAX_N + 1, 3).unwrap();
        assert_eq!(brute_force(&s).unwrap_err().kind(), "resource-limit");
        let s = crate::instance::generate_instance(FULL_ENUMERATION_MAX_N + 1, 3).unwrap();
        assert!(brute_force_full(&s).is_err());
    }
}
