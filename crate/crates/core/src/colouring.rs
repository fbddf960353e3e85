use crate::error::{Error, Result};
use crate::instance::CarSequence;

/// A binary paint assignment, one colour (0 or 1) per sequence position.
///
/// Validity against an instance is checked by [`validate`]; an invalid
/// colouring can still be represented and scored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Colouring {
    bits: Vec<u8>,
}

impl Colouring {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(pos) = bits.iter().position(|&b| b > 1) {
            return Err(Error::invalid(format!(
                "colour at position {pos} is {}, expected 0 or 1",
                bits[pos]
            )));
        }
        Ok(Colouring { bits })
    }

    pub(crate) fn from_bits_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(bits.iter().all(|&b| b <= 1));
        Colouring { bits }
    }

    pub fn constant(len: usize, colour: u8) -> Self {
        Colouring::from_bits_unchecked(vec![colour & 1; len])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Swaps every colour.
    pub fn complement(&self) -> Self {
        Colouring::from_bits_unchecked(self.bits.iter().map(|b| b ^ 1).collect())
    }
}

fn check_len(seq: &CarSequence, f: &Colouring) -> Result<()> {
    if seq.len() != f.len() {
        return Err(Error::invalid(format!(
            "colouring has length {} but the sequence has length {}",
            f.len(),
            seq.len()
        )));
    }
    Ok(())
}

/// Number of colour changes between consecutive cars. Validity is not
/// required.
pub fn swap_count(seq: &CarSequence, f: &Colouring) -> Result<usize> {
    check_len(seq, f)?;
    Ok(f.bits.windows(2).filter(|w| w[0] != w[1]).count())
}

/// Car types whose two occurrences share a colour, in increasing order.
/// Empty means the colouring is valid.
pub fn validate(seq: &CarSequence, f: &Colouring) -> Result<Vec<usize>> {
    check_len(seq, f)?;
    Ok((0..seq.n())
        .filter(|&car| {
            let [a, b] = seq.positions(car);
            f.bits[a] == f.bits[b]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example() -> CarSequence {
        CarSequence::new(vec![0, 1, 0, 2, 2, 1]).unwrap()
    }

    fn col(bits: &[u8]) -> Colouring {
        Colouring::new(bits.to_vec()).unwrap()
    }

    #[test]
    fn example_swap_counts() {
        let s = example();
        assert_eq!(swap_count(&s, &col(&[0, 0, 1, 1, 0, 1])).unwrap(), 3);
        assert_eq!(swap_count(&s, &col(&[0, 1, 1, 1, 0, 0])).unwrap(), 2);
        assert_eq!(swap_count(&s, &Colouring::constant(6, 1)).unwrap(), 0);
    }

    #[test]
    fn example_validation() {
        let s = example();
        assert!(validate(&s, &col(&[0, 0, 1, 1, 0, 1])).unwrap().is_empty());
        assert_eq!(validate(&s, &col(&[0, 0, 0, 1, 0, 1])).unwrap(), vec![0]);
        assert!(validate(&s, &col(&[0, 0, 1, 1, 0, 1]).complement()).unwrap().is_empty());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let s = example();
        assert_eq!(swap_count(&s, &col(&[0, 1])).unwrap_err().kind(), "invalid-argument");
        assert!(validate(&s, &col(&[0, 1])).is_err());
    }

    #[test]
    fn non_binary_colour_is_rejected() {
        assert!(Colouring::new(vec![0, 2]).is_err());
    }
}
