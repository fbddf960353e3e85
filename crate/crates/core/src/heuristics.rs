//! Classical baselines: greedy and recursive greedy colouring.

use std::collections::BTreeSet;
use std::fmt;

use crate::colouring::{swap_count, Colouring};
use crate::instance::{CarSequence, Occurrence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heuristic {
    Greedy,
    RecursiveGreedy,
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::Greedy => "greedy",
            Heuristic::RecursiveGreedy => "rgreedy",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicResult {
    pub colouring: Colouring,
    pub swaps: usize,
    pub algorithm: Heuristic,
}

impl HeuristicResult {
    fn new(seq: &CarSequence, bits: Vec<u8>, algorithm: Heuristic) -> Self {
        let colouring = Colouring::from_bits_unchecked(bits);
        let swaps = swap_count(seq, &colouring).expect("lengths match by construction");
        HeuristicResult {
            colouring,
            swaps,
            algorithm,
        }
    }
}

/// Left-to-right pass: a first appearance repeats the previous colour (0 at
/// the start), a second appearance takes the opposite of its partner.
pub fn greedy(seq: &CarSequence) -> HeuristicResult {
    let mut bits = vec![0u8; seq.len()];
    for pos in 0..seq.len() {
        bits[pos] = match seq.occurrence(pos) {
            Occurrence::First => {
                if pos == 0 {
                    0
                } else {
                    bits[pos - 1]
                }
            }
            Occurrence::Second => bits[seq.positions(seq.car(pos))[0]] ^ 1,
        };
    }
    HeuristicResult::new(seq, bits, Heuristic::Greedy)
}

/// Recursive greedy.
///
/// Recursively: remove both appearances of the first car's type, colour the
/// remaining word, then put the pair back as (c, ¬c) with c chosen to
/// minimise the colour changes on the adjacencies touching the two
/// reinserted positions. Ties go to the colour of the left neighbour of the
/// first appearance, or 0 when it has none.
///
/// The removal order is the order of first appearances, so the recursion
/// unwinds as reinsertion in reverse first-appearance order, which is what
/// this loop does.
pub fn recursive_greedy(seq: &CarSequence) -> HeuristicResult {
    let order: Vec<usize> = seq.types_by_first_occurrence().collect();
    let mut bits = vec![0u8; seq.len()];
    let mut present: BTreeSet<usize> = BTreeSet::new();

    for &car in order.iter().rev() {
        let [first, second] = seq.positions(car);
        let left_of = |p: usize, present: &BTreeSet<usize>| present.range(..p).next_back().copied();
        let right_of = |p: usize, present: &BTreeSet<usize>| present.range(p + 1..).next().copied();

        // Neighbours in the word after reinsertion.
        let first_left = left_of(first, &present);
        let first_right = match right_of(first, &present) {
            Some(r) if r < second => Some(r),
            _ => Some(second),
        };
        let second_left = match left_of(second, &present) {
            Some(l) if l > first => Some(l),
            _ => Some(first),
        };
        let second_right = right_of(second, &present);

        let cost = |c: u8| -> usize {
            let colour_at = |p: usize| {
                if p == first {
                    c
                } else if p == second {
                    c ^ 1
                } else {
                    bits[p]
                }
            };
            let mut changes = 0;
            // The (first, second) adjacency, if any, is seen from both sides; count it once.
            for (a, b) in [(first_left, Some(first)), (Some(first), first_right)] {
                if let (Some(a), Some(b)) = (a, b) {
                    changes += usize::from(colour_at(a) != colour_at(b));
                }
            }
            for (a, b) in [(second_left, Some(second)), (Some(second), second_right)] {
                if let (Some(a), Some(b)) = (a, b) {
                    if a == first && b == second {
                        continue;
                    }
                    changes += usize::from(colour_at(a) != colour_at(b));
                }
            }
            changes
        };

        let (zero, one) = (cost(0), cost(1));
        let c = match zero.cmp(&one) {
            std::cmp::Ordering::Less => 0,
            std::cmp::Ordering::Greater => 1,
            std::cmp::Ordering::Equal => first_left.map_or(0, |l| bits[l]),
        };
        bits[first] = c;
        bits[second] = c ^ 1;
        present.insert(first);
        present.insert(second);
    }
    HeuristicResult::new(seq, bits, Heuristic::RecursiveGreedy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::validate;

    fn seq(v: &[usize]) -> CarSequence {
        CarSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let r = greedy(&seq(&[0, 1, 0, 2, 2, 1]));
        assert_eq!(r.colouring.bits(), &[0, 0, 1, 1, 0, 1]);
        assert_eq!(r.swaps, 3);
        let r = greedy(&seq(&[0, 0]));
        assert_eq!((r.colouring.bits(), r.swaps), (&[0u8, 1][..], 1));
        let r = greedy(&seq(&[0, 1, 0, 1]));
        assert_eq!((r.colouring.bits(), r.swaps), (&[0u8, 0, 1, 1][..], 1));
    }

    #[test]
    fn recursive_greedy_examples() {
        assert_eq!(recursive_greedy(&seq(&[0, 0])).swaps, 1);
        assert_eq!(recursive_greedy(&seq(&[0, 0, 1, 1])).swaps, 2);
        assert_eq!(recursive_greedy(&seq(&[0, 1, 0, 1])).swaps, 1);
        // Optimal here, where greedy needs 3.
        let r = recursive_greedy(&seq(&[0, 1, 0, 2, 2, 1]));
        assert_eq!(r.swaps, 2);
        assert!(validate(&seq(&[0, 1, 0, 2, 2, 1]), &r.colouring).unwrap().is_empty());
    }

    #[test]
    fn results_are_tagged() {
        assert_eq!(greedy(&seq(&[0, 0])).algorithm, Heuristic::Greedy);
        assert_eq!(recursive_greedy(&seq(&[0, 0])).algorithm.to_string(), "rgreedy");
    }
}
