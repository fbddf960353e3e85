//! Heuristics and the exhaustive oracle on random instances.

use bpsp_core::rng::SeededRng;
use bpsp_core::{
    brute_force, brute_force_full, generate_instance, greedy, recursive_greedy, swap_count, validate, CarSequence,
};

#[test]
fn heuristics_always_produce_valid_colourings() {
    let mut rng = SeededRng::new(99);
    for k in 0..1000u64 {
        let n = 1 + rng.below(200) as usize;
        let seq = generate_instance(n, k).unwrap();
        for r in [greedy(&seq), recursive_greedy(&seq)] {
            assert!(
                validate(&seq, &r.colouring).unwrap().is_empty(),
                "{} n={n} seed={k}",
                r.algorithm
            );
            assert_eq!(swap_count(&seq, &r.colouring).unwrap(), r.swaps);
            assert!(r.swaps < 2 * n);
        }
    }
}

#[test]
fn heuristics_never_beat_the_optimum() {
    for n in 1..=10 {
        for k in 0..50u64 {
            let seq = generate_instance(n, k).unwrap();
            let opt = brute_force(&seq).unwrap();
            assert!(validate(&seq, &opt.colouring).unwrap().is_empty());
            assert_eq!(swap_count(&seq, &opt.colouring).unwrap(), opt.swaps);
            assert!(greedy(&seq).swaps >= opt.swaps);
            assert!(recursive_greedy(&seq).swaps >= opt.swaps);
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    // Every sequence of length 2n with each type appearing twice.
    fn go(counts: &mut [u8], cur: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for t in 0..counts.len() {
            if counts[t] < 2 {
                counts[t] += 1;
                cur.push(t);
                go(counts, cur, len, out);
                cur.pop();
                counts[t] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0; n], &mut Vec::new(), 2 * n, &mut out);
    out
}

#[test]
fn quotient_enumeration_matches_full_enumeration_exhaustively() {
    for n in 1..=4 {
        for s in permutations(n) {
            let seq = CarSequence::new(s).unwrap();
            assert_eq!(brute_force(&seq).unwrap().swaps, brute_force_full(&seq).unwrap());
        }
    }
    for n in 5..=6 {
        for k in 0..200u64 {
            let seq = generate_instance(n, k).unwrap();
            assert_eq!(brute_force(&seq).unwrap().swaps, brute_force_full(&seq).unwrap());
        }
    }
}

#[test]
fn optimum_is_at_least_one_and_below_n() {
    for n in 1..=12 {
        for k in 0..20u64 {
            let seq = generate_instance(n, k).unwrap();
            let s = brute_force(&seq).unwrap().swaps;
            assert!(s >= 1 && s <= n, "n={n} swaps={s}");
        }
    }
}

#[test]
fn oracle_rejects_oversized_instances() {
    let seq = generate_instance(25, 1).unwrap();
    assert_eq!(brute_force(&seq).unwrap_err().kind(), "resource-limit");
    let seq = generate_instance(21, 1).unwrap();
    assert_eq!(brute_force_full(&seq).unwrap_err().kind(), "resource-limit");
}
