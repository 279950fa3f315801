#![allow(dead_code, clippy::needless_range_loop)]

pub mod oracle;

use hypersemi::{ElementSet, HyperOp};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn set(members: &[usize]) -> ElementSet {
    members.iter().copied().collect()
}

/// All subsets of `{0..n}`, including the empty one.
pub fn all_subsets(n: usize) -> Vec<ElementSet> {
    (0..1u32 << n).map(|b| ElementSet::from_bits(b).unwrap()).collect()
}

fn relabel(h: &HyperOp, perm: &[usize]) -> HyperOp {
    // new_cell(perm[a], perm[b]) = perm[old_cell(a, b)]
    let n = h.order();
    let mut inverse = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    HyperOp::from_fn(n, |a, b| {
        h.cell(inverse[a], inverse[b]).iter().map(|u| perm[u]).collect()
    })
    .unwrap()
}

/// Reflexive-transitive closure of a random relation, as up-sets.
fn random_upsets(n: usize, rng: &mut ChaCha8Rng) -> Vec<ElementSet> {
    let mut reach: Vec<u32> = (0..n).map(|x| 1 << x).collect();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(0.3) {
                reach[x] |= 1 << y;
            }
        }
    }
    for k in 0..n {
        for x in 0..n {
            if reach[x] >> k & 1 == 1 {
                reach[x] |= reach[k];
            }
        }
    }
    reach.into_iter().map(|b| ElementSet::from_bits(b).unwrap()).collect()
}

/// A hypersemigroup of the given order built from a seed. Mixes several
/// associative constructions with rejection sampling so the population
/// is not dominated by tables where every class holds.
pub fn seeded_hypersemigroup(order: usize, seed: u64) -> HyperOp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = order;
    let h = match seed % 6 {
        0 => {
            // Dense rejection sampling.
            let p = rng.gen_range(0.7..0.95);
            loop {
                let h = HyperOp::from_fn(n, |_, _| loop {
                    let s: ElementSet = (0..n).filter(|_| rng.gen_bool(p)).collect();
                    if !s.is_empty() {
                        break s;
                    }
                })
                .unwrap();
                if h.is_hypersemigroup() {
                    break h;
                }
            }
        }
        1 => {
            // x∘y = ↑x ∪ ↑y for a random preorder.
            let up = random_upsets(n, &mut rng);
            HyperOp::from_fn(n, |a, b| up[a].union(up[b])).unwrap()
        }
        2 => {
            // x∘y = ↑x.
            let up = random_upsets(n, &mut rng);
            HyperOp::from_fn(n, |a, _| up[a]).unwrap()
        }
        3 => {
            // x∘y = x + y + K in Z_n with K a subgroup.
            let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
            let step = *divisors.choose(&mut rng).unwrap();
            HyperOp::from_fn(n, |a, b| (0..n).step_by(step).map(|k| (a + b + k) % n).collect())
                .unwrap()
        }
        4 => {
            // A semigroup with singleton products.
            match rng.gen_range(0..5) {
                0 => HyperOp::from_fn(n, |a, b| set(&[a.max(b)])).unwrap(),
                1 => HyperOp::from_fn(n, |a, b| set(&[(a * b) % n])).unwrap(),
                2 => HyperOp::left_zero(n).unwrap(),
                3 => HyperOp::constant(n, 0).unwrap(),
                _ => HyperOp::from_fn(n, |a, b| set(&[a.min(b)])).unwrap(),
            }
        }
        _ => {
            // x∘y = ↑(x·y) over the max-semilattice with a random chain-compatible
            // preorder: use the standard chain so ↑ is monotone.
            HyperOp::from_fn(n, |a, b| (a.max(b)..n).collect()).unwrap()
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let h = relabel(&h, &perm);
    assert!(h.is_hypersemigroup(), "construction {} not associative", seed % 6);
    h
}
