#![allow(dead_code)]

use groupcrypt::graph::SimplicialGraph;
use groupcrypt::raag::{GroupWord, Letter};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Graph on `n` vertices whose edges are the set bits of `mask` over pairs
/// `(u, v)`, `u < v`, in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> SimplicialGraph {
    let mut g = SimplicialGraph::empty(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Every labelled graph on at most `exhaustive_n` vertices plus
/// `random_per_n` random graphs for each size up to `max_n`.
pub fn corpus(exhaustive_n: usize, max_n: usize, random_per_n: usize, seed: u64) -> Vec<SimplicialGraph> {
    let mut out = Vec::new();
    for n in 1..=exhaustive_n {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            out.push(graph_from_mask(n, mask));
        }
    }
    let mut r = rng(seed);
    for n in exhaustive_n + 1..=max_n {
        for _ in 0..random_per_n {
            let density = r.gen_range(0.2..0.9);
            out.push(SimplicialGraph::random(n, density, &mut r));
        }
    }
    out
}

pub fn letter(n: usize) -> BoxedStrategy<Letter> {
    (0..n, any::<bool>()).prop_map(|(g, i)| Letter::new(g, i)).boxed()
}

pub fn word(n: usize, max_len: usize) -> BoxedStrategy<GroupWord> {
    prop::collection::vec(letter(n), 0..=max_len)
        .prop_map(GroupWord)
        .boxed()
}

pub fn graph(max_n: usize) -> BoxedStrategy<SimplicialGraph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), 0..1u64 << pairs)
        })
        .prop_map(|(n, mask)| graph_from_mask(n, mask))
        .boxed()
}

/// A graph with a word and a second word over its vertices.
pub fn graph_and_words(max_n: usize, max_len: usize) -> BoxedStrategy<(SimplicialGraph, GroupWord, GroupWord)> {
    graph(max_n)
        .prop_flat_map(move |g| {
            let n = g.n();
            (Just(g), word(n, max_len), word(n, max_len))
        })
        .boxed()
}

/// Brute-force Hamiltonicity: tries every ordering that starts at vertex 0.
pub fn brute_force_hamiltonian(g: &SimplicialGraph) -> bool {
    let n = g.n();
    if n < 3 {
        return false;
    }
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        let closes = g.has_edge(0, rest[0]) && g.has_edge(rest[n - 2], 0);
        if closes && rest.windows(2).all(|w| g.has_edge(w[0], w[1])) {
            return true;
        }
        if !next_permutation(&mut rest) {
            return false;
        }
    }
}

pub fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).unwrap();
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
