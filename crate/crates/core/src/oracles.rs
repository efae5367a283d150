//! Brute-force reference procedures. They share no code with the fast
//! algorithms they audit and give up with [`OracleError::Exhausted`] instead of
//! answering past their budget.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::graph::SimplicialGraph;
use crate::polycyclic::GroupOps;
use crate::raag::{GroupWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBudget {
    pub max_word_len: usize,
    pub max_exponent: u64,
    pub max_group_size: u128,
    /// Words visited (closure searches) or candidates tried (scans).
    pub step_ceiling: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_word_len: 64,
            max_exponent: 64,
            max_group_size: 1_000_000,
            step_ceiling: 5_000_000,
        }
    }
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle budget exhausted: {0}")]
    Exhausted(String),
    #[error("letter {letter} is not a vertex of a graph on {n} vertices")]
    BadLetter { letter: String, n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WordVerdict {
    Trivial,
    Nontrivial,
}

fn check_letters(graph: &SimplicialGraph, w: &GroupWord) -> Result<(), OracleError> {
    match w.letters().iter().find(|l| l.generator >= graph.n()) {
        Some(l) => Err(OracleError::BadLetter {
            letter: l.to_string(),
            n: graph.n(),
        }),
        None => Ok(()),
    }
}

fn first_cancellation(w: &[Letter]) -> Option<usize> {
    w.windows(2).position(|p| p[0].cancels(p[1]))
}

/// Decides triviality in `A(graph)` by exploring every rearrangement under
/// swaps of adjacent commuting letters. Whenever a rearrangement exposes an
/// adjacent `x x⁻¹`, the pair is deleted and the search restarts from the
/// shorter word.
pub fn word_oracle(
    graph: &SimplicialGraph,
    w: &GroupWord,
    budget: &OracleBudget,
) -> Result<WordVerdict, OracleError> {
    check_letters(graph, w)?;
    if w.len() > budget.max_word_len {
        return Err(OracleError::Exhausted(format!(
            "word length {} above {}",
            w.len(),
            budget.max_word_len
        )));
    }
    let mut steps = 0u64;
    let mut current: Vec<Letter> = w.letters().to_vec();
    'restart: loop {
        if current.is_empty() {
            return Ok(WordVerdict::Trivial);
        }
        let mut seen: HashSet<Vec<Letter>> = HashSet::from([current.clone()]);
        let mut queue = VecDeque::from([current.clone()]);
        while let Some(word) = queue.pop_front() {
            steps += 1;
            if steps > budget.step_ceiling {
                return Err(OracleError::Exhausted(format!(
                    "closure exceeded {} words",
                    budget.step_ceiling
                )));
            }
            if let Some(i) = first_cancellation(&word) {
                let mut shorter = word;
                shorter.drain(i..i + 2);
                current = shorter;
                continue 'restart;
            }
            for i in 0..word.len() - 1 {
                let (a, b) = (word[i], word[i + 1]);
                if a.generator != b.generator && graph.has_edge(a.generator, b.generator) {
                    let mut next = word.clone();
                    next.swap(i, i + 1);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        return Ok(WordVerdict::Nontrivial);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugacyVerdict {
    Conjugate(GroupWord),
    NotFound,
}

/// Tries every freely reduced `c` with `|c| <= max_conj_len` in shortlex
/// order and returns the first one with `c⁻¹ w1 c = w2`.
pub fn conjugacy_oracle(
    graph: &SimplicialGraph,
    w1: &GroupWord,
    w2: &GroupWord,
    max_conj_len: usize,
    budget: &OracleBudget,
) -> Result<ConjugacyVerdict, OracleError> {
    check_letters(graph, w1)?;
    check_letters(graph, w2)?;
    let alphabet: Vec<Letter> = (0..graph.n())
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut tried = 0u64;
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for len in 0..=max_conj_len {
        for c in &layer {
            tried += 1;
            if tried > budget.step_ceiling {
                return Err(OracleError::Exhausted(format!(
                    "more than {} conjugators",
                    budget.step_ceiling
                )));
            }
            let c = GroupWord(c.clone());
            let probe = c.inverse().concat(w1).concat(&c).concat(&w2.inverse());
            if word_oracle(graph, &probe, budget)? == WordVerdict::Trivial {
                return Ok(ConjugacyVerdict::Conjugate(c));
            }
        }
        if len == max_conj_len {
            break;
        }
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for c in &layer {
            for &l in &alphabet {
                if c.last().is_some_and(|t| t.cancels(l)) {
                    continue;
                }
                let mut d = c.clone();
                d.push(l);
                next.push(d);
            }
        }
        layer = next;
    }
    Ok(ConjugacyVerdict::NotFound)
}

/// Exhaustive search for `a` with `x_1^{a_1} … x_n^{a_n} = y`, `0 <= a_i < order_i`.
pub fn gdlp_bruteforce<G: GroupOps>(
    group: &G,
    xs: &[(G::Element, u64)],
    y: &G::Element,
    budget: &OracleBudget,
) -> Result<Option<Vec<u64>>, OracleError> {
    let size = xs
        .iter()
        .try_fold(1u128, |acc, (_, o)| acc.checked_mul(*o as u128))
        .filter(|&s| s <= budget.max_group_size);
    if size.is_none() {
        return Err(OracleError::Exhausted(format!(
            "search space above {}",
            budget.max_group_size
        )));
    }
    if xs.iter().any(|(_, o)| *o == 0) {
        return Ok(None);
    }
    let mut a = vec![0u64; xs.len()];
    loop {
        let mut acc = group.identity();
        for ((x, _), &e) in xs.iter().zip(&a) {
            acc = group.mul(&acc, &group.pow(x, &BigInt::from(e)));
        }
        if acc == *y {
            return Ok(Some(a));
        }
        let mut k = 0;
        loop {
            if k == a.len() {
                return Ok(None);
            }
            a[k] += 1;
            if a[k] < xs[k].1 {
                break;
            }
            a[k] = 0;
            k += 1;
        }
    }
}

/// First `(k, l)` with `1 <= k, l <= max_exp` and `x^k = y^l`, `k` varying slowest.
pub fn power_match_oracle(
    graph: &SimplicialGraph,
    x: &GroupWord,
    y: &GroupWord,
    max_exp: u64,
    budget: &OracleBudget,
) -> Result<Option<(u64, u64)>, OracleError> {
    if max_exp > budget.max_exponent {
        return Err(OracleError::Exhausted(format!(
            "exponent bound {max_exp} above {}",
            budget.max_exponent
        )));
    }
    for k in 1..=max_exp {
        for l in 1..=max_exp {
            let probe = x.power(k as i64).concat(&y.power(-(l as i64)));
            if word_oracle(graph, &probe, budget)? == WordVerdict::Trivial {
                return Ok(Some((k, l)));
            }
        }
    }
    Ok(None)
}
