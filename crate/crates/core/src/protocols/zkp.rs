//! Zero-knowledge style proof of knowledge of a Hamiltonian cycle, phrased
//! through the cohomology pairing `q: V × V → W` of a graph group over F2.
//!
//! Each round the prover re-bases `V` with a public permutation matrix `A`,
//! commits to the new basis (`B_i`), all pairings (`N_ij`), their nonzero
//! indicators (`S_ij`) and `A` itself (`T`). Challenge 1 opens the basis and
//! the indicators along the cycle; challenge 0 opens everything except the
//! cycle and lets the verifier recompute the pairings.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::commitment::{commit, verify_opening, CommitmentBox, Opening};
use super::{HashAlg, ProtocolError, Role, SessionOutcome, Transcript};
use crate::graph::{count_hamiltonian_cycles, is_hamiltonian_cycle, SimplicialGraph};
use crate::raag::CohomologyTriple;

/// Public data: the triple and the set `Y` of admissible basis changes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZkpStatement {
    pub triple: CohomologyTriple,
    /// Each entry is a permutation `π`; the new basis is `x_i = v*_{π(i)}`.
    pub basis_changes: Vec<Vec<usize>>,
    pub hash: HashAlg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZkpProverState {
    pub statement: ZkpStatement,
    /// Basis indices in cyclic order with nonzero consecutive pairings.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZkpProver {
    Honest,
    /// Does not know the cycle: commits to a random `σ` and marks its
    /// consecutive indicators as 1.
    Cheater,
    /// Honest, but corrupts the nonce of the first basis opening.
    TamperedOpening,
}

/// Graph on `n >= 3` vertices with exactly one Hamiltonian cycle, built from
/// a cycle by adding chords that keep the cycle count at one, then relabelled.
/// Returns the graph and its cycle.
pub fn unique_hamiltonian_graph<R: Rng + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<(SimplicialGraph, Vec<usize>), ProtocolError> {
    if n < 3 {
        return Err(ProtocolError::InvalidParameter("need at least 3 vertices".into()));
    }
    let mut g = SimplicialGraph::cycle(n);
    let mut chords: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 2..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !(u == 0 && v == n - 1))
        .collect();
    chords.shuffle(rng);
    for (u, v) in chords {
        g.add_edge(u, v)?;
        if count_hamiltonian_cycles(&g, n.max(crate::graph::DEFAULT_HAMILTONIAN_BOUND))? != 1 {
            g.remove_edge(u, v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let relabelled = g.relabel(&perm);
    let cycle: Vec<usize> = (0..n).map(|i| perm[i]).collect();
    debug_assert!(is_hamiltonian_cycle(&relabelled, &cycle));
    Ok((relabelled, cycle))
}

/// `count` random permutations of `0..n` (the identity included).
pub fn random_basis_changes<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    while out.len() < count.max(1) {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        out.push(p);
    }
    out
}

pub fn zkp_setup<R: Rng + ?Sized>(
    graph: &SimplicialGraph,
    cycle: Vec<usize>,
    hash: HashAlg,
    rng: &mut R,
) -> Result<ZkpProverState, ProtocolError> {
    if !is_hamiltonian_cycle(graph, &cycle) {
        return Err(ProtocolError::InvalidParameter("cycle is not Hamiltonian".into()));
    }
    let n = graph.n();
    Ok(ZkpProverState {
        statement: ZkpStatement {
            triple: CohomologyTriple::from_graph(graph),
            basis_changes: random_basis_changes(n, 2 * n, rng),
            hash,
        },
        cycle,
    })
}

fn bits(v: &[bool]) -> Vec<u8> {
    v.iter().map(|&b| b as u8).collect()
}

fn perm_bytes(p: &[usize]) -> Vec<u8> {
    p.iter().flat_map(|&i| (i as u32).to_be_bytes()).collect()
}

fn parse_perm(bytes: &[u8]) -> Option<Vec<usize>> {
    if !bytes.len().is_multiple_of(4) {
        return None;
    }
    Some(
        bytes
            .chunks(4)
            .map(|c| u32::from_be_bytes(c.try_into().unwrap()) as usize)
            .collect(),
    )
}

fn b_tag(i: usize) -> String {
    format!("B{i}")
}

fn n_tag(i: usize, j: usize) -> String {
    format!("N{i},{j}")
}

fn s_tag(i: usize, j: usize) -> String {
    format!("S{i},{j}")
}

fn key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundCommitments {
    pub b: Vec<CommitmentBox>,
    pub n: BTreeMap<String, CommitmentBox>,
    pub s: BTreeMap<String, CommitmentBox>,
    pub t: CommitmentBox,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundOpening {
    /// Challenge 1: the basis and the indicators along the cycle, keyed by pair.
    Cycle {
        b: Vec<Opening>,
        s: Vec<((usize, usize), Opening)>,
    },
    /// Challenge 0: basis, pairings, indicators and `A`.
    Structure {
        b: Vec<Opening>,
        n: BTreeMap<String, Opening>,
        s: BTreeMap<String, Opening>,
        t: Opening,
    },
}

struct ProverRound {
    commitments: RoundCommitments,
    b: Vec<Opening>,
    n: BTreeMap<(usize, usize), Opening>,
    s: BTreeMap<(usize, usize), Opening>,
    t: Opening,
    sigma: Vec<usize>,
}

fn prover_commit<R: Rng + ?Sized>(state: &ZkpProverState, prover: ZkpProver, rng: &mut R) -> ProverRound {
    let st = &state.statement;
    let dim = st.triple.dim_v;
    let alg = st.hash;
    let pi = st.basis_changes.choose(rng).expect("nonempty Y").clone();
    let basis: Vec<Vec<bool>> = pi.iter().map(|&k| st.triple.basis_vector(k)).collect();
    let sigma: Vec<usize> = match prover {
        ZkpProver::Cheater => {
            let mut s: Vec<usize> = (0..dim).collect();
            s.shuffle(rng);
            s
        }
        _ => {
            let mut inv = vec![0; dim];
            for (i, &k) in pi.iter().enumerate() {
                inv[k] = i;
            }
            state.cycle.iter().map(|&c| inv[c]).collect()
        }
    };
    let claimed: Vec<(usize, usize)> = (0..dim).map(|i| key(sigma[i], sigma[(i + 1) % dim])).collect();

    let mut b_boxes = Vec::with_capacity(dim);
    let mut b_open = Vec::with_capacity(dim);
    for (i, x) in basis.iter().enumerate() {
        let (bx, o) = commit(alg, &b_tag(i), bits(x), rng);
        b_boxes.push(bx);
        b_open.push(o);
    }
    let (mut n_boxes, mut s_boxes) = (BTreeMap::new(), BTreeMap::new());
    let (mut n_open, mut s_open) = (BTreeMap::new(), BTreeMap::new());
    for i in 0..dim {
        for j in i + 1..dim {
            let w = st.triple.cup(&basis[i], &basis[j]);
            let nonzero = w.iter().any(|&b| b);
            let indicator = nonzero || (prover == ZkpProver::Cheater && claimed.contains(&(i, j)));
            let (nb, no) = commit(alg, &n_tag(i, j), bits(&w), rng);
            let (sb, so) = commit(alg, &s_tag(i, j), vec![indicator as u8], rng);
            n_boxes.insert(n_tag(i, j), nb);
            s_boxes.insert(s_tag(i, j), sb);
            n_open.insert((i, j), no);
            s_open.insert((i, j), so);
        }
    }
    let (t_box, t_open) = commit(alg, "T", perm_bytes(&pi), rng);
    if prover == ZkpProver::TamperedOpening && !b_open.is_empty() {
        b_open[0].nonce[0] ^= 1;
    }
    ProverRound {
        commitments: RoundCommitments {
            b: b_boxes,
            n: n_boxes,
            s: s_boxes,
            t: t_box,
        },
        b: b_open,
        n: n_open,
        s: s_open,
        t: t_open,
        sigma,
    }
}

fn prover_open(round: &ProverRound, challenge: u8) -> RoundOpening {
    let dim = round.sigma.len();
    if challenge == 1 {
        let s = (0..dim)
            .map(|i| {
                let k = key(round.sigma[i], round.sigma[(i + 1) % dim]);
                (k, round.s[&k].clone())
            })
            .collect();
        RoundOpening::Cycle { b: round.b.clone(), s }
    } else {
        RoundOpening::Structure {
            b: round.b.clone(),
            n: round.n.iter().map(|(&(i, j), o)| (n_tag(i, j), o.clone())).collect(),
            s: round.s.iter().map(|(&(i, j), o)| (s_tag(i, j), o.clone())).collect(),
            t: round.t.clone(),
        }
    }
}

fn check_box(
    alg: HashAlg,
    tag: &str,
    boxes: &BTreeMap<String, CommitmentBox>,
    o: Option<&Opening>,
) -> Result<Vec<u8>, String> {
    let (b, o) = match (boxes.get(tag), o) {
        (Some(b), Some(o)) => (b, o),
        _ => return Err(format!("missing box {tag}")),
    };
    if verify_opening(alg, tag, b, o) {
        Ok(o.payload.clone())
    } else {
        Err(format!("commitment mismatch on {tag}"))
    }
}

/// Checks one round's openings against the commitments; `Err` carries the reason.
pub fn verify_round(
    st: &ZkpStatement,
    c: &RoundCommitments,
    challenge: u8,
    opening: &RoundOpening,
) -> Result<(), String> {
    let dim = st.triple.dim_v;
    let alg = st.hash;
    let open_basis = |b: &[Opening]| -> Result<Vec<Vec<u8>>, String> {
        if b.len() != dim || c.b.len() != dim {
            return Err("wrong number of basis boxes".into());
        }
        b.iter()
            .enumerate()
            .map(|(i, o)| {
                if verify_opening(alg, &b_tag(i), &c.b[i], o) {
                    Ok(o.payload.clone())
                } else {
                    Err(format!("commitment mismatch on {}", b_tag(i)))
                }
            })
            .collect()
    };
    match (challenge, opening) {
        (1, RoundOpening::Cycle { b, s }) => {
            open_basis(b)?;
            if s.len() != dim {
                return Err("cycle has the wrong length".into());
            }
            let mut g = SimplicialGraph::empty(dim);
            for &((i, j), ref o) in s {
                if i >= j || j >= dim {
                    return Err(format!("bad pair ({i}, {j})"));
                }
                let payload = check_box(alg, &s_tag(i, j), &c.s, Some(o))?;
                if payload != [1] {
                    return Err(format!("indicator {} is not 1", s_tag(i, j)));
                }
                if g.has_edge(i, j) {
                    return Err("repeated pair".into());
                }
                g.add_edge(i, j).map_err(|e| e.to_string())?;
            }
            if dim < 3 || !g.is_connected() || (0..dim).any(|v| g.degree(v) != 2) {
                return Err("opened pairs do not form one cycle".into());
            }
            Ok(())
        }
        (0, RoundOpening::Structure { b, n, s, t }) => {
            let basis = open_basis(b)?;
            let tb: BTreeMap<String, CommitmentBox> = [("T".to_string(), c.t)].into();
            let pi = parse_perm(&check_box(alg, "T", &tb, Some(t))?).ok_or("malformed T")?;
            if !st.basis_changes.contains(&pi) {
                return Err("T is not in Y".into());
            }
            let expected: Vec<Vec<bool>> = pi.iter().map(|&k| st.triple.basis_vector(k)).collect();
            if basis.iter().zip(&expected).any(|(got, want)| *got != bits(want)) {
                return Err("basis does not match A".into());
            }
            for i in 0..dim {
                for j in i + 1..dim {
                    let w = check_box(alg, &n_tag(i, j), &c.n, n.get(&n_tag(i, j)))?;
                    let want = st.triple.cup(&expected[i], &expected[j]);
                    if w != bits(&want) {
                        return Err(format!("pairing {} is wrong", n_tag(i, j)));
                    }
                    let ind = check_box(alg, &s_tag(i, j), &c.s, s.get(&s_tag(i, j)))?;
                    if ind != [want.iter().any(|&x| x) as u8] {
                        return Err(format!("indicator {} is wrong", s_tag(i, j)));
                    }
                }
            }
            Ok(())
        }
        _ => Err("opening does not match the challenge".into()),
    }
}

pub fn zkp_hamiltonicity<R: Rng + ?Sized>(
    state: &ZkpProverState,
    prover: ZkpProver,
    rounds: usize,
    stop_on_failure: bool,
    rng: &mut R,
) -> Result<SessionOutcome, ProtocolError> {
    if rounds == 0 {
        return Err(ProtocolError::InvalidParameter("need at least one round".into()));
    }
    let mut transcript = Transcript::new();
    let mut outcomes = Vec::with_capacity(rounds);
    let mut failure = None;
    for r in 1..=rounds {
        let round = prover_commit(state, prover, rng);
        transcript.push_json(Role::Alice, format!("round_{r}/boxes"), &round.commitments);
        let challenge: u8 = rng.gen_range(0..2);
        transcript.push(Role::Bob, format!("round_{r}/challenge"), vec![challenge]);
        let opening = prover_open(&round, challenge);
        transcript.push_json(Role::Alice, format!("round_{r}/openings"), &opening);
        let verdict = verify_round(&state.statement, &round.commitments, challenge, &opening);
        outcomes.push(verdict.is_ok());
        if let Err(reason) = verdict {
            failure.get_or_insert((r, reason));
            if stop_on_failure {
                break;
            }
        }
    }
    Ok(SessionOutcome::new(outcomes, failure, transcript))
}
