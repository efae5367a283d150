//! Secret sharing with graph groups.
//!
//! Scheme 1 splits a bit vector into XOR shares; participant `j` learns bit
//! `i` of its share by deciding whether the public word `w_ij` is trivial in
//! its private graph group.
//!
//! Scheme 2 hides bits in graphs (`0` for a nontrivial join, `1` otherwise);
//! the secret is `f(0)` for the monic degree-`n` polynomial over `F_p` with
//! `f(i) = b_i`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ProtocolError, Role, Transcript};
use crate::graph::{join_decompose, SimplicialGraph};
use crate::polycyclic::is_prime;
use crate::raag::{GroupWord, Letter, RaagGroup};

/// Scheme-1 material held by one participant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareBundle {
    /// 1-based.
    pub participant: usize,
    /// Edges are the commutator relators `R_j` over the public generators.
    pub relators: SimplicialGraph,
    /// `C_j`; known to the dealer and recomputed by the participant.
    pub share: Vec<bool>,
    /// Public words `w_1j … w_kj`.
    pub words: Vec<GroupWord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scheme1Deal {
    pub generators: usize,
    pub bundles: Vec<ShareBundle>,
    pub transcript: Transcript,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scheme1Params {
    /// Size of the public generating set `X`.
    pub generators: usize,
    pub edge_density: f64,
}

impl Default for Scheme1Params {
    fn default() -> Self {
        Self {
            generators: 6,
            edge_density: 0.5,
        }
    }
}

fn commutator_relator(u: usize, v: usize) -> GroupWord {
    GroupWord(vec![Letter::pos(u), Letter::pos(v), Letter::neg(u), Letter::neg(v)])
}

/// Product of 3 to 10 conjugates `c⁻¹ r^{±1} c` of relators, freely reduced.
fn trivial_word<R: Rng + ?Sized>(graph: &SimplicialGraph, rng: &mut R) -> GroupWord {
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    loop {
        let mut w = GroupWord::identity();
        for _ in 0..rng.gen_range(3..=10) {
            let &(u, v) = edges.choose(rng).unwrap();
            let mut r = commutator_relator(u, v);
            if rng.gen_bool(0.5) {
                r = r.inverse();
            }
            let c = GroupWord::random_reduced(graph.n(), rng.gen_range(0..=6), rng);
            w = w.concat(&r.conjugate_by(&c));
        }
        let w = w.freely_reduced();
        if !w.is_empty() {
            return w;
        }
    }
}

fn nontrivial_word<R: Rng + ?Sized>(group: &RaagGroup, rng: &mut R) -> Result<GroupWord, ProtocolError> {
    loop {
        let w = GroupWord::random_reduced(group.rank(), rng.gen_range(8..=16), rng);
        if !group.is_trivial(&w)? {
            return Ok(w);
        }
    }
}

pub fn ss_scheme1_deal<R: Rng + ?Sized>(
    secret: &[bool],
    participants: usize,
    params: Scheme1Params,
    rng: &mut R,
) -> Result<Scheme1Deal, ProtocolError> {
    if participants == 0 || secret.is_empty() {
        return Err(ProtocolError::InvalidParameter("need a participant and a nonempty secret".into()));
    }
    if params.generators < 2 {
        return Err(ProtocolError::InvalidParameter("need at least two generators".into()));
    }
    let k = secret.len();
    let mut shares: Vec<Vec<bool>> = (0..participants - 1)
        .map(|_| (0..k).map(|_| rng.gen()).collect())
        .collect();
    let last: Vec<bool> = (0..k)
        .map(|i| shares.iter().fold(secret[i], |acc, s| acc ^ s[i]))
        .collect();
    shares.push(last);

    let mut transcript = Transcript::new();
    let mut bundles = Vec::with_capacity(participants);
    for (j, share) in shares.into_iter().enumerate() {
        let relators = loop {
            let g = SimplicialGraph::random(params.generators, params.edge_density, rng);
            if g.edge_count() > 0 {
                break g;
            }
        };
        let group = RaagGroup::new(relators.clone());
        let mut words = Vec::with_capacity(k);
        for &bit in &share {
            let w = if bit {
                trivial_word(&relators, rng)
            } else {
                nontrivial_word(&group, rng)?
            };
            if group.is_trivial(&w)? != bit {
                return Err(ProtocolError::DealerCertificationFailure {
                    participant: j + 1,
                    word: w.to_string(),
                });
            }
            words.push(w);
        }
        transcript.push_json(Role::Dealer, format!("words_{}", j + 1), &words);
        bundles.push(ShareBundle {
            participant: j + 1,
            relators,
            share,
            words,
        });
    }
    Ok(Scheme1Deal {
        generators: params.generators,
        bundles,
        transcript,
    })
}

/// What participant `bundle.participant` learns from its words.
pub fn decode_share(bundle: &ShareBundle) -> Result<Vec<bool>, ProtocolError> {
    let group = RaagGroup::new(bundle.relators.clone());
    bundle
        .words
        .iter()
        .map(|w| group.is_trivial(w).map_err(ProtocolError::from))
        .collect()
}

/// XOR of the decoded shares of the given bundles.
pub fn ss_scheme1_recover(bundles: &[ShareBundle]) -> Result<Vec<bool>, ProtocolError> {
    let k = bundles
        .first()
        .map(|b| b.words.len())
        .ok_or_else(|| ProtocolError::InvalidParameter("no bundles".into()))?;
    let mut out = vec![false; k];
    for b in bundles {
        let share = decode_share(b)?;
        if share.len() != k {
            return Err(ProtocolError::InvalidParameter("bundles disagree on length".into()));
        }
        for (o, s) in out.iter_mut().zip(share) {
            *o ^= s;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Scheme2Deal {
    pub modulus: u64,
    /// `Γ_1 … Γ_n`, sent privately.
    pub graphs: Vec<SimplicialGraph>,
    pub bits: Vec<bool>,
    pub secret: u64,
    pub transcript: Transcript,
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p is prime
    let mut out = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            out = (out as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    out
}

/// `f(0)` for the monic degree-`n` `f` over `F_p` with `f(i) = values[i-1]`.
///
/// `f = ∏(x - i) + L` where `L` interpolates the values, so
/// `f(0) = (-1)^n n! + Σ values_i ℓ_i(0)`.
pub fn monic_interpolation_at_zero(values: &[u64], p: u64) -> u64 {
    let n = values.len() as u64;
    let mul = |a: u64, b: u64| (a as u128 * b as u128 % p as u128) as u64;
    let fact = (1..=n).fold(1 % p, |acc, i| mul(acc, i % p));
    let mut acc = if n.is_multiple_of(2) { fact } else { (p - fact) % p };
    for i in 1..=n {
        // ℓ_i(0) = ∏_{j≠i} j / (j - i)
        let mut num = 1 % p;
        let mut den = 1 % p;
        for j in (1..=n).filter(|&j| j != i) {
            num = mul(num, j % p);
            den = mul(den, (j + p - i % p) % p);
        }
        let li = mul(num, mod_inv(den, p));
        acc = (acc + mul(values[i as usize - 1] % p, li)) % p;
    }
    acc
}

fn random_graph_with_connected_complement<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SimplicialGraph {
    loop {
        let g = SimplicialGraph::random(n, 0.5, rng);
        if !join_decompose(&g).is_nontrivial() {
            return g;
        }
    }
}

fn random_nontrivial_join<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SimplicialGraph {
    let split = rng.gen_range(1..n);
    let parts = [
        SimplicialGraph::random(split, 0.5, rng),
        SimplicialGraph::random(n - split, 0.5, rng),
    ];
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    SimplicialGraph::join(&parts).relabel(&perm)
}

/// `vertices` is the size of each `Γ_i` (at least 2).
pub fn ss_scheme2_deal<R: Rng + ?Sized>(
    participants: usize,
    p: u64,
    vertices: usize,
    rng: &mut R,
) -> Result<Scheme2Deal, ProtocolError> {
    if !is_prime(p) || p <= participants as u64 {
        return Err(ProtocolError::InvalidParameter(format!(
            "need a prime modulus above {participants}"
        )));
    }
    if participants == 0 || vertices < 2 {
        return Err(ProtocolError::InvalidParameter("need participants and graphs on >= 2 vertices".into()));
    }
    let bits: Vec<bool> = (0..participants).map(|_| rng.gen()).collect();
    let mut transcript = Transcript::new();
    let mut graphs = Vec::with_capacity(participants);
    for (i, &b) in bits.iter().enumerate() {
        let g = if b {
            random_graph_with_connected_complement(vertices, rng)
        } else {
            random_nontrivial_join(vertices, rng)
        };
        transcript.push(Role::Dealer, format!("graph_{}", i + 1), g.to_text().into_bytes());
        graphs.push(g);
    }
    let values: Vec<u64> = bits.iter().map(|&b| b as u64).collect();
    Ok(Scheme2Deal {
        modulus: p,
        graphs,
        secret: monic_interpolation_at_zero(&values, p),
        bits,
        transcript,
    })
}

/// Each participant's bit is `0` iff its graph is a nontrivial join.
pub fn scheme2_bits(graphs: &[SimplicialGraph]) -> Vec<bool> {
    graphs.iter().map(|g| !join_decompose(g).is_nontrivial()).collect()
}

pub fn ss_scheme2_recover(graphs: &[SimplicialGraph], p: u64) -> u64 {
    let values: Vec<u64> = scheme2_bits(graphs).iter().map(|&b| b as u64).collect();
    monic_interpolation_at_zero(&values, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn interpolation_examples() {
        // (x-1)(x-2) over F_5
        assert_eq!(monic_interpolation_at_zero(&[0, 0], 5), 2);
        // f(x) = x over F_3
        assert_eq!(monic_interpolation_at_zero(&[1], 3), 0);
        // brute force: monic cubic over F_7 through (1,1), (2,0), (3,1)
        let p = 7;
        let vals = [1u64, 0, 1];
        let mut found = None;
        for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    let f = |x: u64| (x * x * x + c2 * x * x + c1 * x + c0) % p;
                    if (1..=3).all(|i| f(i) == vals[i as usize - 1]) {
                        found = Some(c0);
                    }
                }
            }
        }
        assert_eq!(monic_interpolation_at_zero(&vals, p), found.unwrap());
    }

    #[test]
    fn scheme1_single_trivial_bit() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let deal = ss_scheme1_deal(&[true], 1, Scheme1Params::default(), &mut rng).unwrap();
        assert_eq!(ss_scheme1_recover(&deal.bundles).unwrap(), vec![true]);
    }

    #[test]
    fn scheme1_zero_vector() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let deal = ss_scheme1_deal(&[false; 5], 1, Scheme1Params::default(), &mut rng).unwrap();
        let g = RaagGroup::new(deal.bundles[0].relators.clone());
        assert!(deal.bundles[0].words.iter().all(|w| !g.is_trivial(w).unwrap()));
        assert_eq!(ss_scheme1_recover(&deal.bundles).unwrap(), vec![false; 5]);
    }

    #[test]
    fn scheme1_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        for _ in 0..20 {
            let secret: Vec<bool> = (0..8).map(|_| rng.gen()).collect();
            let deal = ss_scheme1_deal(&secret, 3, Scheme1Params::default(), &mut rng).unwrap();
            assert_eq!(ss_scheme1_recover(&deal.bundles).unwrap(), secret);
            for b in &deal.bundles {
                assert_eq!(decode_share(b).unwrap(), b.share);
            }
        }
    }

    #[test]
    fn scheme2_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..20 {
            let deal = ss_scheme2_deal(4, 11, 6, &mut rng).unwrap();
            assert_eq!(scheme2_bits(&deal.graphs), deal.bits);
            assert_eq!(ss_scheme2_recover(&deal.graphs, 11), deal.secret);
        }
        assert!(ss_scheme2_deal(4, 3, 6, &mut rng).is_err());
    }
}
