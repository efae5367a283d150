//! Challenge-response authentication from graph homomorphisms.
//!
//! Alice publishes graphs `Γ_1, Γ_2` and keeps a homomorphism `α: Γ_1 → Γ_2`.
//! Each round she sends a fresh graph `Γ` for which she knows
//! `β: Γ → Γ_1`; Bob asks for either `β` or `α ∘ β`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ProtocolError, Role, SessionOutcome, Transcript};
use crate::graph::{check_homomorphism, GraphMap, SimplicialGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthPublicKey {
    pub g1: SimplicialGraph,
    pub g2: SimplicialGraph,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuthKeys {
    pub public: AuthPublicKey,
    pub alpha: GraphMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuthParams {
    pub target_vertices: usize,
    pub source_vertices: usize,
    /// Vertices of the per-round graph `Γ`.
    pub round_vertices: usize,
    pub density: f64,
}

impl Default for AuthParams {
    fn default() -> Self {
        Self {
            target_vertices: 8,
            source_vertices: 10,
            round_vertices: 10,
            density: 0.6,
        }
    }
}

/// A random map `source → target` together with a random subgraph of the
/// pullback of `target`'s edges, so the map is a homomorphism by construction.
fn pullback<R: Rng + ?Sized>(
    target: &SimplicialGraph,
    n: usize,
    density: f64,
    rng: &mut R,
) -> (SimplicialGraph, Vec<usize>) {
    let image: Vec<usize> = (0..n).map(|_| rng.gen_range(0..target.n())).collect();
    let mut g = SimplicialGraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if target.has_edge(image[u], image[v]) && rng.gen_bool(density) {
                g.add_edge(u, v).expect("distinct vertices");
            }
        }
    }
    (g, image)
}

pub fn auth_keygen<R: Rng + ?Sized>(params: &AuthParams, rng: &mut R) -> AuthKeys {
    let g2 = SimplicialGraph::random(params.target_vertices, params.density, rng);
    let (g1, image) = pullback(&g2, params.source_vertices, params.density, rng);
    let alpha = GraphMap::new(g1.clone(), g2.clone(), image).expect("pullback is a homomorphism");
    AuthKeys {
        public: AuthPublicKey { g1, g2 },
        alpha,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prover {
    Honest,
    /// Knows neither `α` nor anything beyond the public key. Guesses the
    /// challenge, prepares an honest answer for that branch and a random map
    /// for the other.
    Cheater,
}

pub fn auth_protocol<R: Rng + ?Sized>(
    keys: &AuthKeys,
    prover: Prover,
    params: &AuthParams,
    rounds: usize,
    stop_on_failure: bool,
    rng: &mut R,
) -> Result<SessionOutcome, ProtocolError> {
    if rounds == 0 {
        return Err(ProtocolError::InvalidParameter("need at least one round".into()));
    }
    let AuthPublicKey { g1, g2 } = &keys.public;
    let mut transcript = Transcript::new();
    let mut outcomes = Vec::with_capacity(rounds);
    let mut failure: Option<(usize, String)> = None;
    for round in 1..=rounds {
        let (gamma, answers) = match prover {
            Prover::Honest => {
                let (gamma, beta) = pullback(g1, params.round_vertices, params.density, rng);
                let composite: Vec<usize> = beta.iter().map(|&v| keys.alpha.image[v]).collect();
                (gamma, [beta, composite])
            }
            Prover::Cheater => {
                let guess = rng.gen_range(0..2usize);
                let target = if guess == 0 { g1 } else { g2 };
                let (gamma, honest) = pullback(target, params.round_vertices, params.density, rng);
                let other = if guess == 0 { g2 } else { g1 };
                let forged: Vec<usize> = (0..gamma.n()).map(|_| rng.gen_range(0..other.n())).collect();
                if guess == 0 {
                    (gamma, [honest, forged])
                } else {
                    (gamma, [forged, honest])
                }
            }
        };
        transcript.push(Role::Alice, format!("round_{round}/graph"), gamma.to_text().into_bytes());
        let c = rng.gen_range(0..2usize);
        transcript.push(Role::Bob, format!("round_{round}/challenge"), vec![c as u8]);
        let reveal = &answers[c];
        transcript.push_json(Role::Alice, format!("round_{round}/map"), reveal);
        let target = if c == 0 { g1 } else { g2 };
        let verdict = check_homomorphism(&gamma, target, reveal);
        outcomes.push(verdict.is_ok());
        if let Err(e) = verdict {
            if failure.is_none() {
                failure = Some((round, format!("invalid reveal: {e}")));
            }
            if stop_on_failure {
                break;
            }
        }
    }
    Ok(SessionOutcome::new(outcomes, failure, transcript))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn honest_accepts() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let params = AuthParams::default();
        let keys = auth_keygen(&params, &mut rng);
        let out = auth_protocol(&keys, Prover::Honest, &params, 64, true, &mut rng).unwrap();
        assert!(out.accepted);
        assert_eq!(out.outcomes.len(), 64);
        assert_eq!(out.transcript.len(), 3 * 64);
    }

    #[test]
    fn cheater_is_caught() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let params = AuthParams::default();
        let keys = auth_keygen(&params, &mut rng);
        let out = auth_protocol(&keys, Prover::Cheater, &params, 64, true, &mut rng).unwrap();
        assert!(!out.accepted);
        assert!(out.failed_round.is_some());
    }

    #[test]
    fn single_vertex_round_graph() {
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let params = AuthParams {
            round_vertices: 1,
            ..Default::default()
        };
        let keys = auth_keygen(&params, &mut rng);
        let out = auth_protocol(&keys, Prover::Honest, &params, 8, true, &mut rng).unwrap();
        assert!(out.accepted);
    }
}
