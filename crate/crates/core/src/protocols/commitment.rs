//! Hash commitments ("locked boxes"): `digest = H(len(tag) ‖ tag ‖ payload ‖ nonce)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{length_prefixed, HashAlg};

pub const NONCE_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CommitmentBox {
    #[serde(with = "hex")]
    pub digest: [u8; 32],
}

/// The private half of a commitment, revealed when the box is opened.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Opening {
    #[serde(with = "hex")]
    pub payload: Vec<u8>,
    #[serde(with = "hex")]
    pub nonce: [u8; NONCE_LEN],
}

fn digest(alg: HashAlg, tag: &str, payload: &[u8], nonce: &[u8; NONCE_LEN]) -> [u8; 32] {
    alg.digest(&[&length_prefixed(tag.as_bytes()), payload, nonce])
}

pub fn commit<R: Rng + ?Sized>(
    alg: HashAlg,
    tag: &str,
    payload: Vec<u8>,
    rng: &mut R,
) -> (CommitmentBox, Opening) {
    let mut nonce = [0u8; NONCE_LEN];
    rng.fill(&mut nonce);
    let b = CommitmentBox {
        digest: digest(alg, tag, &payload, &nonce),
    };
    (b, Opening { payload, nonce })
}

pub fn verify_opening(alg: HashAlg, tag: &str, b: &CommitmentBox, o: &Opening) -> bool {
    digest(alg, tag, &o.payload, &o.nonce) == b.digest
}
