//! Executable group-based protocols. Every run simulates all parties in
//! process and records the exchanged messages in a [`Transcript`].
//!
//! These are research toys: parameters are sized for tests, not security.

pub mod auth;
pub mod commitment;
pub mod multilinear;
pub mod semidirect;
pub mod sharing;
pub mod signature;
pub mod zkp;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::Digest;

use crate::graph::GraphError;
use crate::polycyclic::PolycyclicError;
use crate::raag::RaagError;

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum ProtocolError {
    #[error("platform law fails: {0}")]
    PlatformLawViolation(String),
    #[error("malformed signature: {0}")]
    MalformedSignature(String),
    #[error("degenerate platform: {0}")]
    DegeneratePlatform(String),
    #[error("dealer could not certify word {word} for participant {participant}")]
    DealerCertificationFailure { participant: usize, word: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Raag(#[from] RaagError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Polycyclic(#[from] PolycyclicError),
}

/// 256-bit hash used for commitments and hashing into groups.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HashAlg {
    #[default]
    Sha256,
    Sha512_256,
}

impl HashAlg {
    pub fn digest(self, parts: &[&[u8]]) -> [u8; 32] {
        fn run<D: Digest>(parts: &[&[u8]]) -> Vec<u8> {
            let mut h = D::new();
            for p in parts {
                h.update(p);
            }
            h.finalize().to_vec()
        }
        let out = match self {
            HashAlg::Sha256 => run::<sha2::Sha256>(parts),
            HashAlg::Sha512_256 => run::<sha2::Sha512_256>(parts),
        };
        out.try_into().expect("32-byte digest")
    }
}

/// `len(x)` as 8 big-endian bytes followed by `x`.
pub(crate) fn length_prefixed(x: &[u8]) -> Vec<u8> {
    let mut out = (x.len() as u64).to_be_bytes().to_vec();
    out.extend_from_slice(x);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Alice,
    Bob,
    Dealer,
    /// 1-based user or participant index.
    User(usize),
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Alice => f.write_str("Alice"),
            Role::Bob => f.write_str("Bob"),
            Role::Dealer => f.write_str("Dealer"),
            Role::User(j) => write!(f, "User_{j}"),
        }
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Alice" => Ok(Role::Alice),
            "Bob" => Ok(Role::Bob),
            "Dealer" => Ok(Role::Dealer),
            _ => s
                .strip_prefix("User_")
                .and_then(|j| j.parse().ok())
                .map(Role::User)
                .ok_or_else(|| format!("unknown role {s:?}")),
        }
    }
}

impl Serialize for Role {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Role {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub role: Role,
    pub label: String,
    #[serde(with = "hex")]
    pub payload: Vec<u8>,
}

/// Append-only record of protocol messages.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    entries: Vec<TranscriptEntry>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, role: Role, label: impl Into<String>, payload: impl Into<Vec<u8>>) {
        self.entries.push(TranscriptEntry {
            role,
            label: label.into(),
            payload: payload.into(),
        });
    }

    /// Records a serializable value as compact JSON.
    pub fn push_json<T: Serialize>(&mut self, role: Role, label: impl Into<String>, value: &T) {
        let bytes = serde_json::to_vec(value).expect("serializable message");
        self.push(role, label, bytes);
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.label.as_str()).collect()
    }
}

/// Result of a multi-round interactive protocol.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SessionOutcome {
    /// Per-round verdicts, in order.
    pub outcomes: Vec<bool>,
    pub accepted: bool,
    /// 1-based index of the first rejected round.
    pub failed_round: Option<usize>,
    pub reason: Option<String>,
    pub transcript: Transcript,
}

impl SessionOutcome {
    pub(crate) fn new(outcomes: Vec<bool>, failure: Option<(usize, String)>, transcript: Transcript) -> Self {
        let (failed_round, reason) = match failure {
            Some((r, m)) => (Some(r), Some(m)),
            None => (None, None),
        };
        Self {
            accepted: failed_round.is_none(),
            outcomes,
            failed_round,
            reason,
            transcript,
        }
    }

    pub fn acceptance_rate(&self) -> f64 {
        if self.outcomes.is_empty() {
            return 0.0;
        }
        self.outcomes.iter().filter(|&&b| b).count() as f64 / self.outcomes.len() as f64
    }
}
