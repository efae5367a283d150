pub mod fhe;
pub mod graph;
pub mod oracles;
pub mod polycyclic;
pub mod protocols;
pub mod raag;
mod serde_big;
