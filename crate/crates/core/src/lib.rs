//! Exact toughness, Hamiltonicity oracles, star matchings and a
//! self-checking Hamiltonian cycle constructor for `(P3 ∪ 2P1)`-free graphs.

pub mod campaign;
pub mod constructor;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod hamiltonicity;
pub mod io;
pub mod matching;
pub mod structure;
pub mod toughness;

pub use error::{Error, Result};
pub use graph::{components, is_clique, splice, validate_cycle, Cycle, Graph, PathSeq, VertexSet};
pub use toughness::{Rational, Toughness, ToughnessCertificate};
