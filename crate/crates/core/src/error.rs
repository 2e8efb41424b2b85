use thiserror::Error;

use crate::matching::HallViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph6: {0}")]
    Graph6(String),

    #[error("vertex {0} is not on the cycle")]
    NotOnCycle(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("splice precondition violated: {0}")]
    Splice(String),

    #[error("toughness undefined below 0 semantics: graph disconnected")]
    Disconnected,
    #[error("graph has {n} vertices, over the cap of {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("graph is complete")]
    Complete,
    #[error("not a cutset: removing it leaves {components} component(s)")]
    NotACutset { components: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cutvertex found: vertex {0} is the only attachment of its component")]
    CutvertexFound(usize),
    #[error("lemma-violation-candidate: {0}")]
    LemmaViolationCandidate(String),
    #[error("lemma-violation-candidate: Hall condition fails on {0:?}")]
    HallLemmaViolation(Box<HallViolation>),

    #[error("degree-sum branch applies instead")]
    DegreeSumApplies,
    #[error("graph is not (P3 ∪ 2P1)-free")]
    NotFree,
    #[error("graph has fewer than three vertices")]
    TooSmall,
    #[error("graph is not 7-tough (toughness {0})")]
    NotSevenTough(String),
}
