use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the core library can report.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A probability mass function failed validation.
    InvalidPmf(String),
    /// Alphabet size below 2.
    InvalidAlphabet(u64),
    /// A code length of zero.
    ZeroLength,
    /// No prefix code exists for the requested lengths.
    KraftViolation { sum: f64 },
    /// The base alphabet does not satisfy Kraft, so the monotonicity check has no premise.
    BaseKraftViolated { sum: f64 },
    /// The comparison alphabet must be strictly larger than the base one.
    AlphabetNotLarger { base: u64, other: u64 },
    /// A label required by an operation is absent.
    MissingLabel(String),
    /// A real parameter is outside its domain.
    OutOfRange { name: &'static str, value: f64 },
    /// An integer count is outside its domain.
    CountOutOfRange { name: &'static str, value: u64, max: u64 },
    /// An arithmetic quantity does not fit the integer types used.
    Overflow,
    /// Structural problems with a graph (self-loops, multi-edges, unknown endpoints).
    InvalidGraph(String),
    /// An operation that needs at least one edge got an edgeless graph.
    EdgelessGraph,
    /// An operation that needs a connected graph got a disconnected one.
    Disconnected,
    /// A graph that should be a tree is not.
    NotATree,
    /// Exhaustive enumeration refused: too many vertices.
    TooLarge { vertices: usize, limit: usize },
    /// A vertex id is not present.
    UnknownVertex(String),
    /// A vertex coloring does not cover every vertex.
    PartialColoring(String),
    /// Graphs handed to a pairwise measure have different orders.
    VertexCountMismatch { left: usize, right: usize },
    /// A vertex correspondence is not a bijection.
    InvalidCorrespondence(String),
    /// Divergence is infinite: the reference graph has a zero-degree vertex.
    InfiniteDivergence(String),
    /// The Tsallis index must differ from 1.
    TsallisIndexOne,
    /// A codeword addresses a node that the embedded tree cannot provide.
    CapacityExceeded { label: String, path: String },
    /// A leader placement uses a digit or depth the tree cannot host.
    InvalidPlacement(String),
    /// A gossip configuration failed validation.
    InvalidConfig(String),
    /// An interval or interval set failed validation.
    InvalidInterval(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPmf(msg) => write!(f, "invalid probability mass function: {msg}"),
            Error::InvalidAlphabet(d) => write!(f, "alphabet size must be at least 2, got {d}"),
            Error::ZeroLength => f.write_str("code lengths must be positive"),
            Error::KraftViolation { sum } => {
                write!(f, "Kraft sum {sum} exceeds 1: no prefix code has these lengths")
            }
            Error::BaseKraftViolated { sum } => {
                write!(f, "precondition violated: Kraft sum {sum} exceeds 1 at the base alphabet")
            }
            Error::AlphabetNotLarger { base, other } => {
                write!(f, "alphabet {other} is not larger than base alphabet {base}")
            }
            Error::MissingLabel(label) => write!(f, "no entry for label `{label}`"),
            Error::OutOfRange { name, value } => write!(f, "{name} = {value} is out of range"),
            Error::CountOutOfRange { name, value, max } => {
                write!(f, "{name} = {value} is out of range (maximum {max})")
            }
            Error::Overflow => f.write_str("arithmetic overflow"),
            Error::InvalidGraph(msg) => write!(f, "invalid graph: {msg}"),
            Error::EdgelessGraph => f.write_str("graph has no edges"),
            Error::Disconnected => f.write_str("graph is not connected"),
            Error::NotATree => f.write_str("graph is not a tree"),
            Error::TooLarge { vertices, limit } => {
                write!(f, "{vertices} vertices exceeds the enumeration limit of {limit}")
            }
            Error::UnknownVertex(v) => write!(f, "unknown vertex `{v}`"),
            Error::PartialColoring(v) => write!(f, "vertex `{v}` has no color"),
            Error::VertexCountMismatch { left, right } => {
                write!(f, "vertex counts differ: {left} vs {right}")
            }
            Error::InvalidCorrespondence(msg) => write!(f, "invalid correspondence: {msg}"),
            Error::InfiniteDivergence(v) => {
                write!(f, "divergence is infinite: vertex `{v}` has zero degree in the reference graph")
            }
            Error::TsallisIndexOne => f.write_str("Tsallis index q = 1; use the Shannon entropy"),
            Error::CapacityExceeded { label, path } => write!(
                f,
                "capacity exceeded: codeword {path} for `{label}` addresses a node absent from the embedded tree"
            ),
            Error::InvalidPlacement(msg) => write!(f, "invalid placement: {msg}"),
            Error::InvalidConfig(msg) => write!(f, "invalid gossip configuration: {msg}"),
            Error::InvalidInterval(msg) => write!(f, "invalid interval data: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
