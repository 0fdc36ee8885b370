use thiserror::Error;

/// Errors raised by the simulator, the protocol engine and the strategies.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit index {index} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("controlled swap between blocks of different widths ({left} and {right})")]
    BlockWidthMismatch { left: usize, right: usize },

    #[error("diagonal phase has {found} entries, expected {expected}")]
    PhaseLength { expected: usize, found: usize },

    #[error("diagonal phase entries must be +1 or -1")]
    PhaseValue,

    #[error("gate acts on qubit {0} more than once")]
    RepeatedQubit(usize),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("measurement branch has probability {probability:e}, below the {threshold:e} floor")]
    NullBranch { probability: f64, threshold: f64 },

    #[error("length mismatch: expected {expected} bits, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("duplicate register block {0:?}")]
    DuplicateBlock(String),

    #[error("register block {0:?} has zero width")]
    EmptyBlock(String),

    #[error("unknown register block {0:?}")]
    UnknownBlock(String),

    #[error("register requires {required} qubits, above the hard cap of {cap}")]
    QubitCap { required: usize, cap: usize },

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("no valid code with n={n}, m={m} found in {attempts} attempts")]
    CodeSearchFailed { n: usize, m: usize, attempts: usize },

    #[error("invalid protocol parameters: {0}")]
    InvalidParams(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("strategy issued more than its declared depth of {0} queries")]
    DepthExceeded(usize),

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
