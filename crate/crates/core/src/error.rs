use thiserror::Error;

use crate::circuit::Diagnostic;

/// Errors produced by state construction, gate application and estimation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("qubit label ({pair}, {side}) appears on both operands")]
    LabelCollision { pair: usize, side: char },

    #[error("dimension {dim} exceeds the {what} cap of {cap}")]
    CapacityExceeded {
        what: &'static str,
        dim: usize,
        cap: usize,
    },

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("matrix is not positive semidefinite (eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("state is not normalized (norm deviation {0:.3e})")]
    NotNormalized(f64),

    #[error("operation requires a pure state")]
    NotPure,

    #[error("cannot trace out every qubit; keep set must be non-empty")]
    EmptyKeep,

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    IndexOutOfRange { index: usize, n_qubits: usize },

    #[error("target indices must be distinct")]
    DuplicateTarget,

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("entropy argument {0} outside [0, 1]")]
    EntropyDomain(f64),

    #[error("extension parameters are not normalized (deviation {0:.3e})")]
    ExtensionNotNormalized(f64),

    #[error("table {0} does not admit the single-row extension family")]
    ExtensionUnsupported(String),

    #[error("gate arity mismatch: expected {expected} wires, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("unknown gate {0:?}")]
    UnknownGate(String),

    #[error("no entanglement-cost bound available for table {0}: no decomposition declared")]
    NoCostBound(String),

    #[error("counted gate {0} has zero entanglement cost; gate-count bound undefined")]
    ZeroCostBound(String),

    #[error("input string length {got} does not match {expected} circuit inputs")]
    InputLengthMismatch { expected: usize, got: usize },

    #[error("input string must consist of 0 and 1 characters")]
    InvalidBitString,

    #[error("{0}")]
    Netlist(#[from] Diagnostic),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end: capacity errors
    /// are distinguished from ordinary validation failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapacityExceeded { .. } => 3,
            _ => 2,
        }
    }
}
