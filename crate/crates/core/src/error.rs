use thiserror::Error;

/// Errors produced by the Pauli sandwich toolchain.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{what} needs {n} qubits, above the cap of {cap}")]
    QubitCap { what: &'static str, n: usize, cap: usize },

    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("invalid Pauli string {0:?}")]
    InvalidPauli(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("check phase must be +1 or -1, got i^{0}")]
    NonHermitianCheck(u8),

    #[error("cannot push {pauli} through {gate}")]
    PushBlocked { gate: String, pauli: String },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("postselection probability is zero; there is no postselected state")]
    ZeroProbability,

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
