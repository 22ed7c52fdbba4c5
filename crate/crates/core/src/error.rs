use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("bit string of odd length {0} cannot encode a Pauli operator")]
    OddEncodingLength(usize),
    #[error("qubit index {index} out of range for {qubits} qubits")]
    QubitOutOfRange { index: usize, qubits: usize },
    #[error("qubit count mismatch: expected {expected}, got {got}")]
    QubitMismatch { expected: usize, got: usize },
    #[error("invalid Pauli string {0:?}")]
    InvalidPauliString(String),
    #[error("the initial destabilizer must not be the identity")]
    IdentityDestabilizer,
    #[error("period tau must be at least 2, got {0}")]
    InvalidPeriod(usize),
    #[error("exact enumeration supports at most 2 qubits, got {0}")]
    TooManyQubits(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("fit needs at least {needed} points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("parity checks are not orthogonal: Hx * Hz^T != 0")]
    NonOrthogonalChecks,
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("decoder is not surjective: {missing} logical Paulis have no preimage")]
    NotSurjective { missing: usize },
    #[error("parity-check file: {0}")]
    ParityFile(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
