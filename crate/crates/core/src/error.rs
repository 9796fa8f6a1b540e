//! Error types shared across the crate.

use thiserror::Error;

/// Violations of the physicality requirements on two-qubit states and
/// noise-channel parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("density matrix trace deviates from one by {0:.3e}")]
    NonUnitTrace(f64),
    #[error("density matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("density matrix has negative eigenvalue {0:.3e}")]
    NotPositive(f64),
    #[error("relaxation time t1 must be positive, got {0}")]
    InvalidT1(f64),
    #[error("dephasing time t2 must be positive, got {0}")]
    InvalidT2(f64),
    #[error("complete positivity requires t2 <= 2*t1, got t1={t1}, t2={t2}")]
    IncompatibleTimes { t1: f64, t2: f64 },
    #[error("coherence budget c must be at least 2 slots, got {0}")]
    BudgetTooShort(u32),
}

/// A peer violated the framing rules of the protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ProtocolError {
    /// In the stuffed variant the gap between the two qubits of a round can
    /// never exceed the cap; seeing more silent slots means the peer is
    /// malformed.
    #[error("saw {seen} silent slots after the first qubit, but stuffing caps the gap at {max}")]
    StuffingOverrun { seen: u32, max: u32 },
}

/// An invalid [`SimConfig`](crate::sim::SimConfig); every variant names the
/// offending field.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("c required for quantum-variant mode")]
    MissingC,
    #[error("c required when noise is cliff")]
    MissingCliffC,
    #[error("c must be at least 2, got {0}")]
    InvalidC(u32),
    #[error("t1 and t2 required when noise is t1t2")]
    MissingRelaxationTimes,
    #[error("noise model requires a quantum mode, got {0}")]
    NoiseNotSupported(String),
    #[error("delta must be a nonnegative number, got {0}")]
    InvalidDelta(f64),
    #[error("rounds-per-swap must be at least 1")]
    InvalidRoundsPerSwap,
    #[error("horizon must be positive")]
    EmptyHorizon,
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Failures when deriving metrics or statistics from a trace.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticsError {
    #[error("trace has zero elapsed time, no rate is defined")]
    ZeroElapsed,
    #[error("trace contains no superdense-coded bits")]
    NoSdBits,
    #[error("c must be at least 2, got {0}")]
    InvalidC(u32),
    #[error("delta must be a nonnegative number, got {0}")]
    InvalidDelta(f64),
    #[error("rounds-per-swap must be at least 1")]
    InvalidRoundsPerSwap,
    #[error("trace was recorded without slot events")]
    MissingEvents,
    #[error("batch statistics require at least one sample")]
    EmptySamples,
}
