//! Simulator and analysis toolkit for a two-way quantum communication
//! protocol that folds entanglement distribution into the data stream and
//! superdense-codes two extra bits onto the second qubit of every EPR pair.
//!
//! The crate is organized around four layers:
//!
//! * [`quantum`] — exact two-qubit density-matrix operations: EPR pair
//!   construction, superdense encoding/decoding, Bell measurement, and a
//!   phenomenological T1/T2 memory-noise channel.
//! * [`protocol`] — the sender/receiver slot state machines (including the
//!   bit-stuffed variant that bounds how long a pair sits in memory) and the
//!   classical baseline cost models.
//! * [`sim`] — a deterministic slot-synchronous engine binding two endpoints
//!   over a half-duplex channel, with per-block delay charging, N-round role
//!   switching, and pluggable memory noise.
//! * [`analytics`] — empirical metric estimators, closed-form rate/efficiency
//!   evaluators, and batch statistics; [`report`] renders plot-ready CSV/JSON.

pub mod analytics;
pub mod error;
pub mod protocol;
pub mod quantum;
pub mod report;
pub mod sim;

pub use analytics::{
    batch_stats, cumulative_series, empirical_metrics, sd_error_rate, theory_decoherence,
    theory_delay, theory_ideal, BatchSummary, DecoherenceTheory, Metrics,
};
pub use error::{AnalyticsError, ConfigError, ProtocolError, QuantumError};
pub use protocol::{BitBuffer, ProtocolMode, RoundRecord};
pub use quantum::{BellOutcome, CoherenceBudget, NoiseParams, PairState, Qubit};
pub use sim::{
    run_simulation, Horizon, Mode, NoiseSpec, SimConfig, SlotEvent, Trace, TxKind, User,
};
