//! Exact two-qubit quantum state representation with Bell-basis operations,
//! phenomenological T1/T2 memory noise, and a fixed-coherence-time cliff
//! idealization.
//!
//! Everything here is a pure value-in/value-out transformation except the
//! measurement sampling, which takes an explicit random source.

mod noise;
mod state;

pub use noise::{
    apply_memory_noise, coherence_cliff_state, fixed_coherence_measure, CoherenceBudget,
    NoiseParams,
};
pub use state::{
    bell_measure, decode_superdense, encode_superdense, make_epr_pair, BellOutcome, PairState,
    Qubit, HERMITICITY_TOL, PSD_TOL, TRACE_TOL,
};
