//! Deterministic slot-synchronous event loop binding two protocol endpoints
//! over a half-duplex channel, with per-block delay charging, N-round role
//! switching, and pluggable memory noise.

mod engine;
mod trace;

pub use engine::{
    apply_noise_schedule, charge_round_delay, run_simulation, run_simulation_with_buffers,
};
pub use trace::{Checkpoint, DelayCharge, SlotEvent, Termination, Trace, TxKind, User};

use serde::{Deserialize, Serialize};

use crate::error::ConfigError;
use crate::protocol::ProtocolMode;
use crate::quantum::{CoherenceBudget, NoiseParams};

/// Which protocol a run simulates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Proposed protocol with unbounded in-round gaps.
    QuantumIdeal,
    /// Proposed protocol with bit-stuffed framing bounded by the coherence
    /// budget `c`.
    QuantumVariant,
    /// Presence/absence-of-qubit baseline.
    Direct,
    /// Time-division superdense coding with presharing charged.
    SdcTdd,
    /// One bit per qubit round trip.
    PingPong,
}

impl Mode {
    pub fn is_quantum(self) -> bool {
        matches!(self, Mode::QuantumIdeal | Mode::QuantumVariant)
    }
}

/// Memory-noise model applied to stored qubits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum NoiseSpec {
    None,
    /// Error-free up to the coherence budget `c`, fully depolarized beyond.
    Cliff,
    /// Phenomenological relaxation/dephasing with times in slots.
    #[serde(rename = "t1t2")]
    T1T2 {
        t1: f64,
        t2: f64,
    },
}

/// Resolved, validated noise model used by the engine.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NoiseModel {
    None,
    Cliff(CoherenceBudget),
    T1T2(NoiseParams),
}

/// Run length: a fixed slot count, or until a number of rounds complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Horizon {
    Slots(u64),
    Rounds(u64),
}

/// Full description of one run. A config determines its trace bit for bit:
/// the two input streams and the measurement draws all derive from `seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub mode: Mode,
    /// Coherence budget in slots; required for the variant protocol and for
    /// cliff noise.
    pub c: Option<u32>,
    pub noise: NoiseSpec,
    /// Delay charged at the start of each block of `rounds_per_swap` rounds,
    /// in slot-equivalents (fractions allowed).
    pub delta: f64,
    /// Roles swap after this many completed rounds.
    pub rounds_per_swap: u32,
    pub seed: u64,
    pub horizon: Horizon,
    /// Keep per-slot events in the trace (needed for trace CSV and series).
    pub record_trace: bool,
    /// Slots at which cumulative tallies are snapshotted, ascending.
    pub checkpoints: Vec<u64>,
    /// Diagnostic for the sdc-tdd baseline: drop the distribution slot from
    /// the time accounting.
    pub exclude_presharing: bool,
}

impl SimConfig {
    /// A config with everyday defaults: no noise, no delay, swap every round,
    /// seed 1, 1000 slots, no event recording.
    pub fn new(mode: Mode) -> Self {
        SimConfig {
            mode,
            c: None,
            noise: NoiseSpec::None,
            delta: 0.0,
            rounds_per_swap: 1,
            seed: 1,
            horizon: Horizon::Slots(1000),
            record_trace: false,
            checkpoints: Vec::new(),
            exclude_presharing: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.delta.is_finite() || self.delta < 0.0 {
            return Err(ConfigError::InvalidDelta(self.delta));
        }
        if self.rounds_per_swap < 1 {
            return Err(ConfigError::InvalidRoundsPerSwap);
        }
        match self.horizon {
            Horizon::Slots(0) | Horizon::Rounds(0) => return Err(ConfigError::EmptyHorizon),
            _ => {}
        }
        if let Some(c) = self.c {
            if c < 2 {
                return Err(ConfigError::InvalidC(c));
            }
        }
        if self.mode == Mode::QuantumVariant && self.c.is_none() {
            return Err(ConfigError::MissingC);
        }
        match self.noise {
            NoiseSpec::None => {}
            NoiseSpec::Cliff => {
                if !self.mode.is_quantum() {
                    return Err(ConfigError::NoiseNotSupported(format!("{:?}", self.mode)));
                }
                if self.c.is_none() {
                    return Err(ConfigError::MissingCliffC);
                }
            }
            NoiseSpec::T1T2 { t1, t2 } => {
                if !self.mode.is_quantum() {
                    return Err(ConfigError::NoiseNotSupported(format!("{:?}", self.mode)));
                }
                NoiseParams::new(t1, t2)?;
            }
        }
        Ok(())
    }

    /// The validated noise model.
    pub fn noise_model(&self) -> Result<NoiseModel, ConfigError> {
        Ok(match self.noise {
            NoiseSpec::None => NoiseModel::None,
            NoiseSpec::Cliff => {
                let c = self.c.ok_or(ConfigError::MissingCliffC)?;
                NoiseModel::Cliff(CoherenceBudget::new(c)?)
            }
            NoiseSpec::T1T2 { t1, t2 } => NoiseModel::T1T2(NoiseParams::new(t1, t2)?),
        })
    }

    /// Protocol framing for the quantum modes.
    pub fn protocol_mode(&self) -> Result<ProtocolMode, ConfigError> {
        match self.mode {
            Mode::QuantumIdeal => Ok(ProtocolMode::Ideal),
            Mode::QuantumVariant => {
                let c = self.c.ok_or(ConfigError::MissingC)?;
                Ok(ProtocolMode::for_budget(CoherenceBudget::new(c)?))
            }
            other => panic!("no protocol mode for baseline {other:?}"),
        }
    }
}
