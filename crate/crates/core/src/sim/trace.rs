//! Per-slot and per-run records produced by the engine: the ground truth for
//! every metric.

use super::SimConfig;
use crate::protocol::RoundRecord;

/// One of the two endpoints. U1 starts as the transmitter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum User {
    U1,
    U2,
}

impl User {
    pub const BOTH: [User; 2] = [User::U1, User::U2];

    pub fn index(self) -> usize {
        match self {
            User::U1 => 0,
            User::U2 => 1,
        }
    }

    pub fn other(self) -> User {
        match self {
            User::U1 => User::U2,
            User::U2 => User::U1,
        }
    }
}

impl std::fmt::Display for User {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            User::U1 => write!(f, "U1"),
            User::U2 => write!(f, "U2"),
        }
    }
}

/// What went over the channel in a slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TxKind {
    Silent,
    /// First qubit of pair `pair`.
    FirstQubit {
        pair: u64,
    },
    /// Second, payload-carrying qubit of pair `pair`.
    SecondQubit {
        pair: u64,
    },
    /// A standalone qubit (direct scheme).
    BareQubit {
        id: u64,
    },
}

impl TxKind {
    /// Short tag used in the trace CSV.
    pub fn tag(self) -> &'static str {
        match self {
            TxKind::Silent => "silent",
            TxKind::FirstQubit { .. } => "q1",
            TxKind::SecondQubit { .. } => "q2",
            TxKind::BareQubit { .. } => "q",
        }
    }

    pub fn pair_id(self) -> Option<u64> {
        match self {
            TxKind::Silent => None,
            TxKind::FirstQubit { pair } | TxKind::SecondQubit { pair } => Some(pair),
            TxKind::BareQubit { id } => Some(id),
        }
    }

    pub fn is_transmission(self) -> bool {
        !matches!(self, TxKind::Silent)
    }
}

/// One slot of the run. At most one transmitter per slot (half-duplex).
#[derive(Clone, Debug)]
pub struct SlotEvent {
    pub slot: u64,
    /// Who transmitted (or held the right to transmit) this slot.
    pub from: User,
    pub tx: TxKind,
    /// Bits the receiving side decoded this slot, in stream order.
    pub bits: Vec<bool>,
    /// 1-based index of the round this slot belongs to.
    pub round: u64,
}

/// A delay charge applied to the elapsed-time accumulator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DelayCharge {
    /// Slot at whose start the charge applies.
    pub slot: u64,
    pub amount: f64,
}

/// Snapshot of the cumulative tallies at the end of a slot.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Checkpoint {
    pub slot: u64,
    pub bits_delivered: u64,
    pub qubits_transmitted: u64,
    pub delay_charged: f64,
    pub sd_bits: u64,
    pub sd_bit_errors: u64,
}

impl Checkpoint {
    /// Cumulative rate at the snapshot: bits so far over elapsed slots plus
    /// delay charged so far.
    pub fn rate(&self) -> f64 {
        self.bits_delivered as f64 / (self.slot as f64 + self.delay_charged)
    }

    /// Cumulative efficiency: bits so far per qubit transmitted; zero before
    /// the first transmission.
    pub fn efficiency(&self) -> f64 {
        if self.qubits_transmitted == 0 {
            0.0
        } else {
            self.bits_delivered as f64 / self.qubits_transmitted as f64
        }
    }
}

/// Why the run stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    HorizonReached,
    /// A finite input buffer ran out. `mid_round` marks an abandoned partial
    /// round (its pair, if any, was discarded).
    BufferExhausted {
        user: User,
        mid_round: bool,
    },
}

/// Everything a run produced. A pure function of its config.
#[derive(Clone, Debug)]
pub struct Trace {
    pub config: SimConfig,
    /// Per-slot events; empty unless `config.record_trace`.
    pub events: Vec<SlotEvent>,
    /// Completed rounds per user, in completion order.
    pub rounds: [Vec<RoundRecord>; 2],
    pub delay_charges: Vec<DelayCharge>,
    pub checkpoints: Vec<Checkpoint>,
    /// Slots actually simulated.
    pub elapsed_slots: u64,
    /// Bits decoded by the receivers, partial-round deliveries included.
    pub bits_delivered: u64,
    pub qubits_transmitted: u64,
    pub sd_bits: u64,
    pub sd_bit_errors: u64,
    /// Pairs whose second transmission never happened (run cut mid-round).
    pub discarded_pairs: Vec<u64>,
    pub termination: Termination,
}

impl Trace {
    pub fn delay_charged(&self) -> f64 {
        self.delay_charges.iter().map(|c| c.amount).sum()
    }

    pub fn rounds_for(&self, user: User) -> &[RoundRecord] {
        &self.rounds[user.index()]
    }

    /// All completed rounds of both users, ordered by round index.
    pub fn all_rounds(&self) -> Vec<&RoundRecord> {
        let mut all: Vec<&RoundRecord> = self.rounds.iter().flatten().collect();
        all.sort_by_key(|r| r.round);
        all
    }

    pub fn total_rounds(&self) -> u64 {
        (self.rounds[0].len() + self.rounds[1].len()) as u64
    }
}
