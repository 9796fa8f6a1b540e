//! Sender/receiver slot state machines for the quantum two-way protocol
//! (unconstrained and coherence-limited variants), the wire-level stuffing
//! transform, and the classical baseline cost models.

mod baselines;
mod buffer;
mod machine;
mod stuffing;

pub use baselines::{baseline_direct, baseline_ping_pong, baseline_sdc_tdd, next_direct_round};
pub use buffer::BitBuffer;
pub use machine::{Observation, Receiver, RecvOutput, Sender, SenderStep, SlotAction};
pub use stuffing::stuff_transform;

use crate::quantum::CoherenceBudget;

/// Framing discipline of a quantum protocol endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProtocolMode {
    /// Unbounded gap between the two qubit transmissions of a round
    /// (error-free memories assumed).
    Ideal,
    /// Coherence-limited framing: at most `max_zeros` silent slots between
    /// the two qubits, enforced by stuffing a non-data "1" once the cap is
    /// reached. `max_zeros` is the budget minus the two transmission slots.
    Decoherence { max_zeros: u32 },
}

impl ProtocolMode {
    /// The variant mode matching a coherence budget of `c` slots.
    pub fn for_budget(budget: CoherenceBudget) -> Self {
        ProtocolMode::Decoherence {
            max_zeros: budget.slots() - 2,
        }
    }

    /// Gap cap between the two qubits, if any.
    pub fn max_gap_zeros(&self) -> Option<u32> {
        match self {
            ProtocolMode::Ideal => None,
            ProtocolMode::Decoherence { max_zeros } => Some(*max_zeros),
        }
    }
}

/// Accounting for one completed round of transmissions.
///
/// Invariants: `bits_delivered = k1 + k2 + 4` for a plain round and
/// `k1 + k2 + 3` for a stuffed one (the stuffed "1" carries no data bit);
/// `slots_used = k1 + k2 + 2` always; a stuffed round has `k2` equal to the
/// mode's gap cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    /// Global 1-based round index within the run.
    pub round: u64,
    /// B_i: information bits the round delivered.
    pub bits_delivered: u32,
    /// T_i: slots the round occupied, leading zeros included.
    pub slots_used: u32,
    /// Qubit transmissions charged to the round.
    pub qubits_sent: u32,
    /// Silent slots before the first qubit.
    pub k1: u32,
    /// Silent slots between the two qubits.
    pub k2: u32,
    /// Whether the closing "1" was stuffing rather than data.
    pub stuffed: bool,
    /// Superdense payload applied by the sender, if any.
    pub sd_sent: Option<(bool, bool)>,
    /// Superdense bits recovered by the receiver, if any.
    pub sd_decoded: Option<(bool, bool)>,
    /// Slot at which the round completed.
    pub completed_at_slot: u64,
}

impl RoundRecord {
    /// Wrong superdense bits in this round (0, 1 or 2).
    pub fn sd_bit_errors(&self) -> u32 {
        match (self.sd_sent, self.sd_decoded) {
            (Some((s0, s1)), Some((d0, d1))) => u32::from(s0 != d0) + u32::from(s1 != d1),
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sd_bit_error_counting() {
        let mut record = RoundRecord {
            round: 1,
            bits_delivered: 5,
            slots_used: 3,
            qubits_sent: 2,
            k1: 0,
            k2: 1,
            stuffed: false,
            sd_sent: Some((true, true)),
            sd_decoded: Some((true, true)),
            completed_at_slot: 3,
        };
        assert_eq!(record.sd_bit_errors(), 0);
        // Payload (1,1) decoded as (1,0): one of two superdense bits wrong,
        // a 50% rate for the round.
        record.sd_decoded = Some((true, false));
        assert_eq!(record.sd_bit_errors(), 1);
        record.sd_decoded = Some((false, false));
        assert_eq!(record.sd_bit_errors(), 2);
    }

    #[test]
    fn mode_for_budget() {
        let budget = CoherenceBudget::new(5).unwrap();
        assert_eq!(
            ProtocolMode::for_budget(budget),
            ProtocolMode::Decoherence { max_zeros: 3 }
        );
        assert_eq!(ProtocolMode::Ideal.max_gap_zeros(), None);
        assert_eq!(ProtocolMode::for_budget(budget).max_gap_zeros(), Some(3));
    }
}
