//! The per-slot sender and receiver state machines.
//!
//! A round is one sender turn: `k1` silent slots, the first qubit of a fresh
//! EPR pair, `k2` silent slots, then the second qubit carrying the superdense
//! payload. In the coherence-limited variant the sender stuffs a non-data "1"
//! once `k2` hits the cap, even when the next input bit happens to be a "1";
//! the receiver undoes the stuffing structurally, so the stream stays
//! uniquely decodable whatever the payload decodes to.

use rand::Rng;

use super::{BitBuffer, ProtocolMode};
use crate::error::ProtocolError;
use crate::quantum::{
    bell_measure, decode_superdense, encode_superdense, make_epr_pair, BellOutcome, PairState,
};

/// What the sender puts on the channel in one slot.
#[derive(Clone, Debug)]
pub enum SlotAction {
    Silent,
    /// First qubit of a freshly generated pair.
    FirstQubit(PairState),
    /// Second qubit, superdense-encoded with `payload`.
    SecondQubit {
        pair: PairState,
        payload: (bool, bool),
        stuffed: bool,
    },
}

/// Result of advancing a sender by one slot.
#[derive(Clone, Debug)]
pub enum SenderStep {
    Action(SlotAction),
    /// Buffer ran out between rounds; there is nothing left to send.
    Idle,
    /// Buffer ran out mid-round; the partial round cannot complete and its
    /// undelivered bits are not counted as consumed.
    Aborted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SenderPhase {
    BetweenRounds,
    PairHeld,
}

/// Transmitter state machine. Pure except for reading the input buffer.
#[derive(Clone, Debug)]
pub struct Sender {
    mode: ProtocolMode,
    phase: SenderPhase,
    zeros_since_first: u32,
    held: Option<PairState>,
    committed: u64,
}

impl Sender {
    pub fn new(mode: ProtocolMode) -> Self {
        Sender {
            mode,
            phase: SenderPhase::BetweenRounds,
            zeros_since_first: 0,
            held: None,
            committed: 0,
        }
    }

    /// Buffer position up to which every consumed bit is guaranteed to be
    /// delivered: bits of a round in flight are excluded until it completes.
    pub fn committed(&self) -> u64 {
        self.committed
    }

    /// Whether a round is open (first qubit sent, second pending).
    pub fn in_round(&self) -> bool {
        self.phase == SenderPhase::PairHeld
    }

    /// Silent slots sent since the first qubit of the open round.
    pub fn zeros_since_first(&self) -> u32 {
        self.zeros_since_first
    }

    /// Advance one slot, reading from `buffer` as needed. `slot` stamps any
    /// pair generated this slot.
    pub fn step(&mut self, buffer: &mut BitBuffer, slot: u64) -> SenderStep {
        match self.phase {
            SenderPhase::BetweenRounds => match buffer.next_bit() {
                None => SenderStep::Idle,
                Some(false) => {
                    self.committed = buffer.position();
                    SenderStep::Action(SlotAction::Silent)
                }
                Some(true) => {
                    let pair = make_epr_pair(slot);
                    self.held = Some(pair.clone());
                    self.phase = SenderPhase::PairHeld;
                    self.zeros_since_first = 0;
                    // The "1" is delivered the moment the qubit arrives, so it
                    // counts as committed even if the round later aborts.
                    self.committed = buffer.position();
                    SenderStep::Action(SlotAction::FirstQubit(pair))
                }
            },
            SenderPhase::PairHeld => {
                let must_stuff = matches!(
                    self.mode,
                    ProtocolMode::Decoherence { max_zeros } if self.zeros_since_first == max_zeros
                );
                if must_stuff {
                    return self.close_round(buffer, true);
                }
                match buffer.next_bit() {
                    None => SenderStep::Aborted,
                    Some(false) => {
                        self.zeros_since_first += 1;
                        SenderStep::Action(SlotAction::Silent)
                    }
                    Some(true) => self.close_round(buffer, false),
                }
            }
        }
    }

    fn close_round(&mut self, buffer: &mut BitBuffer, stuffed: bool) -> SenderStep {
        let (Some(b0), Some(b1)) = (buffer.next_bit(), buffer.next_bit()) else {
            return SenderStep::Aborted;
        };
        let pair = self.held.take().expect("a held pair in the open round");
        let encoded = encode_superdense(&pair, b0, b1);
        self.phase = SenderPhase::BetweenRounds;
        self.zeros_since_first = 0;
        self.committed = buffer.position();
        SenderStep::Action(SlotAction::SecondQubit {
            pair: encoded,
            payload: (b0, b1),
            stuffed,
        })
    }
}

/// What the receiver observes in one slot. Detection of qubit arrivals is
/// interaction-free and perfect; the carried state is whatever reaches the
/// measurement, noise included.
#[derive(Clone, Debug)]
pub enum Observation {
    Silent,
    Qubit(PairState),
}

/// Bits and bookkeeping produced by one receiver slot.
#[derive(Clone, Debug, Default)]
pub struct RecvOutput {
    /// Bits decoded this slot, in stream order.
    pub bits: Vec<bool>,
    /// True when this slot closed a round; the roles swap.
    pub round_complete: bool,
    /// Measurement outcome and decoded payload, set on round completion.
    pub measured: Option<(BellOutcome, (bool, bool))>,
    /// Whether the closing qubit was recognized as stuffing.
    pub stuffed: bool,
    /// Silent slots observed between the two qubits.
    pub gap_zeros: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ReceiverPhase {
    Empty,
    QubitStored,
}

/// Receiver state machine. Zeros observed between the two qubits stay
/// pending until the closing qubit disambiguates data "1" from stuffing.
#[derive(Clone, Debug)]
pub struct Receiver {
    mode: ProtocolMode,
    phase: ReceiverPhase,
    pending_zeros: u32,
    stored: Option<PairState>,
}

impl Receiver {
    pub fn new(mode: ProtocolMode) -> Self {
        Receiver {
            mode,
            phase: ReceiverPhase::Empty,
            pending_zeros: 0,
            stored: None,
        }
    }

    /// Whether the first qubit of a round is in memory.
    pub fn holding_qubit(&self) -> bool {
        self.phase == ReceiverPhase::QubitStored
    }

    /// Advance one slot on an observation, measuring with `rng` when the
    /// closing qubit arrives.
    pub fn step(
        &mut self,
        observation: Observation,
        rng: &mut impl Rng,
    ) -> Result<RecvOutput, ProtocolError> {
        match (self.phase, observation) {
            (ReceiverPhase::Empty, Observation::Silent) => Ok(RecvOutput {
                bits: vec![false],
                ..RecvOutput::default()
            }),
            (ReceiverPhase::Empty, Observation::Qubit(pair)) => {
                self.stored = Some(pair);
                self.phase = ReceiverPhase::QubitStored;
                self.pending_zeros = 0;
                Ok(RecvOutput {
                    bits: vec![true],
                    ..RecvOutput::default()
                })
            }
            (ReceiverPhase::QubitStored, Observation::Silent) => {
                self.pending_zeros += 1;
                if let ProtocolMode::Decoherence { max_zeros } = self.mode {
                    if self.pending_zeros > max_zeros {
                        return Err(ProtocolError::StuffingOverrun {
                            seen: self.pending_zeros,
                            max: max_zeros,
                        });
                    }
                }
                Ok(RecvOutput::default())
            }
            (ReceiverPhase::QubitStored, Observation::Qubit(pair)) => {
                let outcome = bell_measure(pair, rng);
                let (d0, d1) = decode_superdense(outcome);
                let gap = self.pending_zeros;
                let stuffed = matches!(
                    self.mode,
                    ProtocolMode::Decoherence { max_zeros } if gap == max_zeros
                );
                let mut bits = vec![false; gap as usize];
                if !stuffed {
                    bits.push(true);
                }
                bits.push(d0);
                bits.push(d1);
                self.stored = None;
                self.phase = ReceiverPhase::Empty;
                self.pending_zeros = 0;
                Ok(RecvOutput {
                    bits,
                    round_complete: true,
                    measured: Some((outcome, (d0, d1))),
                    stuffed,
                    gap_zeros: gap,
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn rng() -> ChaCha12Rng {
        ChaCha12Rng::seed_from_u64(0xfeed)
    }

    /// Drive a sender/receiver pair over a lossless channel until the sender
    /// runs dry. Returns (receiver bits, sender committed cursor, wire).
    fn loopback(input: &str, mode: ProtocolMode) -> (Vec<bool>, u64, Vec<bool>) {
        let mut buffer = BitBuffer::from_str_bits(input);
        let mut sender = Sender::new(mode);
        let mut receiver = Receiver::new(mode);
        let mut rng = rng();
        let mut decoded = Vec::new();
        let mut wire = Vec::new();
        for slot in 1u64.. {
            let obs = match sender.step(&mut buffer, slot) {
                SenderStep::Idle | SenderStep::Aborted => break,
                SenderStep::Action(SlotAction::Silent) => {
                    wire.push(false);
                    Observation::Silent
                }
                SenderStep::Action(SlotAction::FirstQubit(pair)) => {
                    wire.push(true);
                    Observation::Qubit(pair)
                }
                SenderStep::Action(SlotAction::SecondQubit { pair, .. }) => {
                    wire.push(true);
                    Observation::Qubit(pair)
                }
            };
            decoded.extend(receiver.step(obs, &mut rng).unwrap().bits);
        }
        (decoded, sender.committed(), wire)
    }

    fn bits(s: &str) -> Vec<bool> {
        s.chars()
            .filter_map(|c| match c {
                '0' => Some(false),
                '1' => Some(true),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn no_stuffing_for_00011() {
        // Gap cap 2: the "1" after three leading zeros closes nothing; the
        // round's second "1" arrives before the cap, so it is data.
        let mode = ProtocolMode::Decoherence { max_zeros: 2 };
        let (decoded, committed, wire) = loopback("00011 10", mode);
        assert_eq!(wire, bits("00011"));
        assert_eq!(decoded, bits("0001110"));
        assert_eq!(committed, 7);
    }

    #[test]
    fn stuffing_for_001001() {
        // After "001" and two zeros the cap is hit: the next wire "1" is
        // stuffed and the genuine input "1" flows into the payload.
        let mode = ProtocolMode::Decoherence { max_zeros: 2 };
        let (decoded, committed, wire) = loopback("001001 0", mode);
        assert_eq!(wire, bits("001001"));
        assert_eq!(decoded, bits("0010010"));
        assert_eq!(committed, 7);
    }

    #[test]
    fn stuffing_for_010001() {
        let mode = ProtocolMode::Decoherence { max_zeros: 2 };
        let (decoded, committed, wire) = loopback("010001", mode);
        // Input bits after the two gap zeros, "01", become the payload; the
        // wire closes with the stuffed "1" at gap = 2.
        assert_eq!(wire, bits("01001"));
        assert_eq!(decoded, bits("010001"));
        assert_eq!(committed, 6);
    }

    #[test]
    fn sequence_10111_payload_is_final_two_bits() {
        // Wire: first qubit, one silent slot, second qubit; payload (1,1).
        let mode = ProtocolMode::Ideal;
        let mut buffer = BitBuffer::from_str_bits("10111");
        let mut sender = Sender::new(mode);
        let mut actions = Vec::new();
        for slot in 1..=3 {
            match sender.step(&mut buffer, slot) {
                SenderStep::Action(a) => actions.push((slot, a)),
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(matches!(actions[0], (1, SlotAction::FirstQubit(_))));
        assert!(matches!(actions[1], (2, SlotAction::Silent)));
        match &actions[2] {
            (
                3,
                SlotAction::SecondQubit {
                    payload, stuffed, ..
                },
            ) => {
                assert_eq!(*payload, (true, true));
                assert!(!stuffed);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn minimal_ideal_round_decodes_exactly() {
        // Observed 1 [q] 1 [q] with noiseless payload (1,1) -> 1111.
        let (decoded, committed, wire) = loopback("11 11", ProtocolMode::Ideal);
        assert_eq!(wire, bits("11"));
        assert_eq!(decoded, bits("1111"));
        assert_eq!(committed, 4);
    }

    #[test]
    fn receiver_emits_pending_zeros_at_round_end() {
        // 0 0 1 [q] 1 [q]: gap zero; then a longer gap round.
        let mode = ProtocolMode::Decoherence { max_zeros: 2 };
        let (decoded, _, _) = loopback("0011 10 011", mode);
        // Round 1: k1 = 2, gap 0, data "1", payload (1,0).
        // Then "0", then round 2 opens with "1" and gap 1... input ends.
        assert!(decoded.starts_with(&bits("001110")));
    }

    #[test]
    fn mid_round_exhaustion_aborts_and_commits_nothing_extra() {
        let mode = ProtocolMode::Ideal;
        let mut buffer = BitBuffer::from_str_bits("0101");
        let mut sender = Sender::new(mode);
        assert!(matches!(
            sender.step(&mut buffer, 1),
            SenderStep::Action(SlotAction::Silent)
        ));
        assert!(matches!(
            sender.step(&mut buffer, 2),
            SenderStep::Action(SlotAction::FirstQubit(_))
        ));
        assert!(matches!(
            sender.step(&mut buffer, 3),
            SenderStep::Action(SlotAction::Silent)
        ));
        // The closing "1" is read but the payload is missing.
        assert!(matches!(sender.step(&mut buffer, 4), SenderStep::Aborted));
        // The leading zero and the first-qubit "1" were delivered; the gap
        // zero and the dangling trigger were not.
        assert_eq!(sender.committed(), 2);
    }

    #[test]
    fn exhaustion_between_rounds_idles() {
        let mut buffer = BitBuffer::from_str_bits("00");
        let mut sender = Sender::new(ProtocolMode::Ideal);
        sender.step(&mut buffer, 1);
        sender.step(&mut buffer, 2);
        assert!(matches!(sender.step(&mut buffer, 3), SenderStep::Idle));
        assert_eq!(sender.committed(), 2);
    }

    #[test]
    fn receiver_rejects_gap_beyond_cap() {
        let mode = ProtocolMode::Decoherence { max_zeros: 1 };
        let mut receiver = Receiver::new(mode);
        let mut rng = rng();
        receiver
            .step(Observation::Qubit(make_epr_pair(1)), &mut rng)
            .unwrap();
        receiver.step(Observation::Silent, &mut rng).unwrap();
        let err = receiver.step(Observation::Silent, &mut rng).unwrap_err();
        assert_eq!(err, ProtocolError::StuffingOverrun { seen: 2, max: 1 });
    }

    #[test]
    fn zero_cap_forces_back_to_back_rounds() {
        let mode = ProtocolMode::Decoherence { max_zeros: 0 };
        let (decoded, committed, wire) = loopback("100 101 1", mode);
        // Every round is [q][stuffed q] back to back; a third round opens on
        // the final "1" but aborts for lack of payload.
        assert_eq!(wire, bits("11111"));
        assert_eq!(decoded, bits("1001011"));
        assert_eq!(committed, 7);
    }

    #[test]
    fn decodability_against_committed_cursor_random_inputs() {
        let mut seed_rng = rng();
        for case in 0..200 {
            let len = (case * 7) % 64;
            let input: Vec<bool> = (0..len).map(|_| seed_rng.random()).collect();
            for mode in [
                ProtocolMode::Ideal,
                ProtocolMode::Decoherence { max_zeros: 0 },
                ProtocolMode::Decoherence { max_zeros: 3 },
            ] {
                let rendered: String = input.iter().map(|&b| if b { '1' } else { '0' }).collect();
                let (decoded, committed, _) = loopback(&rendered, mode);
                assert_eq!(
                    decoded,
                    input[..committed as usize],
                    "mode {mode:?} input {rendered}"
                );
            }
        }
    }
}
