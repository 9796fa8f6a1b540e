//! The slot loop: one transmitter per slot, same-slot arrival at the peer,
//! rounds accounted on completion, roles swapped every N rounds.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use super::trace::{Checkpoint, DelayCharge, SlotEvent, Termination, Trace, TxKind, User};
use super::{Horizon, Mode, NoiseModel, SimConfig};
use crate::error::ConfigError;
use crate::protocol::{
    BitBuffer, Observation, Receiver, RoundRecord, Sender, SenderStep, SlotAction,
};
use crate::quantum::{
    apply_memory_noise, coherence_cliff_state, encode_superdense, PairState, Qubit,
};

/// Add the per-block delay to the elapsed-time accumulator when `round_index`
/// (1-based) opens a new block of `rounds_per_swap` rounds; a no-op inside a
/// block. Charging whole-delta-per-block equals delta/N per round in the long
/// run. The first round of the run is charged too.
pub fn charge_round_delay(clock: f64, round_index: u64, config: &SimConfig) -> f64 {
    if round_index >= 1 && (round_index - 1).is_multiple_of(u64::from(config.rounds_per_swap)) {
        clock + config.delta
    } else {
        clock
    }
}

/// State of a pair at measurement time, given its storage exposure and the
/// noise model.
///
/// `storage_slots` is the per-qubit exposure, gap zeros plus one: qubit A
/// sits in the sender memory from generation until its transmission slot,
/// qubit B in the receiver memory from arrival until the measurement slot.
/// In-flight transit is noiseless and instantaneous within a slot. Noise on
/// qubit A precedes the payload encoding, which happens at transmission.
pub fn apply_noise_schedule(
    pair: &PairState,
    payload: (bool, bool),
    storage_slots: u32,
    noise: &NoiseModel,
    measure_slot: u64,
) -> PairState {
    match noise {
        NoiseModel::None => encode_superdense(pair, payload.0, payload.1),
        NoiseModel::T1T2(params) => {
            let aged = apply_memory_noise(pair, Qubit::A, storage_slots, params);
            let encoded = encode_superdense(&aged, payload.0, payload.1);
            apply_memory_noise(&encoded, Qubit::B, storage_slots, params)
        }
        NoiseModel::Cliff(budget) => {
            let encoded = encode_superdense(pair, payload.0, payload.1);
            coherence_cliff_state(&encoded, measure_slot, *budget)
        }
    }
}

/// Run a simulation; the two input streams and all measurement draws derive
/// from `config.seed`, so identical configs produce identical traces.
pub fn run_simulation(config: &SimConfig) -> Result<Trace, ConfigError> {
    let buffers = [
        BitBuffer::seeded(config.seed, 0),
        BitBuffer::seeded(config.seed, 1),
    ];
    run_simulation_with_buffers(config, buffers)
}

/// Same engine with caller-supplied input buffers (finite buffers allowed;
/// exhaustion terminates the run and is recorded in the trace).
pub fn run_simulation_with_buffers(
    config: &SimConfig,
    buffers: [BitBuffer; 2],
) -> Result<Trace, ConfigError> {
    config.validate()?;
    let mut run = Run::new(config);
    let mut driver = Driver::new(config, buffers)?;
    let termination = loop {
        if let Horizon::Rounds(target) = config.horizon {
            if run.rounds_done >= target {
                break Termination::HorizonReached;
            }
        }
        if let Horizon::Slots(total) = config.horizon {
            if run.slot >= total {
                break Termination::HorizonReached;
            }
        }
        run.slot += 1;
        run.begin_slot();
        if let Some(termination) = driver.step(&mut run) {
            break termination;
        }
        run.end_slot();
    };
    // A pair whose second transmission never happened is discarded, so every
    // transmitted qubit is accounted for.
    if let Some(id) = driver.dangling_pair() {
        run.discarded_pairs.push(id);
    }
    Ok(run.finish(termination))
}

/// Shared per-run bookkeeping: tallies, events, rounds, delay, checkpoints.
struct Run<'a> {
    config: &'a SimConfig,
    slot: u64,
    tx: User,
    rounds_done: u64,
    rounds_in_block: u32,
    round_open_slot: u64,
    delay_charged: f64,
    bits: u64,
    qubits: u64,
    sd_bits: u64,
    sd_errors: u64,
    events: Vec<SlotEvent>,
    rounds: [Vec<RoundRecord>; 2],
    delay_charges: Vec<DelayCharge>,
    checkpoint_slots: Vec<u64>,
    next_checkpoint: usize,
    checkpoints: Vec<Checkpoint>,
    discarded_pairs: Vec<u64>,
}

impl<'a> Run<'a> {
    fn new(config: &'a SimConfig) -> Self {
        let mut checkpoint_slots = config.checkpoints.clone();
        checkpoint_slots.sort_unstable();
        checkpoint_slots.dedup();
        Run {
            config,
            slot: 0,
            tx: User::U1,
            rounds_done: 0,
            rounds_in_block: 0,
            round_open_slot: 1,
            delay_charged: 0.0,
            bits: 0,
            qubits: 0,
            sd_bits: 0,
            sd_errors: 0,
            events: Vec::new(),
            rounds: [Vec::new(), Vec::new()],
            delay_charges: Vec::new(),
            checkpoint_slots,
            next_checkpoint: 0,
            checkpoints: Vec::new(),
            discarded_pairs: Vec::new(),
        }
    }

    fn begin_slot(&mut self) {
        if self.slot == self.round_open_slot {
            let charged = charge_round_delay(self.delay_charged, self.rounds_done + 1, self.config);
            if charged != self.delay_charged {
                self.delay_charges.push(DelayCharge {
                    slot: self.slot,
                    amount: charged - self.delay_charged,
                });
                self.delay_charged = charged;
            }
        }
    }

    /// Record one slot: what `from` transmitted and what the peer decoded.
    fn emit(&mut self, from: User, tx: TxKind, bits: Vec<bool>) {
        if tx.is_transmission() {
            self.qubits += 1;
        }
        self.bits += bits.len() as u64;
        if self.config.record_trace {
            self.events.push(SlotEvent {
                slot: self.slot,
                from,
                tx,
                bits,
                round: self.rounds_done + 1,
            });
        }
    }

    fn complete_round(&mut self, record: RoundRecord) {
        debug_assert_eq!(record.round, self.rounds_done + 1);
        self.rounds[self.tx.index()].push(record);
        self.rounds_done += 1;
        self.rounds_in_block += 1;
        if self.rounds_in_block == self.config.rounds_per_swap {
            self.tx = self.tx.other();
            self.rounds_in_block = 0;
        }
        self.round_open_slot = self.slot + 1;
    }

    fn end_slot(&mut self) {
        while self
            .checkpoint_slots
            .get(self.next_checkpoint)
            .is_some_and(|&s| s == self.slot)
        {
            self.checkpoints.push(Checkpoint {
                slot: self.slot,
                bits_delivered: self.bits,
                qubits_transmitted: self.qubits,
                delay_charged: self.delay_charged,
                sd_bits: self.sd_bits,
                sd_bit_errors: self.sd_errors,
            });
            self.next_checkpoint += 1;
        }
    }

    fn finish(self, termination: Termination) -> Trace {
        Trace {
            config: self.config.clone(),
            events: self.events,
            rounds: self.rounds,
            delay_charges: self.delay_charges,
            checkpoints: self.checkpoints,
            elapsed_slots: self.slot,
            bits_delivered: self.bits,
            qubits_transmitted: self.qubits,
            sd_bits: self.sd_bits,
            sd_bit_errors: self.sd_errors,
            discarded_pairs: self.discarded_pairs,
            termination,
        }
    }
}

/// Mode-specific per-slot behavior.
enum Driver {
    Quantum(QuantumDriver),
    Direct(DirectDriver),
    SdcTdd(SdcDriver),
    PingPong(PingPongDriver),
}

impl Driver {
    fn new(config: &SimConfig, buffers: [BitBuffer; 2]) -> Result<Self, ConfigError> {
        Ok(match config.mode {
            Mode::QuantumIdeal | Mode::QuantumVariant => {
                let pmode = config.protocol_mode()?;
                Driver::Quantum(QuantumDriver {
                    senders: [Sender::new(pmode), Sender::new(pmode)],
                    receivers: [Receiver::new(pmode), Receiver::new(pmode)],
                    buffers,
                    rng: measurement_rng(config.seed),
                    noise: config.noise_model()?,
                    open: None,
                    next_pair: 0,
                })
            }
            Mode::Direct => Driver::Direct(DirectDriver {
                buffers,
                next_qubit: 0,
            }),
            Mode::SdcTdd => Driver::SdcTdd(SdcDriver {
                buffers,
                pending: None,
                next_pair: 0,
                exclude_presharing: config.exclude_presharing,
            }),
            Mode::PingPong => Driver::PingPong(PingPongDriver {
                buffers,
                returning: None,
                next_pair: 0,
            }),
        })
    }

    /// Simulate one slot; `Some` terminates the run.
    fn step(&mut self, run: &mut Run) -> Option<Termination> {
        match self {
            Driver::Quantum(d) => d.step(run),
            Driver::Direct(d) => d.step(run),
            Driver::SdcTdd(d) => d.step(run),
            Driver::PingPong(d) => d.step(run),
        }
    }

    /// A transmitted-once pair left open when the run ended, if any.
    fn dangling_pair(&self) -> Option<u64> {
        match self {
            Driver::Quantum(d) => d.open.as_ref().map(|open| open.id),
            Driver::Direct(_) => None,
            Driver::SdcTdd(d) => d.pending.map(|(id, _)| id),
            Driver::PingPong(d) => d.returning.map(|(id, _)| id),
        }
    }
}

/// Measurement draws use their own stream so buffer reads never shift them.
fn measurement_rng(seed: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(2);
    rng
}

/// A quantum round in flight: the pair as generated, awaiting its second
/// transmission.
struct OpenRound {
    raw: PairState,
    id: u64,
    gen_slot: u64,
}

struct QuantumDriver {
    senders: [Sender; 2],
    receivers: [Receiver; 2],
    buffers: [BitBuffer; 2],
    rng: ChaCha12Rng,
    noise: NoiseModel,
    open: Option<OpenRound>,
    next_pair: u64,
}

impl QuantumDriver {
    fn step(&mut self, run: &mut Run) -> Option<Termination> {
        let tx = run.tx;
        let rx = tx.other();
        let action = match self.senders[tx.index()].step(&mut self.buffers[tx.index()], run.slot) {
            SenderStep::Idle => {
                return Some(Termination::BufferExhausted {
                    user: tx,
                    mid_round: false,
                })
            }
            SenderStep::Aborted => {
                if let Some(open) = self.open.take() {
                    run.discarded_pairs.push(open.id);
                }
                return Some(Termination::BufferExhausted {
                    user: tx,
                    mid_round: true,
                });
            }
            SenderStep::Action(action) => action,
        };
        match action {
            SlotAction::Silent => {
                let out = self.receivers[rx.index()]
                    .step(Observation::Silent, &mut self.rng)
                    .expect("sender enforces the stuffing cap");
                run.emit(tx, TxKind::Silent, out.bits);
            }
            SlotAction::FirstQubit(pair) => {
                let id = self.next_pair;
                self.next_pair += 1;
                self.open = Some(OpenRound {
                    raw: pair.clone(),
                    id,
                    gen_slot: run.slot,
                });
                let out = self.receivers[rx.index()]
                    .step(Observation::Qubit(pair), &mut self.rng)
                    .expect("sender enforces the stuffing cap");
                run.emit(tx, TxKind::FirstQubit { pair: id }, out.bits);
            }
            SlotAction::SecondQubit {
                pair: _encoded,
                payload,
                stuffed,
            } => {
                let open = self
                    .open
                    .take()
                    .expect("an open round behind a second qubit");
                let k2 = (run.slot - open.gen_slot - 1) as u32;
                let at_measurement =
                    apply_noise_schedule(&open.raw, payload, k2 + 1, &self.noise, run.slot);
                let out = self.receivers[rx.index()]
                    .step(Observation::Qubit(at_measurement), &mut self.rng)
                    .expect("sender enforces the stuffing cap");
                debug_assert!(out.round_complete);
                debug_assert_eq!(out.gap_zeros, k2);
                debug_assert_eq!(out.stuffed, stuffed);
                let k1 = (open.gen_slot - run.round_open_slot) as u32;
                let record = RoundRecord {
                    round: run.rounds_done + 1,
                    bits_delivered: k1 + 1 + out.bits.len() as u32,
                    slots_used: (run.slot - run.round_open_slot + 1) as u32,
                    qubits_sent: 2,
                    k1,
                    k2,
                    stuffed,
                    sd_sent: Some(payload),
                    sd_decoded: out.measured.map(|(_, decoded)| decoded),
                    completed_at_slot: run.slot,
                };
                run.sd_bits += 2;
                run.sd_errors += u64::from(record.sd_bit_errors());
                run.emit(tx, TxKind::SecondQubit { pair: open.id }, out.bits);
                run.complete_round(record);
            }
        }
        None
    }
}

struct DirectDriver {
    buffers: [BitBuffer; 2],
    next_qubit: u64,
}

impl DirectDriver {
    fn step(&mut self, run: &mut Run) -> Option<Termination> {
        let tx = run.tx;
        match self.buffers[tx.index()].next_bit() {
            None => Some(Termination::BufferExhausted {
                user: tx,
                mid_round: run.slot > run.round_open_slot,
            }),
            Some(false) => {
                run.emit(tx, TxKind::Silent, vec![false]);
                None
            }
            Some(true) => {
                let id = self.next_qubit;
                self.next_qubit += 1;
                run.emit(tx, TxKind::BareQubit { id }, vec![true]);
                let zeros = (run.slot - run.round_open_slot) as u32;
                let record = RoundRecord {
                    round: run.rounds_done + 1,
                    bits_delivered: zeros + 1,
                    slots_used: zeros + 1,
                    qubits_sent: 1,
                    k1: zeros,
                    k2: 0,
                    stuffed: false,
                    sd_sent: None,
                    sd_decoded: None,
                    completed_at_slot: run.slot,
                };
                run.complete_round(record);
                None
            }
        }
    }
}

struct SdcDriver {
    buffers: [BitBuffer; 2],
    /// Distribution done, data slot pending: (pair id, payload).
    pending: Option<(u64, (bool, bool))>,
    next_pair: u64,
    exclude_presharing: bool,
}

impl SdcDriver {
    fn step(&mut self, run: &mut Run) -> Option<Termination> {
        let tx = run.tx;
        if let Some((id, payload)) = self.pending.take() {
            run.emit(
                tx,
                TxKind::SecondQubit { pair: id },
                vec![payload.0, payload.1],
            );
            run.sd_bits += 2;
            run.complete_round(sdc_record(run.rounds_done + 1, 2, payload, run.slot));
            return None;
        }
        let Some(b0) = self.buffers[tx.index()].next_bit() else {
            return Some(Termination::BufferExhausted {
                user: tx,
                mid_round: false,
            });
        };
        let Some(b1) = self.buffers[tx.index()].next_bit() else {
            return Some(Termination::BufferExhausted {
                user: tx,
                mid_round: true,
            });
        };
        let id = self.next_pair;
        self.next_pair += 1;
        if self.exclude_presharing {
            // Distribution happens off the clock; the qubit still costs.
            run.qubits += 1;
            run.emit(tx, TxKind::SecondQubit { pair: id }, vec![b0, b1]);
            run.sd_bits += 2;
            run.complete_round(sdc_record(run.rounds_done + 1, 1, (b0, b1), run.slot));
        } else {
            self.pending = Some((id, (b0, b1)));
            run.emit(tx, TxKind::FirstQubit { pair: id }, Vec::new());
        }
        None
    }
}

fn sdc_record(round: u64, slots: u32, payload: (bool, bool), slot: u64) -> RoundRecord {
    RoundRecord {
        round,
        bits_delivered: 2,
        slots_used: slots,
        qubits_sent: 2,
        k1: 0,
        k2: 0,
        stuffed: false,
        sd_sent: Some(payload),
        sd_decoded: Some(payload),
        completed_at_slot: slot,
    }
}

struct PingPongDriver {
    buffers: [BitBuffer; 2],
    /// Travel qubit with the data sender: (pair id, bit being returned).
    returning: Option<(u64, bool)>,
    next_pair: u64,
}

impl PingPongDriver {
    fn step(&mut self, run: &mut Run) -> Option<Termination> {
        let tx = run.tx;
        if let Some((id, bit)) = self.returning.take() {
            run.emit(tx, TxKind::SecondQubit { pair: id }, vec![bit]);
            let record = RoundRecord {
                round: run.rounds_done + 1,
                bits_delivered: 1,
                slots_used: 2,
                qubits_sent: 2,
                k1: 0,
                k2: 0,
                stuffed: false,
                sd_sent: None,
                sd_decoded: None,
                completed_at_slot: run.slot,
            };
            run.complete_round(record);
            return None;
        }
        let Some(bit) = self.buffers[tx.index()].next_bit() else {
            return Some(Termination::BufferExhausted {
                user: tx,
                mid_round: false,
            });
        };
        let id = self.next_pair;
        self.next_pair += 1;
        self.returning = Some((id, bit));
        // The peer launches the travel qubit toward the data sender.
        run.emit(tx.other(), TxKind::FirstQubit { pair: id }, Vec::new());
        None
    }
}
