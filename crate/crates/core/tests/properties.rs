//! Structural properties: unique decodability, wire-length bounds,
//! physicality of the noise channel, and engine/cost-model agreement.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qtwp_core::protocol::{
    baseline_direct, stuff_transform, BitBuffer, Observation, ProtocolMode, Receiver, Sender,
    SenderStep, SlotAction,
};
use qtwp_core::quantum::{apply_memory_noise, NoiseParams, PairState, Qubit};
use qtwp_core::sim::{run_simulation, Horizon, Mode, SimConfig, User};

/// Drive one sender/receiver pair over a lossless channel until the sender
/// runs dry; returns (decoded bits, committed cursor).
fn loopback(input: &[bool], mode: ProtocolMode) -> (Vec<bool>, u64) {
    let mut buffer = BitBuffer::from_bits(input.to_vec());
    let mut sender = Sender::new(mode);
    let mut receiver = Receiver::new(mode);
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let mut decoded = Vec::new();
    for slot in 1u64.. {
        let observation = match sender.step(&mut buffer, slot) {
            SenderStep::Idle | SenderStep::Aborted => break,
            SenderStep::Action(SlotAction::Silent) => Observation::Silent,
            SenderStep::Action(SlotAction::FirstQubit(pair)) => Observation::Qubit(pair),
            SenderStep::Action(SlotAction::SecondQubit { pair, .. }) => Observation::Qubit(pair),
        };
        decoded.extend(receiver.step(observation, &mut rng).unwrap().bits);
    }
    (decoded, sender.committed())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    // Receiver output equals the consumed sender input bit for bit, for every
    // gap cap and for the unconstrained mode.
    #[test]
    fn unique_decodability(input in prop::collection::vec(any::<bool>(), 0..400)) {
        for m in 0..=8u32 {
            let (decoded, committed) = loopback(&input, ProtocolMode::Decoherence { max_zeros: m });
            prop_assert_eq!(&decoded, &input[..committed as usize], "m = {}", m);
        }
        let (decoded, committed) = loopback(&input, ProtocolMode::Ideal);
        prop_assert_eq!(&decoded, &input[..committed as usize]);
    }

    // The wire transform and the machine agree, and no round on the wire
    // spans more than m + 2 slots.
    #[test]
    fn wire_span_is_bounded(input in prop::collection::vec(any::<bool>(), 0..300)) {
        for m in 0..=6u32 {
            let wire = stuff_transform(&input, m);
            let mut open: Option<usize> = None;
            for (pos, &symbol) in wire.iter().enumerate() {
                if symbol {
                    match open.take() {
                        None => open = Some(pos),
                        Some(first) => prop_assert!(pos + 1 - first <= (m + 2) as usize),
                    }
                }
            }
        }
    }

    // The T1/T2 map keeps arbitrary two-qubit states physical for any valid
    // parameters and any number of slots.
    #[test]
    fn memory_noise_is_cptp(
        entries in prop::collection::vec(-1.0f64..1.0, 32),
        t1 in 0.5f64..200.0,
        ratio in 0.05f64..2.0,
        slots_a in 0u32..40,
        slots_b in 0u32..40,
    ) {
        let state = random_state(&entries);
        let params = NoiseParams::new(t1, t1 * ratio).unwrap();
        let noised = apply_memory_noise(
            &apply_memory_noise(&state, Qubit::A, slots_a, &params),
            Qubit::B,
            slots_b,
            &params,
        );
        prop_assert!((noised.trace() - 1.0).abs() <= 1e-12);
        prop_assert!(noised.min_eigenvalue() >= -1e-10);
        noised.validate().unwrap();
    }
}

/// An arbitrary physical state from raw entries: G G^dagger normalized.
fn random_state(entries: &[f64]) -> PairState {
    use nalgebra::{Complex, Matrix4};
    let mut g = Matrix4::zeros();
    for r in 0..4 {
        for c in 0..4 {
            g[(r, c)] = Complex::new(entries[2 * (4 * r + c)], entries[2 * (4 * r + c) + 1]);
        }
    }
    let mut rho = g * g.adjoint();
    // Guard against the all-zero draw.
    rho += Matrix4::identity() * Complex::new(1e-6, 0.0);
    let trace = rho.trace().re;
    rho *= Complex::new(1.0 / trace, 0.0);
    PairState::from_density_matrix(rho, 0).unwrap()
}

// Exhaustive over all input prefixes of length <= 12: a completed round's
// generation-to-measurement age never exceeds the coherence budget.
#[test]
fn coherence_bound_exhaustive() {
    for m in 0..=8u32 {
        let budget = u64::from(m) + 2;
        for len in 0..=12u32 {
            for pattern in 0u32..(1 << len) {
                let input: Vec<bool> = (0..len).map(|b| pattern >> b & 1 == 1).collect();
                let mut buffer = BitBuffer::from_bits(input.clone());
                let mut sender = Sender::new(ProtocolMode::Decoherence { max_zeros: m });
                let mut generated_at = None;
                for slot in 1u64.. {
                    match sender.step(&mut buffer, slot) {
                        SenderStep::Idle | SenderStep::Aborted => break,
                        SenderStep::Action(SlotAction::Silent) => {}
                        SenderStep::Action(SlotAction::FirstQubit(pair)) => {
                            generated_at = Some(pair.generated_at());
                        }
                        SenderStep::Action(SlotAction::SecondQubit { .. }) => {
                            let age = slot - generated_at.take().unwrap() + 1;
                            assert!(
                                age <= budget,
                                "age {age} > c {budget} for m={m} input={input:?}"
                            );
                        }
                    }
                }
            }
        }
    }
}

// With role swapping disabled, the engine's direct-mode rounds equal the
// standalone cost-model function driven by the same stream.
#[test]
fn engine_direct_mode_matches_cost_model() {
    let mut cfg = SimConfig::new(Mode::Direct);
    cfg.seed = 77;
    cfg.rounds_per_swap = u32::MAX;
    cfg.horizon = Horizon::Rounds(2000);
    let trace = run_simulation(&cfg).unwrap();
    let engine_rounds = trace.rounds_for(User::U1);
    assert_eq!(engine_rounds.len(), 2000);

    let mut buffer = BitBuffer::seeded(77, 0);
    let model_rounds = baseline_direct(&mut buffer, 2000);
    assert_eq!(model_rounds.len(), 2000);
    for (a, b) in engine_rounds.iter().zip(&model_rounds) {
        assert_eq!(a.k1, b.k1);
        assert_eq!(a.bits_delivered, b.bits_delivered);
        assert_eq!(a.slots_used, b.slots_used);
        assert_eq!(a.qubits_sent, b.qubits_sent);
    }
}

// The per-bit superdense error rate does not depend on which bit-preserving
// payload-to-Pauli labeling the endpoints agree on: swapping the two payload
// bits and/or inverting either one, applied consistently at encode and
// decode, leaves the exactly enumerated rate unchanged.
#[test]
fn sd_error_rate_is_invariant_under_consistent_relabeling() {
    use qtwp_core::quantum::{decode_superdense, encode_superdense, make_epr_pair, BellOutcome};

    let params = NoiseParams::new(20.0, 18.0).unwrap();
    let relabel = |(b0, b1): (bool, bool), swap: bool, mask: u8| -> (bool, bool) {
        let (b0, b1) = if swap { (b1, b0) } else { (b0, b1) };
        (b0 ^ (mask & 2 != 0), b1 ^ (mask & 1 != 0))
    };
    let payloads = [(false, false), (false, true), (true, false), (true, true)];
    let rate_for = |swap: bool, mask: u8| -> f64 {
        let unrelabel = |y: (bool, bool)| {
            *payloads
                .iter()
                .find(|&&x| relabel(x, swap, mask) == y)
                .unwrap()
        };
        let mut rate = 0.0;
        for &payload in &payloads {
            let wire = relabel(payload, swap, mask);
            let aged = apply_memory_noise(&make_epr_pair(0), Qubit::A, 3, &params);
            let encoded = encode_superdense(&aged, wire.0, wire.1);
            let measured = apply_memory_noise(&encoded, Qubit::B, 1, &params);
            let diagonal = measured.bell_diagonal();
            for outcome in BellOutcome::ALL {
                let decoded = unrelabel(decode_superdense(outcome));
                let errors = u8::from(decoded.0 != payload.0) + u8::from(decoded.1 != payload.1);
                rate += diagonal[outcome.index()] * f64::from(errors);
            }
        }
        rate / 8.0
    };
    let baseline = rate_for(false, 0);
    for swap in [false, true] {
        for mask in 0..4u8 {
            let relabeled = rate_for(swap, mask);
            assert!(
                (relabeled - baseline).abs() < 1e-12,
                "swap={swap} mask={mask}: {relabeled} vs {baseline}"
            );
        }
    }
}
