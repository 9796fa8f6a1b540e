use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use qtwp_core::quantum::{
    apply_memory_noise, bell_measure, encode_superdense, make_epr_pair, NoiseParams, Qubit,
};
use qtwp_core::sim::{run_simulation, Horizon, Mode, NoiseSpec, SimConfig};

fn quantum_primitives(c: &mut Criterion) {
    let params = NoiseParams::new(20.0, 18.0).unwrap();
    c.bench_function("encode_noise_measure_round", |b| {
        let mut rng = ChaCha12Rng::seed_from_u64(1);
        b.iter(|| {
            let pair = make_epr_pair(0);
            let aged = apply_memory_noise(&pair, Qubit::A, 1, &params);
            let encoded = encode_superdense(&aged, true, false);
            let noised = apply_memory_noise(&encoded, Qubit::B, 1, &params);
            black_box(bell_measure(noised, &mut rng))
        })
    });
}

fn engine_runs(c: &mut Criterion) {
    let ideal = {
        let mut cfg = SimConfig::new(Mode::QuantumIdeal);
        cfg.horizon = Horizon::Slots(10_000);
        cfg.seed = 1;
        cfg
    };
    c.bench_function("quantum_ideal_10k_slots", |b| {
        b.iter(|| black_box(run_simulation(&ideal).unwrap()))
    });

    let variant = {
        let mut cfg = SimConfig::new(Mode::QuantumVariant);
        cfg.c = Some(4);
        cfg.noise = NoiseSpec::T1T2 { t1: 20.0, t2: 18.0 };
        cfg.horizon = Horizon::Slots(10_000);
        cfg.seed = 1;
        cfg
    };
    c.bench_function("quantum_variant_t1t2_10k_slots", |b| {
        b.iter(|| black_box(run_simulation(&variant).unwrap()))
    });

    let direct = {
        let mut cfg = SimConfig::new(Mode::Direct);
        cfg.horizon = Horizon::Slots(10_000);
        cfg.seed = 1;
        cfg
    };
    c.bench_function("direct_10k_slots", |b| {
        b.iter(|| black_box(run_simulation(&direct).unwrap()))
    });
}

criterion_group!(benches, quantum_primitives, engine_runs);
criterion_main!(benches);
