//! Memory noise: the phenomenological T1/T2 map applied per storage slot, and
//! the fixed-coherence-time cliff idealization.

use nalgebra::Matrix4;
use rand::Rng;

use super::state::{bell_measure, BellOutcome, PairState, Qubit};
use crate::error::QuantumError;

/// Relaxation (T1) and dephasing (T2) times of a qubit memory, in slots.
///
/// Infinite times are allowed and mean no decay. Complete positivity of the
/// map requires T2 <= 2*T1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseParams {
    t1: f64,
    t2: f64,
}

impl NoiseParams {
    pub fn new(t1: f64, t2: f64) -> Result<Self, QuantumError> {
        if t1.is_nan() || t1 <= 0.0 {
            return Err(QuantumError::InvalidT1(t1));
        }
        if t2.is_nan() || t2 <= 0.0 {
            return Err(QuantumError::InvalidT2(t2));
        }
        if t2 > 2.0 * t1 {
            return Err(QuantumError::IncompatibleTimes { t1, t2 });
        }
        Ok(NoiseParams { t1, t2 })
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    pub fn t2(&self) -> f64 {
        self.t2
    }

    /// e^(-t/T1): surviving excited-state population after t slots.
    pub fn population_decay(&self, slots: f64) -> f64 {
        (-slots / self.t1).exp()
    }

    /// e^(-t/T2): surviving coherence after t slots.
    pub fn coherence_decay(&self, slots: f64) -> f64 {
        (-slots / self.t2).exp()
    }
}

/// Maximum coherent lifetime of a pair in slots; the minimal round needs two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CoherenceBudget {
    c: u32,
}

impl CoherenceBudget {
    pub fn new(c: u32) -> Result<Self, QuantumError> {
        if c < 2 {
            return Err(QuantumError::BudgetTooShort(c));
        }
        Ok(CoherenceBudget { c })
    }

    pub fn slots(&self) -> u32 {
        self.c
    }
}

/// Apply the T1/T2 map to one qubit of the pair for `slots` slots.
///
/// Excited populations of the target qubit scale by e^(-t/T1) with the lost
/// weight moved to the ground population; all coherences of the target scale
/// by e^(-t/T2). Trace-preserving, and completely positive under the
/// parameter invariant.
pub fn apply_memory_noise(
    pair: &PairState,
    qubit: Qubit,
    slots: u32,
    params: &NoiseParams,
) -> PairState {
    let e1 = params.population_decay(slots as f64);
    let e2 = params.coherence_decay(slots as f64);
    let rho = pair.rho();
    let mut out = Matrix4::zeros();
    // Bit of the target qubit inside a basis index 2*a + b.
    let target_bit = |idx: usize| match qubit {
        Qubit::A => (idx >> 1) & 1,
        Qubit::B => idx & 1,
    };
    let clear_target = |idx: usize| match qubit {
        Qubit::A => idx & 0b01,
        Qubit::B => idx & 0b10,
    };
    for r in 0..4 {
        for c in 0..4 {
            let (tr, tc) = (target_bit(r), target_bit(c));
            let v = rho[(r, c)];
            if tr == 1 && tc == 1 {
                out[(r, c)] += v * e1;
                out[(clear_target(r), clear_target(c))] += v * (1.0 - e1);
            } else if tr != tc {
                out[(r, c)] += v * e2;
            } else {
                out[(r, c)] += v;
            }
        }
    }
    let mut noised = pair.with_rho(out);
    noised.accrue_noise(qubit, slots);
    noised
}

/// Cliff model: the state as seen by a measurement at `measure_slot`.
///
/// A pair older than the budget is treated as fully depolarized; within the
/// budget it is untouched. Age counts both endpoint slots, so a pair sent at
/// slot t and measured at slot t+1 has age 2.
pub fn coherence_cliff_state(
    pair: &PairState,
    measure_slot: u64,
    budget: CoherenceBudget,
) -> PairState {
    let age = measure_slot.saturating_sub(pair.generated_at()) + 1;
    if age <= u64::from(budget.slots()) {
        pair.clone()
    } else {
        PairState::fully_mixed(pair.generated_at())
    }
}

/// Bell measurement under the cliff model: exact within the budget, a
/// uniformly random outcome beyond it.
pub fn fixed_coherence_measure(
    pair: PairState,
    measure_slot: u64,
    budget: CoherenceBudget,
    rng: &mut impl Rng,
) -> BellOutcome {
    let state = coherence_cliff_state(&pair, measure_slot, budget);
    bell_measure(state, rng)
}
