//! Two-qubit density matrices, the Bell basis, and superdense coding.
//!
//! The computational basis is |q_A q_B> with index 2*a + b. Qubit A is the
//! one its creator keeps in memory until the superdense-encoded transmission;
//! qubit B is the one transmitted first.

use nalgebra::{Complex, Matrix4, Vector4};
use rand::Rng;

use crate::error::QuantumError;

pub(crate) type C64 = Complex<f64>;

/// Tolerance on |trace - 1| for a valid density matrix.
pub const TRACE_TOL: f64 = 1e-12;
/// Tolerance on Hermiticity, max |rho_ij - conj(rho_ji)|.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Lower bound on the minimum eigenvalue of a valid density matrix.
pub const PSD_TOL: f64 = -1e-10;

/// Which qubit of a pair an operation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Qubit {
    /// Generated and kept by the sender, transmitted second with the
    /// superdense payload applied.
    A,
    /// Transmitted first, stored at the receiver until measurement.
    B,
}

/// The four orthogonal maximally entangled two-qubit states.
///
/// The discriminant order matches the superdense bit mapping: outcome index
/// equals `2*b0 + b1` of the payload that maps |Phi+> onto it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BellOutcome {
    /// (|00> + |11>)/sqrt(2)
    PhiPlus = 0,
    /// (|01> + |10>)/sqrt(2)
    PsiPlus = 1,
    /// (|00> - |11>)/sqrt(2)
    PhiMinus = 2,
    /// (|01> - |10>)/sqrt(2)
    PsiMinus = 3,
}

impl BellOutcome {
    pub const ALL: [BellOutcome; 4] = [
        BellOutcome::PhiPlus,
        BellOutcome::PsiPlus,
        BellOutcome::PhiMinus,
        BellOutcome::PsiMinus,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Self {
        Self::ALL[index]
    }

    /// The state vector in the computational basis |q_A q_B>.
    pub fn state_vector(self) -> Vector4<C64> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        match self {
            BellOutcome::PhiPlus => Vector4::new(h, z, z, h),
            BellOutcome::PsiPlus => Vector4::new(z, h, h, z),
            BellOutcome::PhiMinus => Vector4::new(h, z, z, -h),
            BellOutcome::PsiMinus => Vector4::new(z, h, -h, z),
        }
    }
}

/// One EPR pair: a 4x4 density matrix plus bookkeeping for when the pair was
/// generated and how many memory-noise slots each qubit has already absorbed.
#[derive(Clone, Debug)]
pub struct PairState {
    rho: Matrix4<C64>,
    generated_at: u64,
    noise_accrued: (u32, u32),
}

impl PairState {
    /// Wrap an arbitrary density matrix, verifying it is physical.
    pub fn from_density_matrix(rho: Matrix4<C64>, generated_at: u64) -> Result<Self, QuantumError> {
        let state = PairState {
            rho,
            generated_at,
            noise_accrued: (0, 0),
        };
        state.validate()?;
        Ok(state)
    }

    /// The fully depolarized state I/4.
    pub fn fully_mixed(generated_at: u64) -> Self {
        PairState {
            rho: Matrix4::identity() * C64::new(0.25, 0.0),
            generated_at,
            noise_accrued: (0, 0),
        }
    }

    pub fn rho(&self) -> &Matrix4<C64> {
        &self.rho
    }

    /// Slot index at which the pair was generated.
    pub fn generated_at(&self) -> u64 {
        self.generated_at
    }

    /// Memory-noise slots already applied to (qubit A, qubit B).
    pub fn noise_accrued(&self) -> (u32, u32) {
        self.noise_accrued
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// Smallest eigenvalue of the (Hermitian) density matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let eigen = nalgebra::SymmetricEigen::new(self.rho);
        eigen
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b))
    }

    /// Check trace, Hermiticity and positive semidefiniteness.
    pub fn validate(&self) -> Result<(), QuantumError> {
        let trace_dev = (self.trace() - 1.0).abs();
        if trace_dev > TRACE_TOL {
            return Err(QuantumError::NonUnitTrace(trace_dev));
        }
        let mut asym = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                asym = asym.max((self.rho[(r, c)] - self.rho[(c, r)].conj()).norm());
            }
        }
        if asym > HERMITICITY_TOL {
            return Err(QuantumError::NotHermitian(asym));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < PSD_TOL {
            return Err(QuantumError::NotPositive(min_eig));
        }
        Ok(())
    }

    /// Overlap <B|rho|B> with one Bell state.
    pub fn bell_fidelity(&self, outcome: BellOutcome) -> f64 {
        let v = outcome.state_vector();
        (v.adjoint() * self.rho * v)[(0, 0)].re
    }

    /// The diagonal of rho in the Bell basis, indexed by [`BellOutcome`].
    pub fn bell_diagonal(&self) -> [f64; 4] {
        let mut diag = [0.0; 4];
        for outcome in BellOutcome::ALL {
            diag[outcome.index()] = self.bell_fidelity(outcome);
        }
        diag
    }

    pub(crate) fn with_rho(&self, rho: Matrix4<C64>) -> Self {
        PairState {
            rho,
            generated_at: self.generated_at,
            noise_accrued: self.noise_accrued,
        }
    }

    pub(crate) fn accrue_noise(&mut self, qubit: Qubit, slots: u32) {
        match qubit {
            Qubit::A => self.noise_accrued.0 += slots,
            Qubit::B => self.noise_accrued.1 += slots,
        }
    }
}

/// Generate a fresh |Phi+> pair at the given slot.
pub fn make_epr_pair(slot: u64) -> PairState {
    // Written out entrywise so the entries are exactly 0.5 rather than
    // (1/sqrt(2))^2; the trace then stays exactly one under every later
    // unitary and noise map.
    let half = C64::new(0.5, 0.0);
    let mut rho = Matrix4::zeros();
    rho[(0, 0)] = half;
    rho[(0, 3)] = half;
    rho[(3, 0)] = half;
    rho[(3, 3)] = half;
    PairState {
        rho,
        generated_at: slot,
        noise_accrued: (0, 0),
    }
}

/// The payload-dependent Pauli Z^b0 X^b1 acting on qubit A, as a 4x4 unitary.
fn payload_pauli(b0: bool, b1: bool) -> Matrix4<C64> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    // 2x2 single-qubit operator Z^b0 * X^b1.
    let p: [[C64; 2]; 2] = match (b0, b1) {
        (false, false) => [[one, zero], [zero, one]],
        (false, true) => [[zero, one], [one, zero]],
        (true, false) => [[one, zero], [zero, -one]],
        (true, true) => [[zero, one], [-one, zero]],
    };
    let mut u = Matrix4::zeros();
    // Embed as P (x) I on the |q_A q_B> ordering.
    for a_out in 0..2 {
        for a_in in 0..2 {
            for b in 0..2 {
                u[(2 * a_out + b, 2 * a_in + b)] = p[a_out][a_in];
            }
        }
    }
    u
}

/// Encode two classical bits onto qubit A of the pair.
///
/// The payload map from |Phi+> yields Phi+, Psi+, Phi-, Psi- for
/// (0,0), (0,1), (1,0), (1,1) respectively.
pub fn encode_superdense(pair: &PairState, b0: bool, b1: bool) -> PairState {
    let u = payload_pauli(b0, b1);
    pair.with_rho(u * pair.rho * u.adjoint())
}

/// Recover the payload bits from a Bell measurement outcome. Exact inverse of
/// [`encode_superdense`] on noiseless states.
pub fn decode_superdense(outcome: BellOutcome) -> (bool, bool) {
    let i = outcome.index();
    (i & 2 != 0, i & 1 != 0)
}

/// Projective measurement in the Bell basis; consumes the pair.
///
/// Outcome probabilities are the Bell-diagonal entries of rho; they sum to
/// one for any valid state.
pub fn bell_measure(pair: PairState, rng: &mut impl Rng) -> BellOutcome {
    let diag = pair.bell_diagonal();
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for outcome in BellOutcome::ALL {
        acc += diag[outcome.index()].max(0.0);
        if u < acc {
            return outcome;
        }
    }
    // Rounding can leave acc marginally below one; the draw then belongs to
    // the last bin.
    BellOutcome::PsiMinus
}
