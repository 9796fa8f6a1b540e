//! Closed-form rate and efficiency expressions.
//!
//! With i.i.d. uniform inputs the gap lengths K1, K2 are geometric with
//! p_k = (1/2)^(k+1); capping K2 at m = c - 2 via stuffing gives per-round
//! means B = 6 - 1/2^(m-1) bits and T = 4 - (1/2)^m slots, hence
//! R = B/(T + delta/N) and E = B/2.

use crate::error::AnalyticsError;

/// Asymptotic (R, E) of the unconstrained protocol: (1.5, 3).
pub fn theory_ideal() -> (f64, f64) {
    (1.5, 3.0)
}

/// Closed-form per-round quantities of the coherence-limited variant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecoherenceTheory {
    /// Information bits per slot.
    pub rate: f64,
    /// Information bits per qubit transmitted.
    pub efficiency: f64,
    /// Mean bits per round.
    pub bits_per_round: f64,
    /// Mean slots per round.
    pub slots_per_round: f64,
}

/// Evaluate the variant protocol's closed forms at coherence budget `c`.
pub fn theory_decoherence(c: u32) -> Result<DecoherenceTheory, AnalyticsError> {
    if c < 2 {
        return Err(AnalyticsError::InvalidC(c));
    }
    let m = i32::try_from(c).unwrap() - 2;
    let bits_per_round = 6.0 - 2f64.powi(1 - m);
    let slots_per_round = 4.0 - 2f64.powi(-m);
    let half_pow = 2f64.powi(1 - i32::try_from(c).unwrap()); // 1/2^(c-1)
    Ok(DecoherenceTheory {
        rate: 1.0 + (1.0 - half_pow) / (2.0 - half_pow),
        efficiency: 3.0 - 4.0 * 2f64.powi(-i32::try_from(c).unwrap()),
        bits_per_round,
        slots_per_round,
    })
}

/// Rate under a per-block delay of `delta` slot-equivalents charged every
/// `rounds_per_swap` rounds: the effective per-round delay is delta/N.
/// Without `c` the unconstrained form applies; with `c` the variant form.
/// The efficiency E is unchanged by delay.
pub fn theory_delay(
    delta: f64,
    c: Option<u32>,
    rounds_per_swap: u32,
) -> Result<f64, AnalyticsError> {
    if !delta.is_finite() || delta < 0.0 {
        return Err(AnalyticsError::InvalidDelta(delta));
    }
    if rounds_per_swap < 1 {
        return Err(AnalyticsError::InvalidRoundsPerSwap);
    }
    let d = delta / f64::from(rounds_per_swap);
    Ok(match c {
        None => 1.0 + (1.0 - d / 2.0) / (2.0 + d / 2.0),
        Some(c) => {
            if c < 2 {
                return Err(AnalyticsError::InvalidC(c));
            }
            let half_pow = 2f64.powi(1 - i32::try_from(c).unwrap());
            1.0 + (1.0 - half_pow - d / 2.0) / (2.0 - half_pow + d / 2.0)
        }
    })
}
