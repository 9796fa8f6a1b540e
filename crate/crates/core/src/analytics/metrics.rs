//! Rate and efficiency estimators over traces.

use serde::Serialize;

use crate::error::AnalyticsError;
use crate::sim::Trace;

/// Aggregate figures for one run: rate R (information bits per slot, delay
/// included in the denominator) and efficiency E (information bits per qubit
/// transmitted), measured over completed rounds.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    pub rate: f64,
    pub efficiency: f64,
    /// Wrong superdense bits per superdense bit; zero when none were sent.
    pub sd_error_rate: f64,
    pub rounds: u64,
    /// Sum of T_i over completed rounds.
    pub slots_in_rounds: u64,
    pub qubits: u64,
    pub sd_bits: u64,
    pub sd_bit_errors: u64,
    pub delay_charged: f64,
}

/// Metrics over the completed rounds of a trace:
/// R = sum(B_i) / (sum(T_i) + delay), E = sum(B_i) / qubits transmitted.
pub fn empirical_metrics(trace: &Trace) -> Result<Metrics, AnalyticsError> {
    let rounds = trace.all_rounds();
    let bits: u64 = rounds.iter().map(|r| u64::from(r.bits_delivered)).sum();
    let slots: u64 = rounds.iter().map(|r| u64::from(r.slots_used)).sum();
    let delay = trace.delay_charged();
    let elapsed = slots as f64 + delay;
    if elapsed <= 0.0 {
        return Err(AnalyticsError::ZeroElapsed);
    }
    let qubits = trace.qubits_transmitted;
    Ok(Metrics {
        rate: bits as f64 / elapsed,
        efficiency: if qubits == 0 {
            0.0
        } else {
            bits as f64 / qubits as f64
        },
        sd_error_rate: if trace.sd_bits == 0 {
            0.0
        } else {
            trace.sd_bit_errors as f64 / trace.sd_bits as f64
        },
        rounds: rounds.len() as u64,
        slots_in_rounds: slots,
        qubits,
        sd_bits: trace.sd_bits,
        sd_bit_errors: trace.sd_bit_errors,
        delay_charged: delay,
    })
}

/// Wrong superdense bits per superdense bit transmitted. Only superdense bits
/// can be erroneous; the timing bits are error-free by assumption.
pub fn sd_error_rate(trace: &Trace) -> Result<f64, AnalyticsError> {
    if trace.sd_bits == 0 {
        return Err(AnalyticsError::NoSdBits);
    }
    Ok(trace.sd_bit_errors as f64 / trace.sd_bits as f64)
}

/// One point of the cumulative per-slot series.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SeriesPoint {
    pub slot: u64,
    /// Bits delivered so far over (slot + delay charged so far).
    pub rate: f64,
    /// Bits delivered so far per qubit transmitted so far; zero before the
    /// first transmission.
    pub efficiency: f64,
}

/// The cumulative R and E series evaluated at every simulated slot. Requires
/// a trace recorded with slot events.
pub fn cumulative_series(trace: &Trace) -> Result<Vec<SeriesPoint>, AnalyticsError> {
    if !trace.config.record_trace {
        return Err(AnalyticsError::MissingEvents);
    }
    let mut points = Vec::with_capacity(trace.elapsed_slots as usize);
    let mut bits = 0u64;
    let mut qubits = 0u64;
    let mut delay = 0.0f64;
    let mut events = trace.events.iter().peekable();
    let mut charges = trace.delay_charges.iter().peekable();
    for slot in 1..=trace.elapsed_slots {
        while charges.peek().is_some_and(|c| c.slot <= slot) {
            delay += charges.next().unwrap().amount;
        }
        while events.peek().is_some_and(|e| e.slot <= slot) {
            let event = events.next().unwrap();
            bits += event.bits.len() as u64;
            qubits += u64::from(event.tx.is_transmission());
        }
        points.push(SeriesPoint {
            slot,
            rate: bits as f64 / (slot as f64 + delay),
            efficiency: if qubits == 0 {
                0.0
            } else {
                bits as f64 / qubits as f64
            },
        });
    }
    Ok(points)
}
