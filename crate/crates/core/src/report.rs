//! Plot-ready CSV and JSON emitters.
//!
//! Every file embeds the resolved configuration that produced it (a `# config`
//! comment line in CSV, a `config` field in JSON) so any output can be
//! replayed. Reals are rendered with 17 significant digits so re-runs compare
//! byte for byte.

use std::io::{self, Write};

use serde::Serialize;

use crate::analytics::{cumulative_series, empirical_metrics, BatchSummary, Metrics};
use crate::error::AnalyticsError;
use crate::sim::Trace;

/// Fixed 17-significant-digit rendering for reals; round-trips f64 exactly.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// `# config {...}` header line shared by all CSV emitters.
fn config_line<C: Serialize>(config: &C) -> String {
    format!(
        "# config {}",
        serde_json::to_string(config).expect("config serializes")
    )
}

/// Write the per-slot trace CSV: one row per slot event with the cumulative
/// rate and efficiency series alongside.
pub fn write_trace_csv(w: &mut impl Write, trace: &Trace) -> io::Result<()> {
    writeln!(w, "{}", config_line(&trace.config))?;
    writeln!(w, "slot,direction,tx_kind,pair_id,bits_decoded,cum_R,cum_E")?;
    let series = match cumulative_series(trace) {
        Ok(series) => series,
        Err(AnalyticsError::MissingEvents) => return Ok(()),
        Err(other) => return Err(io::Error::other(other.to_string())),
    };
    for event in &trace.events {
        let point = series[(event.slot - 1) as usize];
        let bits: String = event
            .bits
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        let pair = event
            .tx
            .pair_id()
            .map(|id| id.to_string())
            .unwrap_or_default();
        writeln!(
            w,
            "{},{}->{},{},{},{},{},{}",
            event.slot,
            event.from,
            event.from.other(),
            event.tx.tag(),
            pair,
            bits,
            fmt_real(point.rate),
            fmt_real(point.efficiency),
        )?;
    }
    Ok(())
}

/// The run summary as a JSON value: config echo, totals, final metrics.
pub fn run_summary(trace: &Trace, metrics: &Metrics) -> serde_json::Value {
    serde_json::json!({
        "config": trace.config,
        "final_R": metrics.rate,
        "final_E": metrics.efficiency,
        "sd_error_rate": metrics.sd_error_rate,
        "rounds": metrics.rounds,
        "slots_in_rounds": metrics.slots_in_rounds,
        "elapsed_slots": trace.elapsed_slots,
        "delay_charged": metrics.delay_charged,
        "bits_delivered": trace.bits_delivered,
        "qubits_transmitted": trace.qubits_transmitted,
        "sd_bits_total": metrics.sd_bits,
        "sd_bit_errors": metrics.sd_bit_errors,
        "terminated_early": trace.termination != crate::sim::Termination::HorizonReached,
    })
}

/// Convenience: metrics plus summary JSON for a finished run.
pub fn summarize_run(trace: &Trace) -> Result<(Metrics, serde_json::Value), AnalyticsError> {
    let metrics = empirical_metrics(trace)?;
    let summary = run_summary(trace, &metrics);
    Ok((metrics, summary))
}

/// One row of a theory table.
#[derive(Clone, Debug)]
pub struct TheoryRow {
    pub scheme: &'static str,
    pub c: Option<u32>,
    pub delta: Option<f64>,
    pub rounds_per_swap: Option<u32>,
    pub rate: f64,
    pub efficiency: f64,
    pub bits_per_round: Option<f64>,
    pub slots_per_round: Option<f64>,
}

/// Write the cumulative per-slot series on its own (the trace CSV carries
/// the same columns alongside the slot events).
pub fn write_series_csv(w: &mut impl Write, trace: &Trace) -> io::Result<()> {
    writeln!(w, "{}", config_line(&trace.config))?;
    writeln!(w, "slot,cum_R,cum_E")?;
    let series = match cumulative_series(trace) {
        Ok(series) => series,
        Err(AnalyticsError::MissingEvents) => return Ok(()),
        Err(other) => return Err(io::Error::other(other.to_string())),
    };
    for point in series {
        writeln!(
            w,
            "{},{},{}",
            point.slot,
            fmt_real(point.rate),
            fmt_real(point.efficiency)
        )?;
    }
    Ok(())
}

/// Write a closed-form theory table.
pub fn write_theory_csv<C: Serialize>(
    w: &mut impl Write,
    config: &C,
    rows: &[TheoryRow],
) -> io::Result<()> {
    writeln!(w, "{}", config_line(config))?;
    writeln!(w, "scheme,c,delta,rounds_per_swap,R_theory,E_theory,B,T")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{}",
            row.scheme,
            row.c.map(|c| c.to_string()).unwrap_or_default(),
            row.delta.map(fmt_real).unwrap_or_default(),
            row.rounds_per_swap
                .map(|n| n.to_string())
                .unwrap_or_default(),
            fmt_real(row.rate),
            fmt_real(row.efficiency),
            row.bits_per_round.map(fmt_real).unwrap_or_default(),
            row.slots_per_round.map(fmt_real).unwrap_or_default(),
        )?;
    }
    Ok(())
}

/// Distribution summary columns for one swept coherence budget.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub c: u32,
    pub runs: u32,
    pub slots: u64,
    pub rate_theory: f64,
    pub efficiency_theory: f64,
    pub rate: SummaryCols,
    pub efficiency: SummaryCols,
    pub sd_error_rate: SummaryCols,
}

/// Mean and quartiles of one metric across runs.
#[derive(Clone, Copy, Debug)]
pub struct SummaryCols {
    pub mean: f64,
    pub q1: f64,
    pub q3: f64,
}

impl From<&BatchSummary> for SummaryCols {
    fn from(summary: &BatchSummary) -> Self {
        SummaryCols {
            mean: summary.mean,
            q1: summary.q1,
            q3: summary.q3,
        }
    }
}

/// Write the sweep table: one row per c, simulation next to theory.
pub fn write_sweep_csv<C: Serialize>(
    w: &mut impl Write,
    config: &C,
    rows: &[SweepRow],
) -> io::Result<()> {
    writeln!(w, "{}", config_line(config))?;
    writeln!(
        w,
        "c,runs,slots,R_theory,E_theory,R_sim_mean,R_sim_q1,R_sim_q3,\
         E_sim_mean,E_sim_q1,E_sim_q3,err_rate_mean,err_rate_q1,err_rate_q3"
    )?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            row.c,
            row.runs,
            row.slots,
            fmt_real(row.rate_theory),
            fmt_real(row.efficiency_theory),
            fmt_real(row.rate.mean),
            fmt_real(row.rate.q1),
            fmt_real(row.rate.q3),
            fmt_real(row.efficiency.mean),
            fmt_real(row.efficiency.q1),
            fmt_real(row.efficiency.q3),
            fmt_real(row.sd_error_rate.mean),
            fmt_real(row.sd_error_rate.q1),
            fmt_real(row.sd_error_rate.q3),
        )?;
    }
    Ok(())
}

/// Per-run row of a batch table: metrics at the full horizon and at the
/// truncation slot.
#[derive(Clone, Copy, Debug)]
pub struct BatchRow {
    pub run: u32,
    pub seed: u64,
    pub rate_full: f64,
    pub efficiency_full: f64,
    pub rate_truncated: f64,
    pub efficiency_truncated: f64,
    pub sd_error_rate: f64,
}

/// Write the per-run batch table.
pub fn write_batch_csv<C: Serialize>(
    w: &mut impl Write,
    config: &C,
    rows: &[BatchRow],
) -> io::Result<()> {
    writeln!(w, "{}", config_line(config))?;
    writeln!(w, "run,seed,R_full,E_full,R_trunc,E_trunc,sd_error_rate")?;
    for row in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            row.run,
            row.seed,
            fmt_real(row.rate_full),
            fmt_real(row.efficiency_full),
            fmt_real(row.rate_truncated),
            fmt_real(row.efficiency_truncated),
            fmt_real(row.sd_error_rate),
        )?;
    }
    Ok(())
}
