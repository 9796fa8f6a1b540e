//! Command implementations.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use qtwp_core::analytics::{batch_stats, theory_decoherence, theory_delay, BatchSummary};
use qtwp_core::report::{
    fmt_real, summarize_run, write_batch_csv, write_sweep_csv, write_theory_csv, write_trace_csv,
    BatchRow, SummaryCols, SweepRow, TheoryRow,
};
use qtwp_core::sim::{run_simulation, SimConfig};

use crate::args::{BatchArgs, RunArgs, SweepArgs, TheoryArgs};
use crate::pool::run_parallel;

/// Command failure, split by exit code: 2 for bad configuration, 1 for
/// runtime trouble.
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn runtime(e: impl std::fmt::Display) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut name = prefix.as_os_str().to_os_string();
    name.push(suffix);
    PathBuf::from(name)
}

pub fn run(args: RunArgs) -> Result<(), CliError> {
    let mut config = args.sim.to_config().map_err(CliError::Config)?;
    config.record_trace = true;
    let trace = run_simulation(&config).map_err(|e| CliError::Config(e.to_string()))?;
    let (metrics, summary) = summarize_run(&trace).map_err(CliError::runtime)?;

    let trace_path = with_suffix(&args.out_prefix, ".trace.csv");
    write_trace_csv(&mut create(&trace_path)?, &trace).map_err(CliError::runtime)?;
    let summary_path = with_suffix(&args.out_prefix, ".summary.json");
    write_json(&summary_path, &summary)?;

    println!("R = {}", fmt_real(metrics.rate));
    println!("E = {}", fmt_real(metrics.efficiency));
    println!("sd_error_rate = {}", fmt_real(metrics.sd_error_rate));
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(CliError::runtime)?;
    writeln!(w).map_err(CliError::runtime)
}

#[derive(Serialize)]
struct BatchEcho {
    base: SimConfig,
    runs: u32,
    truncate: u64,
}

#[derive(Serialize)]
struct BatchReport {
    config: BatchEcho,
    truncation_slot: u64,
    full: MetricSummaries,
    truncated: MetricSummaries,
}

#[derive(Serialize)]
struct MetricSummaries {
    #[serde(rename = "R")]
    rate: BatchSummary,
    #[serde(rename = "E")]
    efficiency: BatchSummary,
}

pub fn batch(args: BatchArgs) -> Result<(), CliError> {
    let base = args.sim.to_config().map_err(CliError::Config)?;
    if args.runs == 0 {
        return Err(CliError::Config("--runs must be at least 1".into()));
    }
    if args.truncate == 0 || args.truncate > args.sim.slots {
        return Err(CliError::Config(format!(
            "--truncate must lie in 1..=slots ({}), got {}",
            args.sim.slots, args.truncate
        )));
    }

    let results = run_parallel(args.runs as usize, |i| {
        let mut config = base.clone();
        config.seed = base.seed + i as u64;
        config.checkpoints = vec![args.truncate];
        let trace = run_simulation(&config).expect("validated config");
        let (metrics, _) = summarize_run(&trace).map_err(|e| e.to_string())?;
        let view = trace.checkpoints.first().ok_or("missing truncation view")?;
        Ok::<BatchRow, String>(BatchRow {
            run: i as u32,
            seed: config.seed,
            rate_full: metrics.rate,
            efficiency_full: metrics.efficiency,
            rate_truncated: view.rate(),
            efficiency_truncated: view.efficiency(),
            sd_error_rate: metrics.sd_error_rate,
        })
    });
    let rows: Vec<BatchRow> = results
        .into_iter()
        .collect::<Result<_, _>>()
        .map_err(CliError::Runtime)?;

    let echo = BatchEcho {
        base,
        runs: args.runs,
        truncate: args.truncate,
    };
    let csv_path = with_suffix(&args.out_prefix, ".batch.csv");
    write_batch_csv(&mut create(&csv_path)?, &echo, &rows).map_err(CliError::runtime)?;

    let collect = |f: fn(&BatchRow) -> f64| -> Result<BatchSummary, CliError> {
        batch_stats(&rows.iter().map(f).collect::<Vec<_>>()).map_err(CliError::runtime)
    };
    let report = BatchReport {
        truncation_slot: args.truncate,
        full: MetricSummaries {
            rate: collect(|r| r.rate_full)?,
            efficiency: collect(|r| r.efficiency_full)?,
        },
        truncated: MetricSummaries {
            rate: collect(|r| r.rate_truncated)?,
            efficiency: collect(|r| r.efficiency_truncated)?,
        },
        config: echo,
    };
    write_json(&with_suffix(&args.out_prefix, ".batch.json"), &report)?;

    println!(
        "runs = {}, R median (full) = {}, R median (slot {}) = {}",
        args.runs,
        fmt_real(report.full.rate.median),
        args.truncate,
        fmt_real(report.truncated.rate.median),
    );
    Ok(())
}

pub fn sweep(args: SweepArgs) -> Result<(), CliError> {
    if args.runs_per_c == 0 {
        return Err(CliError::Config("--runs-per-c must be at least 1".into()));
    }
    let budgets: Vec<u32> = (args.c_range.lo..=args.c_range.hi).collect();
    // Validate every budget's config up front so workers cannot fail on it.
    let configs: Vec<SimConfig> = budgets
        .iter()
        .map(|&c| args.config_for(c))
        .collect::<Result<_, _>>()
        .map_err(CliError::Config)?;

    let runs = args.runs_per_c as usize;
    let samples = run_parallel(budgets.len() * runs, |job| {
        let (c_index, run_index) = (job / runs, job % runs);
        let mut config = configs[c_index].clone();
        config.seed = args.seed + job as u64;
        let trace = run_simulation(&config).expect("validated config");
        let (metrics, _) = summarize_run(&trace).map_err(|e| e.to_string())?;
        Ok::<(usize, usize, f64, f64, f64), String>((
            c_index,
            run_index,
            metrics.rate,
            metrics.efficiency,
            metrics.sd_error_rate,
        ))
    });

    let mut rates = vec![Vec::with_capacity(runs); budgets.len()];
    let mut efficiencies = vec![Vec::with_capacity(runs); budgets.len()];
    let mut error_rates = vec![Vec::with_capacity(runs); budgets.len()];
    for sample in samples {
        let (c_index, _, rate, efficiency, err) = sample.map_err(CliError::Runtime)?;
        rates[c_index].push(rate);
        efficiencies[c_index].push(efficiency);
        error_rates[c_index].push(err);
    }

    let mut rows = Vec::with_capacity(budgets.len());
    for (i, &c) in budgets.iter().enumerate() {
        let summarize = |values: &[f64]| -> Result<SummaryCols, CliError> {
            Ok(SummaryCols::from(
                &batch_stats(values).map_err(CliError::runtime)?,
            ))
        };
        rows.push(SweepRow {
            c,
            runs: args.runs_per_c,
            slots: args.slots,
            rate_theory: theory_delay(args.delta, Some(c), args.rounds_per_swap)
                .map_err(CliError::runtime)?,
            efficiency_theory: theory_decoherence(c).map_err(CliError::runtime)?.efficiency,
            rate: summarize(&rates[i])?,
            efficiency: summarize(&efficiencies[i])?,
            sd_error_rate: summarize(&error_rates[i])?,
        });
    }

    let echo = serde_json::json!({
        "mode": "quantum-variant",
        "c_range": [args.c_range.lo, args.c_range.hi],
        "runs_per_c": args.runs_per_c,
        "slots": args.slots,
        "seed": args.seed,
        "noise": configs[0].noise,
        "delta": args.delta,
        "rounds_per_swap": args.rounds_per_swap,
    });
    let path = with_suffix(&args.out_prefix, ".sweep.csv");
    write_sweep_csv(&mut create(&path)?, &echo, &rows).map_err(CliError::runtime)?;
    println!(
        "wrote {} budgets x {} runs to {}",
        budgets.len(),
        runs,
        path.display()
    );
    Ok(())
}

pub fn theory(args: TheoryArgs) -> Result<(), CliError> {
    if args.c_range.is_none() && args.delta.is_none() {
        return Err(CliError::Config(
            "either --c-range or --delta required".into(),
        ));
    }
    if args.n == 0 {
        return Err(CliError::Config("--n must be at least 1".into()));
    }
    if let Some(delta) = args.delta {
        if !delta.is_finite() || delta < 0.0 {
            return Err(CliError::Config(format!(
                "--delta must be a nonnegative number, got {delta}"
            )));
        }
    }

    let mut rows = Vec::new();
    match args.c_range {
        Some(range) => {
            for c in range.lo..=range.hi {
                let theory = theory_decoherence(c).map_err(CliError::runtime)?;
                let rate = theory_delay(args.delta.unwrap_or(0.0), Some(c), args.n)
                    .map_err(CliError::runtime)?;
                rows.push(TheoryRow {
                    scheme: "proposed",
                    c: Some(c),
                    delta: args.delta,
                    rounds_per_swap: Some(args.n),
                    rate,
                    efficiency: theory.efficiency,
                    bits_per_round: Some(theory.bits_per_round),
                    slots_per_round: Some(theory.slots_per_round),
                });
            }
        }
        None => {
            let delta = args.delta.expect("checked above");
            rows.push(TheoryRow {
                scheme: "proposed",
                c: None,
                delta: Some(delta),
                rounds_per_swap: Some(args.n),
                rate: theory_delay(delta, None, args.n).map_err(CliError::runtime)?,
                efficiency: 3.0,
                bits_per_round: Some(6.0),
                slots_per_round: Some(4.0),
            });
        }
    }
    for (scheme, rate, efficiency) in [
        ("direct", 1.0, 2.0),
        ("sdc-tdd", 1.0, 1.0),
        ("ping-pong", 0.5, 0.5),
    ] {
        rows.push(TheoryRow {
            scheme,
            c: None,
            delta: None,
            rounds_per_swap: None,
            rate,
            efficiency,
            bits_per_round: None,
            slots_per_round: None,
        });
    }

    let echo = serde_json::json!({
        "c_range": args.c_range.map(|r| [r.lo, r.hi]),
        "delta": args.delta,
        "rounds_per_swap": args.n,
    });
    match &args.out {
        Some(path) => write_theory_csv(&mut create(path)?, &echo, &rows).map_err(CliError::runtime),
        None => {
            let stdout = std::io::stdout();
            write_theory_csv(&mut stdout.lock(), &echo, &rows).map_err(CliError::runtime)
        }
    }
}
