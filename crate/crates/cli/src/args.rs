//! Flag definitions. Unknown flags are rejected by the parser (exit code 2);
//! semantic validation happens when flags are lowered to a `SimConfig`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qtwp_core::sim::{Horizon, Mode, NoiseSpec, SimConfig};

#[derive(Parser, Debug)]
#[command(
    name = "qtwp",
    version,
    about = "Slot-synchronous simulator for a two-way protocol that superdense-codes \
             data onto the entanglement it distributes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simulate one run; write its slot trace and summary.
    Run(RunArgs),
    /// Run many seeds of one configuration and summarize the distributions.
    Batch(BatchArgs),
    /// Sweep the coherence budget c, comparing simulation with theory.
    Sweep(SweepArgs),
    /// Emit closed-form rate/efficiency tables.
    Theory(TheoryArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    QuantumIdeal,
    QuantumVariant,
    Direct,
    SdcTdd,
    PingPong,
}

impl From<ModeArg> for Mode {
    fn from(mode: ModeArg) -> Mode {
        match mode {
            ModeArg::QuantumIdeal => Mode::QuantumIdeal,
            ModeArg::QuantumVariant => Mode::QuantumVariant,
            ModeArg::Direct => Mode::Direct,
            ModeArg::SdcTdd => Mode::SdcTdd,
            ModeArg::PingPong => Mode::PingPong,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoiseArg {
    None,
    Cliff,
    #[value(name = "t1t2")]
    T1T2,
}

/// Flags shared by the simulating commands.
#[derive(Args, Clone, Debug)]
pub struct SimArgs {
    /// Protocol to simulate.
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Run length in time slots.
    #[arg(long, default_value_t = 1000)]
    pub slots: u64,
    /// Master seed; input streams and measurement draws derive from it.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Coherence budget in slots (quantum-variant and cliff noise).
    #[arg(long)]
    pub c: Option<u32>,
    /// Memory noise model.
    #[arg(long, value_enum, default_value_t = NoiseArg::None)]
    pub noise: NoiseArg,
    /// Relaxation time T1 in slots (t1t2 noise).
    #[arg(long)]
    pub t1: Option<f64>,
    /// Dephasing time T2 in slots (t1t2 noise).
    #[arg(long)]
    pub t2: Option<f64>,
    /// Delay charged per role-swap block, in slot-equivalents.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Rounds between role swaps.
    #[arg(long, default_value_t = 1)]
    pub rounds_per_swap: u32,
}

impl SimArgs {
    /// Lower flags to a validated `SimConfig`. Error messages name the flag.
    pub fn to_config(&self) -> Result<SimConfig, String> {
        let noise = match self.noise {
            NoiseArg::None => NoiseSpec::None,
            NoiseArg::Cliff => NoiseSpec::Cliff,
            NoiseArg::T1T2 => {
                let (Some(t1), Some(t2)) = (self.t1, self.t2) else {
                    return Err("--t1 and --t2 required when --noise t1t2".into());
                };
                if !t1.is_finite() {
                    return Err(format!("--t1 must be finite, got {t1}"));
                }
                if !t2.is_finite() {
                    return Err(format!("--t2 must be finite, got {t2}"));
                }
                NoiseSpec::T1T2 { t1, t2 }
            }
        };
        let config = SimConfig {
            mode: self.mode.into(),
            c: self.c,
            noise,
            delta: self.delta,
            rounds_per_swap: self.rounds_per_swap,
            seed: self.seed,
            horizon: Horizon::Slots(self.slots),
            record_trace: false,
            checkpoints: Vec::new(),
            exclude_presharing: false,
        };
        config.validate().map_err(|e| e.to_string())?;
        Ok(config)
    }
}

#[derive(Args, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub sim: SimArgs,
    /// Output files are <prefix>.trace.csv and <prefix>.summary.json.
    #[arg(long, default_value = "run")]
    pub out_prefix: PathBuf,
}

#[derive(Args, Debug)]
pub struct BatchArgs {
    #[command(flatten)]
    pub sim: SimArgs,
    /// Number of runs; run i uses seed + i.
    #[arg(long)]
    pub runs: u32,
    /// Early slot at which a second, truncated view of each run is taken.
    #[arg(long, default_value_t = 100)]
    pub truncate: u64,
    /// Output files are <prefix>.batch.csv and <prefix>.batch.json.
    #[arg(long, default_value = "batch")]
    pub out_prefix: PathBuf,
}

/// Inclusive coherence-budget range `lo:hi`.
#[derive(Clone, Copy, Debug)]
pub struct CRange {
    pub lo: u32,
    pub hi: u32,
}

pub fn parse_c_range(s: &str) -> Result<CRange, String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo: u32 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: u32 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    if lo < 2 {
        return Err(format!("c must be at least 2, got {lo}"));
    }
    if hi < lo {
        return Err(format!("upper bound {hi} below lower bound {lo}"));
    }
    Ok(CRange { lo, hi })
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Coherence budgets to sweep, inclusive (quantum-variant runs).
    #[arg(long, value_parser = parse_c_range)]
    pub c_range: CRange,
    /// Executions per budget; seeds are disjoint across budgets.
    #[arg(long, default_value_t = 100)]
    pub runs_per_c: u32,
    /// Slots per execution.
    #[arg(long, default_value_t = 1000)]
    pub slots: u64,
    /// Base seed.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Memory noise model.
    #[arg(long, value_enum, default_value_t = NoiseArg::None)]
    pub noise: NoiseArg,
    /// Relaxation time T1 in slots (t1t2 noise).
    #[arg(long)]
    pub t1: Option<f64>,
    /// Dephasing time T2 in slots (t1t2 noise).
    #[arg(long)]
    pub t2: Option<f64>,
    /// Delay charged per role-swap block, in slot-equivalents.
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    /// Rounds between role swaps.
    #[arg(long, default_value_t = 1)]
    pub rounds_per_swap: u32,
    /// Output file is <prefix>.sweep.csv.
    #[arg(long, default_value = "sweep")]
    pub out_prefix: PathBuf,
}

impl SweepArgs {
    /// The `SimConfig` for one swept budget.
    pub fn config_for(&self, c: u32) -> Result<SimConfig, String> {
        let sim = SimArgs {
            mode: ModeArg::QuantumVariant,
            slots: self.slots,
            seed: self.seed,
            c: Some(c),
            noise: self.noise,
            t1: self.t1,
            t2: self.t2,
            delta: self.delta,
            rounds_per_swap: self.rounds_per_swap,
        };
        sim.to_config()
    }
}

#[derive(Args, Debug)]
pub struct TheoryArgs {
    /// Budgets to tabulate via the decoherence closed forms.
    #[arg(long, value_parser = parse_c_range)]
    pub c_range: Option<CRange>,
    /// Per-block delay for the delay closed forms.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Rounds between role swaps (amortizes the delay).
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Write the table here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
