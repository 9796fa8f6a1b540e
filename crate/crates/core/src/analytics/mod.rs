//! Empirical metric estimators, closed-form rate/efficiency evaluators, and
//! batch statistics.

mod batch;
mod metrics;
mod theory;

pub use batch::{batch_stats, BatchSummary, Outlier, QUARTILE_METHOD};
pub use metrics::{cumulative_series, empirical_metrics, sd_error_rate, Metrics, SeriesPoint};
pub use theory::{theory_decoherence, theory_delay, theory_ideal, DecoherenceTheory};
