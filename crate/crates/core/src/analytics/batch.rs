//! Quartile summaries and outlier flagging for batches of per-run metrics.

use serde::Serialize;

use crate::error::AnalyticsError;

/// Quartile convention used throughout: linear interpolation between order
/// statistics (position (n-1)*q on the sorted samples).
pub const QUARTILE_METHOD: &str = "linear_interpolation";

/// A sample flagged by the 1.5-IQR rule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Outlier {
    /// Index into the original sample order.
    pub index: usize,
    pub value: f64,
}

/// Boxplot-style summary of a batch of metric samples.
///
/// A sample is an outlier iff it is strictly below q1 - 1.5*IQR or strictly
/// above q3 + 1.5*IQR.
#[derive(Clone, Debug, Serialize)]
pub struct BatchSummary {
    pub samples: Vec<f64>,
    pub mean: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub iqr: f64,
    pub outliers: Vec<Outlier>,
    /// Convention metadata so plots built from different tools agree.
    pub quartile_method: &'static str,
}

/// Linear-interpolation quantile on sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let position = (sorted.len() - 1) as f64 * q;
    let low = position.floor() as usize;
    let frac = position - low as f64;
    if frac == 0.0 || low + 1 >= sorted.len() {
        sorted[low]
    } else {
        sorted[low] + frac * (sorted[low + 1] - sorted[low])
    }
}

/// Summarize a batch of samples.
pub fn batch_stats(samples: &[f64]) -> Result<BatchSummary, AnalyticsError> {
    if samples.is_empty() {
        return Err(AnalyticsError::EmptySamples);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let q1 = quantile(&sorted, 0.25);
    let median = quantile(&sorted, 0.5);
    let q3 = quantile(&sorted, 0.75);
    let iqr = q3 - q1;
    let low = q1 - 1.5 * iqr;
    let high = q3 + 1.5 * iqr;
    let outliers = samples
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < low || v > high)
        .map(|(index, &value)| Outlier { index, value })
        .collect();
    Ok(BatchSummary {
        samples: samples.to_vec(),
        mean: samples.iter().sum::<f64>() / samples.len() as f64,
        q1,
        median,
        q3,
        iqr,
        outliers,
        quartile_method: QUARTILE_METHOD,
    })
}
