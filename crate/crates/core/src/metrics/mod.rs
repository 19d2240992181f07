//! Timing, speedup and fidelity figures for baseline versus punched schedules.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheduler::Schedule;

mod gantt;
mod report;

pub use gantt::emit_gantt;
pub use report::{bench_report, mean_delta, read_csv_report, BenchRecord, BenchRow, ReportFormat};

/// Wall time of a schedule in nanoseconds.
pub fn total_time(s: &Schedule, tau_ns: f64) -> f64 {
    s.program_cycle as f64 * tau_ns
}

/// Relative time saved, in percent of `tau_base`.
pub fn speedup_ratio(tau_base: f64, tau_cyco: f64) -> Result<f64> {
    if tau_base.is_nan() || tau_base <= 0.0 {
        return Err(Error::BadInput(format!("baseline time must be positive, got {tau_base}")));
    }
    Ok((tau_base - tau_cyco) / tau_base * 100.0)
}

const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Outcome probabilities keyed by bitstring.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Distribution(pub BTreeMap<String, f64>);

impl Distribution {
    pub fn new<K: Into<String>>(entries: impl IntoIterator<Item = (K, f64)>) -> Result<Self> {
        let d = Distribution(entries.into_iter().map(|(k, v)| (k.into(), v)).collect());
        d.validate()?;
        Ok(d)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Distribution = serde_json::from_str(text)?;
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let sum: f64 = self.0.values().sum();
        if self.0.values().any(|&p| p.is_nan() || p < 0.0) || (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::BadDistribution(sum));
        }
        Ok(())
    }

    pub fn get(&self, key: &str) -> f64 {
        self.0.get(key).copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FidelityVariant {
    /// `((1 - H)^2)^2`
    #[default]
    Paper,
    /// `(1 - H^2)^2`
    Standard,
}

impl FromStr for FidelityVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "paper" => Ok(FidelityVariant::Paper),
            "standard" => Ok(FidelityVariant::Standard),
            other => Err(format!("unknown fidelity variant `{other}` (expected paper or standard)")),
        }
    }
}

impl fmt::Display for FidelityVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FidelityVariant::Paper => "paper",
            FidelityVariant::Standard => "standard",
        })
    }
}

/// Hellinger distance `H = sqrt(1 - sum sqrt(p q))`.
pub fn hellinger_distance(p: &Distribution, q: &Distribution) -> Result<f64> {
    p.validate()?;
    q.validate()?;
    let bc: f64 = p.0.iter().map(|(k, &pk)| (pk * q.get(k)).sqrt()).sum();
    Ok((1.0 - bc).max(0.0).sqrt())
}

pub fn hellinger_fidelity(p: &Distribution, q: &Distribution, variant: FidelityVariant) -> Result<f64> {
    let h = hellinger_distance(p, q)?;
    Ok(match variant {
        FidelityVariant::Paper => (1.0 - h).powi(2).powi(2),
        FidelityVariant::Standard => (1.0 - h * h).powi(2),
    })
}
