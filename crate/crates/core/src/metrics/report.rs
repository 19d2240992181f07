use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::speedup_ratio;
use crate::baseline::InterferenceReport;
use crate::error::{Error, Result};

/// Baseline versus punched timing of one benchmark. Times are in microseconds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub benchmark: String,
    pub tau_baseline: f64,
    pub tau_cyco: f64,
    /// Percent of the baseline time saved.
    pub delta: f64,
    pub cycles_baseline: u64,
    pub cycles_cyco: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interference_baseline: Option<InterferenceReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interference_cyco: Option<InterferenceReport>,
}

impl BenchRecord {
    pub fn new(benchmark: impl Into<String>, cycles_baseline: u64, cycles_cyco: u64, tau_ns: f64) -> Self {
        let tau_baseline = cycles_baseline as f64 * tau_ns / 1000.0;
        let tau_cyco = cycles_cyco as f64 * tau_ns / 1000.0;
        BenchRecord {
            benchmark: benchmark.into(),
            tau_baseline,
            tau_cyco,
            delta: speedup_ratio(tau_baseline, tau_cyco).unwrap_or(0.0),
            cycles_baseline,
            cycles_cyco,
            interference_baseline: None,
            interference_cyco: None,
        }
    }

    pub fn row(&self) -> BenchRow {
        BenchRow {
            benchmark: self.benchmark.clone(),
            tau_baseline: self.tau_baseline,
            tau_cyco: self.tau_cyco,
            delta: self.delta,
        }
    }
}

/// The four CSV columns of a report line.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub benchmark: String,
    pub tau_baseline: f64,
    pub tau_cyco: f64,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

const HEADER: [&str; 4] = ["benchmark", "tau_baseline", "tau_cyco", "delta"];
const FOOTER: &str = "MEAN";

pub fn mean_delta(records: &[BenchRecord]) -> Option<f64> {
    (!records.is_empty()).then(|| records.iter().map(|r| r.delta).sum::<f64>() / records.len() as f64)
}

#[derive(Serialize)]
struct JsonReport<'a> {
    records: &'a [BenchRecord],
    mean_delta: Option<f64>,
}

/// Writes records in the given order. CSV carries one row per record plus a
/// `MEAN` footer when there is at least one record.
pub fn bench_report<W: Write>(records: &[BenchRecord], format: ReportFormat, out: W) -> Result<()> {
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(HEADER)?;
            for r in records {
                w.write_record([
                    r.benchmark.clone(),
                    format!("{:?}", r.tau_baseline),
                    format!("{:?}", r.tau_cyco),
                    format!("{:.2}", r.delta),
                ])?;
            }
            if let Some(m) = mean_delta(records) {
                w.write_record([FOOTER, "", "", &format!("{m:.2}")])?;
            }
            w.flush()?;
        }
        ReportFormat::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(
                &mut out,
                &JsonReport {
                    records,
                    mean_delta: mean_delta(records),
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Reads a CSV report back. Delta is recomputed from the two times and
/// must agree with the printed value.
pub fn read_csv_report<R: Read>(input: R) -> Result<Vec<BenchRow>> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.clone();
    if headers.iter().ne(HEADER) {
        return Err(Error::BadInput(format!("unexpected report header {headers:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        if &rec[0] == FOOTER && rec[1].is_empty() && rec[2].is_empty() {
            continue;
        }
        let num = |i: usize| {
            rec[i]
                .parse::<f64>()
                .map_err(|_| Error::BadInput(format!("bad number `{}` in column {}", &rec[i], HEADER[i])))
        };
        let (tau_baseline, tau_cyco, printed) = (num(1)?, num(2)?, num(3)?);
        let delta = speedup_ratio(tau_baseline, tau_cyco).unwrap_or(0.0);
        if (delta - printed).abs() > 0.005 + 1e-9 {
            return Err(Error::BadInput(format!(
                "row `{}` prints delta {printed} but its times give {delta:.2}",
                &rec[0]
            )));
        }
        rows.push(BenchRow {
            benchmark: rec[0].to_string(),
            tau_baseline,
            tau_cyco,
            delta,
        });
    }
    Ok(rows)
}
