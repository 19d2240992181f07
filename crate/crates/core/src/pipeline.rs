//! End-to-end run: layering, TDDG, punching, identity mitigation, verification.

use crate::baseline::{layerize_crosstalk_safe, LayeredCircuit, DEFAULT_ALPHA};
use crate::circuit::{Circuit, DurationTable};
use crate::error::{Error, Result};
use crate::scheduler::{schedule_and_punch, verify_schedule, Schedule, VerifyReport};
use crate::tddg::{build_tddg, Tddg};
use crate::topology::{all_pairs_distance, DistanceMatrix, Topology};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    pub alpha: f64,
    /// `false` keeps every full barrier.
    pub punch: bool,
    pub mitigate: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            alpha: DEFAULT_ALPHA,
            punch: true,
            mitigate: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    /// Input with identities removed and durations assigned.
    pub circuit: Circuit,
    pub distances: DistanceMatrix,
    pub layered: LayeredCircuit,
    pub tddg: Tddg,
    pub baseline: Schedule,
    /// The punched schedule, or the baseline again when punching is off.
    pub schedule: Schedule,
    pub verify: VerifyReport,
}

impl PipelineOutput {
    pub fn speedup(&self) -> f64 {
        let base = self.baseline.program_cycle as f64;
        if base == 0.0 {
            0.0
        } else {
            (base - self.schedule.program_cycle as f64) / base * 100.0
        }
    }
}

pub fn run_pipeline(
    c: &Circuit,
    t: &Topology,
    durations: &DurationTable,
    opts: &PipelineOptions,
) -> Result<PipelineOutput> {
    if opts.alpha.is_nan() || opts.alpha <= 0.0 {
        return Err(Error::BadInput(format!("alpha must be positive, got {}", opts.alpha)));
    }
    let circuit = c.strip_identity_gates().quantize_durations(durations)?;
    let distances = all_pairs_distance(t);
    let layered = layerize_crosstalk_safe(&circuit, t, &distances)?;
    let mut tddg = build_tddg(&layered, &distances)?;
    tddg.compute_times();
    let finish = |s: Schedule| {
        let mut s = if opts.mitigate { s.with_identity_mitigation(t) } else { s };
        s.interference = Some(s.interference(t, opts.alpha));
        s
    };
    let baseline = finish(Schedule::baseline(&layered));
    let schedule = if opts.punch {
        finish(schedule_and_punch(&mut tddg, &layered)?)
    } else {
        baseline.clone()
    };
    let verify = verify_schedule(&schedule, &circuit, t, &distances);
    Ok(PipelineOutput {
        circuit,
        distances,
        layered,
        tddg,
        baseline,
        schedule,
        verify,
    })
}
