// Baseline against punched schedules for a batch of seeded random circuits on
// the heavy-hex profile, reported as CSV.

use cyco::metrics::{bench_report, BenchRecord, ReportFormat};
use cyco::pipeline::{run_pipeline, PipelineOptions};
use cyco::profiles::builtin_profile;
use cyco::random::random_circuit;

pub fn main() {
    let (topo, durs) = builtin_profile("brisbane-127").unwrap();
    let mut records = Vec::new();
    for (i, (qubits, gates)) in [(5, 20), (12, 60), (20, 120), (40, 300), (127, 800)].into_iter().enumerate() {
        let c = random_circuit(&topo, &durs, qubits, gates, i as u64).unwrap();
        let out = run_pipeline(&c, &topo, &durs, &PipelineOptions::default()).unwrap();
        assert!(out.verify.passed());
        let mut r = BenchRecord::new(
            format!("random_q{qubits}_g{gates}"),
            out.baseline.program_cycle,
            out.schedule.program_cycle,
            durs.tau_ns,
        );
        r.interference_baseline = out.baseline.interference.clone();
        r.interference_cyco = out.schedule.interference.clone();
        records.push(r);
    }
    bench_report(&records, ReportFormat::Csv, std::io::stdout()).unwrap();
}
