// Seeded random circuits: the same seed always yields the same program, and
// every generated circuit schedules without violations.

use cyco::pipeline::{run_pipeline, PipelineOptions};
use cyco::profiles::builtin_profile;
use cyco::qasm::emit_qasm;
use cyco::random::random_circuit;

pub fn main() {
    let (topo, durs) = builtin_profile("grid:4x4").unwrap();
    let c = random_circuit(&topo, &durs, 6, 12, 7).unwrap();
    assert_eq!(c, random_circuit(&topo, &durs, 6, 12, 7).unwrap());
    print!("{}", emit_qasm(&c));

    let mut total = (0, 0);
    for seed in 0..50 {
        let c = random_circuit(&topo, &durs, 16, 80, seed).unwrap();
        let out = run_pipeline(&c, &topo, &durs, &PipelineOptions::default()).unwrap();
        assert!(out.verify.passed());
        total.0 += out.baseline.program_cycle;
        total.1 += out.schedule.program_cycle;
    }
    println!("50 circuits: {} baseline cycles, {} punched cycles", total.0, total.1);
}
