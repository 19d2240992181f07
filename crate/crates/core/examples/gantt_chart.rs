// Writes Gantt charts of the baseline and punched schedules of the worked
// example to the system temp directory.

use cyco::fixtures::{table1_durations, worked_example};
use cyco::metrics::emit_gantt;
use cyco::pipeline::{run_pipeline, PipelineOptions};
use cyco::Topology;

pub fn main() {
    let out = run_pipeline(&worked_example(), &Topology::grid(3, 4), &table1_durations(), &PipelineOptions::default())
        .unwrap();
    let dir = std::env::temp_dir();
    for (name, s) in [("baseline", &out.baseline), ("cyco", &out.schedule)] {
        let path = dir.join(format!("worked_example.{name}.svg"));
        std::fs::write(&path, emit_gantt(s)).unwrap();
        println!("{name:<8} {} cycles -> {}", s.program_cycle, path.display());
    }
}
