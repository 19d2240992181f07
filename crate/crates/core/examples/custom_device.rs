// A hand-written device: coupling map with a dead qubit, nanosecond gate
// durations and a logical-to-physical layout.

use cyco::circuit::{DurationTable, Layout};
use cyco::pipeline::{run_pipeline, PipelineOptions};
use cyco::qasm::parse_qasm;
use cyco::scheduler::emit_scheduled_qasm;
use cyco::Topology;

const TOPOLOGY: &str = r#"{"num_qubits": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[5,0]], "unusable": [3]}"#;
const DURATIONS: &str = r#"{"tau_ns": 20.0, "unit": "ns", "gates": {"sx": 35, "rz": 0, "cx": 300}}"#;

pub fn main() {
    let topo = Topology::from_json(TOPOLOGY).unwrap();
    let durs = DurationTable::from_json(DURATIONS).unwrap();
    let logical = parse_qasm("qreg q[4]; cx q[0],q[1]; sx q[2]; sx q[3]; sx q[1]; cx q[2],q[3]; rz(0.3) q[0];").unwrap();
    let layout = Layout::from_json("[1, 2, 5, 4]").unwrap();
    let physical = logical.apply_layout(&layout, topo.num_qubits()).unwrap();

    let out = run_pipeline(&physical, &topo, &durs, &PipelineOptions::default()).unwrap();
    println!(
        "{} -> {} cycles ({} -> {} ns)",
        out.baseline.program_cycle,
        out.schedule.program_cycle,
        out.baseline.program_cycle as f64 * durs.tau_ns,
        out.schedule.program_cycle as f64 * durs.tau_ns
    );
    print!("{}", emit_scheduled_qasm(&out.schedule, &out.circuit));

    let err = run_pipeline(&logical.apply_layout(&Layout(vec![0, 3, 1, 2]), 6).unwrap(), &topo, &durs, &PipelineOptions::default())
        .unwrap_err();
    println!("layout through the dead qubit is rejected: {err}");
}
