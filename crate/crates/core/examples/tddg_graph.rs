// Dumps the dependency graph of the worked example as Graphviz and JSON.
//
//     cargo run --example tddg_graph | dot -Tsvg > tddg.svg

use cyco::baseline::layerize_crosstalk_safe;
use cyco::fixtures::{table1_durations, worked_example};
use cyco::tddg::{build_tddg, filter_gate_candidates};
use cyco::topology::{all_pairs_distance, Topology};

pub fn main() {
    let topo = Topology::grid(3, 4);
    let dm = all_pairs_distance(&topo);
    let c = worked_example().quantize_durations(&table1_durations()).unwrap();
    let lc = layerize_crosstalk_safe(&c, &topo, &dm).unwrap();

    // the filtering rule applied to one gate by hand
    let later: Vec<&[cyco::GateInstance]> = lc.layers[1..].iter().map(|l| l.gates.as_slice()).collect();
    let finalists = filter_gate_candidates(&lc.layers[0].gates[1], later, &dm);
    let ids: Vec<usize> = finalists.iter().map(|g| g.id).collect();
    eprintln!("successors chosen for cz_1: {ids:?}");

    let mut g = build_tddg(&lc, &dm).unwrap();
    g.compute_times();
    print!("{}", g.to_dot());
    eprintln!("{}", g.to_json());
}
