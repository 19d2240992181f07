// The five-gate circuit on a 3x4 grid, step by step: baseline layers, TDDG
// times, each punching iteration and the final windows.
//
//     cargo run --example worked_example

use cyco::baseline::layerize_crosstalk_safe;
use cyco::fixtures::{table1_durations, worked_example};
use cyco::scheduler::{schedule_and_punch, verify_schedule, Schedule};
use cyco::tddg::build_tddg;
use cyco::topology::{all_pairs_distance, Topology};

fn label(c: &cyco::Circuit, ids: &[usize]) -> String {
    let names: Vec<String> = ids.iter().map(|&i| format!("{}_{}", c.gates[i].kind, i)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn main() {
    let topo = Topology::grid(3, 4);
    let dm = all_pairs_distance(&topo);
    let circuit = worked_example().quantize_durations(&table1_durations()).unwrap();

    let layers = layerize_crosstalk_safe(&circuit, &topo, &dm).unwrap();
    let baseline = Schedule::baseline(&layers);
    println!("baseline layers:");
    for (l, layer) in layers.layers.iter().enumerate() {
        let ids: Vec<usize> = layer.gates.iter().map(|g| g.id).collect();
        println!("  L{l} {} lambda={}", label(&circuit, &ids), layer.cycle());
    }
    println!("baseline program cycle: {}", baseline.program_cycle);

    let mut tddg = build_tddg(&layers, &dm).unwrap();
    tddg.compute_times();
    println!("\nTDDG edges:");
    for (a, b, kind) in tddg.gate_edges() {
        println!("  {} -> {} ({kind:?})", label(&circuit, &[a]), label(&circuit, &[b]));
    }
    for id in 0..tddg.num_gates() {
        println!("  {:<10} GEST {:>2} GFT {:>2}", label(&circuit, &[id]), tddg.gest(id), tddg.gft(id));
    }
    println!("  LMFT per layer: {:?}", tddg.lmft());

    let schedule = schedule_and_punch(&mut tddg, &layers).unwrap();
    println!("\niterations:");
    for (i, z) in schedule.zones.iter().enumerate() {
        println!(
            "  #{i} LMFT={} new={} cross={} pre-SZ={} post-SZ={}",
            z.lmft,
            label(&circuit, &z.new_layer),
            label(&circuit, &z.cross_layer),
            label(&circuit, &z.pre_sz),
            label(&circuit, &z.post_sz)
        );
    }
    println!("\nwindows:");
    for w in &schedule.layers {
        let ids: Vec<usize> = w.gates.iter().map(|g| g.id).collect();
        println!("  [{:>2}, {:>2}) starts {}", w.start, w.end(), label(&circuit, &ids));
    }
    for b in &schedule.boundaries {
        println!("  boundary t={} punched {:?}", b.time, b.punched);
    }
    let report = verify_schedule(&schedule, &circuit, &topo, &dm);
    println!(
        "\nprogram cycle {} -> {} ({:.1}% shorter), verification {}",
        baseline.program_cycle,
        schedule.program_cycle,
        cyco::metrics::speedup_ratio(baseline.program_cycle as f64, schedule.program_cycle as f64).unwrap(),
        if report.passed() { "passed" } else { "FAILED" }
    );
}
