// Summary of the built-in device profiles.

use cyco::circuit::DurationUnit;
use cyco::profiles::{builtin_profile, BUILTIN_PROFILES};
use cyco::topology::{all_pairs_distance, DistanceMatrix};

pub fn main() {
    let names = std::iter::once("grid:5x5").chain(BUILTIN_PROFILES.iter().copied());
    println!("{:<14} {:>6} {:>6} {:>9} {:>6} {:>7}  two-qubit gates", "profile", "qubits", "edges", "unusable", "diam", "tau");
    for name in names {
        let (topo, durs) = builtin_profile(name).unwrap();
        let dm = all_pairs_distance(&topo);
        let diameter = (0..dm.len())
            .flat_map(|a| dm.row(a).iter().copied())
            .filter(|&d| d != DistanceMatrix::INF)
            .max()
            .unwrap_or(0);
        let unit = match durs.unit {
            DurationUnit::Cycles => "cyc",
            DurationUnit::Ns => "ns",
        };
        let two: Vec<String> = durs
            .kinds()
            .into_iter()
            .filter(|k| k.arity() == 2)
            .map(|k| format!("{k}={}{unit} ({} cycles)", durs.gates[k.name()], durs.cycles_for(k).unwrap()))
            .collect();
        println!(
            "{:<14} {:>6} {:>6} {:>9} {:>6} {:>5}ns  {}",
            name,
            topo.num_qubits(),
            topo.num_edges(),
            topo.unusable().len(),
            diameter,
            durs.tau_ns,
            two.join(", ")
        );
    }
}
