// Hellinger fidelity of two outcome distributions under both formulas.

use cyco::metrics::{hellinger_distance, hellinger_fidelity, Distribution, FidelityVariant};

pub fn main() {
    let ideal = Distribution::new([("00", 0.5), ("11", 0.5)]).unwrap();
    let cases = [
        ("ideal", Distribution::new([("00", 0.5), ("11", 0.5)]).unwrap()),
        ("noisy", Distribution::new([("00", 0.45), ("01", 0.05), ("10", 0.04), ("11", 0.46)]).unwrap()),
        ("collapsed", Distribution::new([("00", 1.0)]).unwrap()),
        ("disjoint", Distribution::new([("01", 0.5), ("10", 0.5)]).unwrap()),
    ];
    println!("{:<10} {:>8} {:>10} {:>10}", "measured", "H", "paper", "standard");
    for (name, q) in &cases {
        println!(
            "{:<10} {:>8.4} {:>10.4} {:>10.4}",
            name,
            hellinger_distance(&ideal, q).unwrap(),
            hellinger_fidelity(&ideal, q, FidelityVariant::Paper).unwrap(),
            hellinger_fidelity(&ideal, q, FidelityVariant::Standard).unwrap()
        );
    }
    let err = Distribution::new([("0", 0.6)]).unwrap_err();
    println!("unnormalized input: {err}");
}
