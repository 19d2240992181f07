//! Seeded random circuits for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{Circuit, DurationTable, GateKind};
use crate::error::{Error, Result};
use crate::topology::Topology;

/// Probability that a drawn gate is two-qubit when both arities are available.
pub const TWO_QUBIT_FRACTION: f64 = 0.5;

/// Draws `num_gates` gates over qubits `0..num_qubits` from the kinds of
/// `table`. Two-qubit gates only land on usable coupled pairs. Identical
/// arguments give identical circuits.
pub fn random_circuit(
    t: &Topology,
    table: &DurationTable,
    num_qubits: usize,
    num_gates: usize,
    seed: u64,
) -> Result<Circuit> {
    if num_qubits == 0 {
        return Err(Error::BadInput("a random circuit needs at least one qubit".into()));
    }
    if num_qubits > t.num_qubits() {
        return Err(Error::BadInput(format!(
            "{num_qubits} qubits requested but the device has {}",
            t.num_qubits()
        )));
    }
    let kinds: Vec<GateKind> = table.kinds().into_iter().filter(|k| !k.is_identity()).collect();
    let one: Vec<GateKind> = kinds.iter().copied().filter(|k| k.arity() == 1).collect();
    let two: Vec<GateKind> = kinds.iter().copied().filter(|k| k.arity() == 2).collect();
    let qubits: Vec<usize> = (0..num_qubits).filter(|&q| t.is_usable(q)).collect();
    let pairs: Vec<(usize, usize)> = t
        .usable_edges()
        .filter(|&(a, b)| a < num_qubits && b < num_qubits)
        .collect();
    let can_one = !one.is_empty() && !qubits.is_empty();
    let can_two = !two.is_empty() && !pairs.is_empty();
    let mut c = Circuit::new(num_qubits);
    if num_gates == 0 {
        return Ok(c);
    }
    if !can_one && !can_two {
        return Err(Error::BadInput("no gate kind of the duration table fits the device".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..num_gates {
        let pick_two = can_two && (!can_one || rng.gen_bool(TWO_QUBIT_FRACTION));
        let (kind, mut targets) = if pick_two {
            let &(a, b) = pairs.choose(&mut rng).expect("pairs");
            let kind = *two.choose(&mut rng).expect("two-qubit kinds");
            (kind, if rng.gen_bool(0.5) { vec![a, b] } else { vec![b, a] })
        } else {
            (*one.choose(&mut rng).expect("one-qubit kinds"), vec![*qubits.choose(&mut rng).expect("qubits")])
        };
        targets.truncate(kind.arity());
        let params = (0..kind.num_params())
            .map(|_| format!("{:.6}", rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)))
            .collect();
        c.push(kind, targets, params);
    }
    Ok(c)
}

/// Grid just large enough for `n` qubits, close to square.
pub fn default_grid(n: usize) -> Topology {
    let rows = (n.max(1) as f64).sqrt().ceil() as usize;
    let cols = n.max(1).div_ceil(rows);
    Topology::grid(rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::check_connectivity;
    use crate::profiles::builtin_profile;

    #[test]
    fn empty_circuit() {
        let (t, d) = builtin_profile("grid:2x2").unwrap();
        assert!(random_circuit(&t, &d, 4, 0, 9).unwrap().is_empty());
    }

    #[test]
    fn deterministic() {
        let (t, d) = builtin_profile("grid:2x2").unwrap();
        assert_eq!(random_circuit(&t, &d, 4, 10, 7).unwrap(), random_circuit(&t, &d, 4, 10, 7).unwrap());
        assert_ne!(random_circuit(&t, &d, 4, 10, 7).unwrap(), random_circuit(&t, &d, 4, 10, 8).unwrap());
    }

    #[test]
    fn respects_coupling_and_table() {
        let (t, d) = builtin_profile("sycamore-53").unwrap();
        let c = random_circuit(&t, &d, 20, 200, 3).unwrap();
        check_connectivity(&c, &t).unwrap();
        let kinds = d.kinds();
        assert!(c.gates.iter().all(|g| kinds.contains(&g.kind) && !g.kind.is_identity()));
        assert!(c.gates.iter().any(|g| g.is_two_qubit()));
    }

    #[test]
    fn default_grid_covers_request() {
        for n in [1, 4, 5, 10, 17] {
            assert!(default_grid(n).num_qubits() >= n);
        }
        assert_eq!(default_grid(10).num_qubits(), 12);
    }
}
