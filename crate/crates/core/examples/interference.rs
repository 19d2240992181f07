// Edge-count interference on a four-qubit ring, before and after identity
// insertion.

use cyco::baseline::{insert_identity_mitigation, interference_cost, Layer, LayeredCircuit};
use cyco::{GateInstance, GateKind, Topology};

fn gate(id: usize, kind: &str, qubits: &[usize]) -> GateInstance {
    GateInstance::new(id, GateKind::lookup(kind).unwrap(), qubits.to_vec())
}

pub fn main() {
    let ring = Topology::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)], []).unwrap();
    let alpha = 0.5;

    let cz = interference_cost(&[gate(0, "cz", &[0, 1])], &ring, alpha);
    println!("cz(0,1): IA={} IC={} J={} clusters={:?}", cz.ia, cz.ic, cz.j, cz.clusters);

    let single = LayeredCircuit {
        num_qubits: 4,
        layers: vec![Layer { gates: vec![gate(0, "rz", &[0]), gate(1, "rz", &[1])], ..Default::default() }],
    };
    let before = single.interference(&ring, alpha);
    let after_lc = insert_identity_mitigation(&single, &ring);
    let after = after_lc.interference(&ring, alpha);
    println!("rz(0) rz(1): IA={} IC={} J={}", before.ia, before.ic, before.j);
    println!(
        "  identities on {:?}: IA={} IC={} J={}, cycle {} -> {}",
        after_lc.layers[0].identities,
        after.ia,
        after.ic,
        after.j,
        single.program_cycle(),
        after_lc.program_cycle()
    );
}
