// Reading and writing OpenQASM 2.0.

use cyco::qasm::{emit_qasm, parse_qasm};

const SOURCE: &str = r#"
OPENQASM 2.0;
include "qelib1.inc";
// two registers are laid out one after the other
qreg a[2];
qreg b[3];
creg c[5];
h a;                  /* broadcast over the register */
cx a[1], b[0];
u3(pi/2, -pi/4, 0.5) b[2];
id b[1];
barrier a, b;         // barriers are not part of the gate list
measure b[2] -> c[0];
"#;

pub fn main() {
    let c = parse_qasm(SOURCE).unwrap();
    println!("{} qubits, {} gates, {} measurements", c.num_qubits, c.len(), c.measurements.len());
    for g in &c.gates {
        println!("  #{:<2} {:<4} {:?} {:?}", g.id, g.kind, g.qubits, g.params);
    }

    let stripped = c.strip_identity_gates();
    println!("\nwithout identities:\n{}", emit_qasm(&stripped));
    assert_eq!(parse_qasm(&emit_qasm(&stripped)).unwrap(), stripped);

    for bad in ["qreg q[2]; cz q[0],q[2];", "qreg q[1];\nfoo q[0];", "OPENQASM 3.0; qubit q;"] {
        let err = parse_qasm(bad).unwrap_err();
        println!("rejected ({}): {err}", err.exit_code());
    }
}
