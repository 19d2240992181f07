//! The five-gate worked example on a 3x4 grid.

use crate::circuit::{Circuit, DurationTable};
use crate::qasm::parse_qasm;

pub const WORKED_EXAMPLE_QASM: &str = "OPENQASM 2.0;
include \"qelib1.inc\";
qreg q[12];
iswap q[3],q[7];
cz q[4],q[5];
rz(pi/4) q[10];
cz q[2],q[6];
iswap q[8],q[9];
";

pub const WORKED_EXAMPLE_PROFILE: &str = "grid:3x4";

pub fn worked_example() -> Circuit {
    parse_qasm(WORKED_EXAMPLE_QASM).expect("worked example parses")
}

/// `rz` one cycle, `cz` two, `iswap` six.
pub fn table1_durations() -> DurationTable {
    DurationTable::in_cycles(10.0, [("rz", 1), ("cz", 2), ("iswap", 6)])
}
