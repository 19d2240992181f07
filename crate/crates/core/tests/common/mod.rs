#![allow(dead_code)]

pub mod statevector;

use cyco::circuit::DurationTable;

/// Cycle table covering every gate kind the simulator knows, with spread-out
/// durations so layers have uneven lengths.
pub fn all_kinds_table() -> DurationTable {
    DurationTable::in_cycles(
        10.0,
        [
            ("x", 1), ("y", 1), ("z", 1), ("h", 1), ("s", 1), ("sdg", 1), ("t", 1), ("tdg", 1),
            ("sx", 2), ("sxdg", 2), ("rx", 2), ("ry", 2), ("rz", 1), ("p", 1), ("u1", 1),
            ("u2", 2), ("u3", 3), ("u", 3), ("cx", 4), ("cy", 4), ("cz", 2), ("swap", 9),
            ("iswap", 6), ("siswap", 3), ("ecr", 7), ("syc", 5), ("cp", 3), ("cu1", 3),
            ("crz", 3), ("rzz", 4), ("rxx", 4),
        ],
    )
}
