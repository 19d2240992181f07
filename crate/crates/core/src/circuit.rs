//! Circuit intermediate representation and gate-duration tables.
//!
//! A [`Circuit`] is an ordered list of [`GateInstance`]s on physical qubit
//! indices. Gate ids are dense and follow program order; every transform in
//! this module that drops gates renumbers the survivors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

struct GateSpec {
    name: &'static str,
    arity: usize,
    params: usize,
}

const fn spec(name: &'static str, arity: usize, params: usize) -> GateSpec {
    GateSpec {
        name,
        arity,
        params,
    }
}

static GATES: &[GateSpec] = &[
    spec("id", 1, 0),
    spec("x", 1, 0),
    spec("y", 1, 0),
    spec("z", 1, 0),
    spec("h", 1, 0),
    spec("s", 1, 0),
    spec("sdg", 1, 0),
    spec("t", 1, 0),
    spec("tdg", 1, 0),
    spec("sx", 1, 0),
    spec("sxdg", 1, 0),
    spec("rx", 1, 1),
    spec("ry", 1, 1),
    spec("rz", 1, 1),
    spec("p", 1, 1),
    spec("u1", 1, 1),
    spec("u2", 1, 2),
    spec("u3", 1, 3),
    spec("u", 1, 3),
    spec("cx", 2, 0),
    spec("cy", 2, 0),
    spec("cz", 2, 0),
    spec("swap", 2, 0),
    spec("iswap", 2, 0),
    spec("siswap", 2, 0),
    spec("ecr", 2, 0),
    spec("syc", 2, 0),
    spec("cp", 2, 1),
    spec("cu1", 2, 1),
    spec("crz", 2, 1),
    spec("rzz", 2, 1),
    spec("rxx", 2, 1),
];

/// A physical basis gate kind. Names are matched case-insensitively.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateKind(u8);

impl GateKind {
    pub const ID: GateKind = GateKind(0);

    pub fn lookup(name: &str) -> Option<GateKind> {
        GATES
            .iter()
            .position(|g| g.name.eq_ignore_ascii_case(name))
            .map(|i| GateKind(i as u8))
    }

    pub fn all() -> impl Iterator<Item = GateKind> {
        (0..GATES.len()).map(|i| GateKind(i as u8))
    }

    fn spec(self) -> &'static GateSpec {
        &GATES[self.0 as usize]
    }

    pub fn name(self) -> &'static str {
        self.spec().name
    }

    pub fn arity(self) -> usize {
        self.spec().arity
    }

    /// Number of angle parameters the gate takes.
    pub fn num_params(self) -> usize {
        self.spec().params
    }

    pub fn is_identity(self) -> bool {
        self == GateKind::ID
    }
}

impl fmt::Debug for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for GateKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for GateKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        GateKind::lookup(&name)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown gate `{name}`")))
    }
}

/// One application of a gate in a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateInstance {
    pub id: usize,
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    /// Angle expressions, kept verbatim from the source program.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    /// Duration in clock cycles. `1` until [`Circuit::quantize_durations`] runs.
    #[serde(rename = "dur")]
    pub duration_cycles: u64,
}

impl GateInstance {
    pub fn new(id: usize, kind: GateKind, qubits: Vec<usize>) -> Self {
        GateInstance {
            id,
            kind,
            qubits,
            params: Vec::new(),
            duration_cycles: 1,
        }
    }

    pub fn with_params(mut self, params: Vec<String>) -> Self {
        self.params = params;
        self
    }

    pub fn with_duration(mut self, cycles: u64) -> Self {
        self.duration_cycles = cycles;
        self
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    pub fn shares_qubit(&self, other: &GateInstance) -> bool {
        self.qubits.iter().any(|q| other.qubits.contains(q))
    }
}

/// A terminal measurement `measure q[qubit] -> c[clbit]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Measurement {
    pub qubit: usize,
    pub clbit: usize,
}

/// A pre-mapped quantum program.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<GateInstance>,
    pub classical_bits: usize,
    /// Recorded but never scheduled.
    #[serde(default)]
    pub measurements: Vec<Measurement>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            ..Default::default()
        }
    }

    /// Appends a gate, assigning the next program-order id.
    pub fn push(&mut self, kind: GateKind, qubits: Vec<usize>, params: Vec<String>) -> usize {
        let id = self.gates.len();
        self.gates
            .push(GateInstance::new(id, kind, qubits).with_params(params));
        id
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Checks the structural invariants: dense ids, in-range distinct qubits,
    /// arity agreement and positive durations.
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.gates.iter().enumerate() {
            if g.id != i {
                return Err(Error::BadInput(format!(
                    "gate at position {i} has id {}",
                    g.id
                )));
            }
            if g.qubits.len() != g.kind.arity() {
                return Err(Error::BadInput(format!(
                    "gate {i} ({}) has {} qubits, expected {}",
                    g.kind,
                    g.qubits.len(),
                    g.kind.arity()
                )));
            }
            if g.qubits.len() == 2 && g.qubits[0] == g.qubits[1] {
                return Err(Error::BadInput(format!("gate {i} repeats qubit {}", g.qubits[0])));
            }
            if let Some(&q) = g.qubits.iter().find(|&&q| q >= self.num_qubits) {
                return Err(Error::BadInput(format!(
                    "gate {i} uses qubit {q} but the circuit has {} qubits",
                    self.num_qubits
                )));
            }
            if g.duration_cycles == 0 {
                return Err(Error::BadInput(format!("gate {i} has zero duration")));
            }
        }
        Ok(())
    }

    fn renumbered(mut self) -> Circuit {
        for (i, g) in self.gates.iter_mut().enumerate() {
            g.id = i;
        }
        self
    }

    /// Removes every `id` gate; survivors keep their relative order and are
    /// renumbered densely.
    pub fn strip_identity_gates(&self) -> Circuit {
        let mut out = self.clone();
        out.gates.retain(|g| !g.kind.is_identity());
        out.renumbered()
    }

    /// Assigns each gate its duration in clock cycles from `table`.
    pub fn quantize_durations(&self, table: &DurationTable) -> Result<Circuit> {
        let mut out = self.clone();
        for g in &mut out.gates {
            g.duration_cycles = table.cycles_for(g.kind)?;
        }
        Ok(out)
    }

    /// Relabels logical qubits to physical ones. The result addresses
    /// `num_physical` qubits.
    pub fn apply_layout(&self, layout: &Layout, num_physical: usize) -> Result<Circuit> {
        let map = &layout.0;
        if map.len() < self.num_qubits {
            return Err(Error::BadInput(format!(
                "layout maps {} qubits but the circuit has {}",
                map.len(),
                self.num_qubits
            )));
        }
        let mut seen = vec![false; num_physical];
        for &p in map {
            if p >= num_physical {
                return Err(Error::BadInput(format!(
                    "layout target {p} exceeds device size {num_physical}"
                )));
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::BadInput(format!("layout maps twice onto qubit {p}")));
            }
        }
        let mut out = self.clone();
        out.num_qubits = num_physical;
        for g in &mut out.gates {
            for q in &mut g.qubits {
                *q = map[*q];
            }
        }
        for m in &mut out.measurements {
            m.qubit = map[m.qubit];
        }
        Ok(out)
    }
}

/// Logical-to-physical qubit assignment, stored as a JSON list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Layout(pub Vec<usize>);

impl Layout {
    pub fn from_json(text: &str) -> Result<Layout> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Layout> {
        Layout::from_json(&std::fs::read_to_string(path)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DurationUnit {
    Cycles,
    Ns,
}

/// Gate-kind to duration map plus the clock cycle used to quantize it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DurationTable {
    pub tau_ns: f64,
    pub unit: DurationUnit,
    pub gates: BTreeMap<String, f64>,
}

impl DurationTable {
    pub fn in_cycles<'a>(tau_ns: f64, entries: impl IntoIterator<Item = (&'a str, u64)>) -> Self {
        DurationTable {
            tau_ns,
            unit: DurationUnit::Cycles,
            gates: entries
                .into_iter()
                .map(|(k, v)| (k.to_ascii_lowercase(), v as f64))
                .collect(),
        }
    }

    pub fn in_ns<'a>(tau_ns: f64, entries: impl IntoIterator<Item = (&'a str, f64)>) -> Self {
        DurationTable {
            tau_ns,
            unit: DurationUnit::Ns,
            gates: entries
                .into_iter()
                .map(|(k, v)| (k.to_ascii_lowercase(), v))
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<DurationTable> {
        let mut table: DurationTable = serde_json::from_str(text)?;
        table.gates = std::mem::take(&mut table.gates)
            .into_iter()
            .map(|(k, v)| (k.to_ascii_lowercase(), v))
            .collect();
        table.check()?;
        Ok(table)
    }

    pub fn load(path: &Path) -> Result<DurationTable> {
        if !path.exists() {
            return Err(Error::MissingDurationFile(path.to_path_buf()));
        }
        DurationTable::from_json(&std::fs::read_to_string(path)?)
    }

    fn check(&self) -> Result<()> {
        if !(self.tau_ns > 0.0 && self.tau_ns.is_finite()) {
            return Err(Error::BadInput(format!("tau_ns must be positive, got {}", self.tau_ns)));
        }
        for (name, &v) in &self.gates {
            if GateKind::lookup(name).is_none() {
                return Err(Error::BadInput(format!("duration table names unknown gate `{name}`")));
            }
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::BadInput(format!("duration of `{name}` is {v}")));
            }
        }
        Ok(())
    }

    /// Gate kinds this table covers, in name order.
    pub fn kinds(&self) -> Vec<GateKind> {
        self.gates.keys().filter_map(|k| GateKind::lookup(k)).collect()
    }

    /// Duration of `kind` in clock cycles: ceiling of `ns / tau` for
    /// nanosecond tables, the entry itself for cycle tables; never below 1.
    pub fn cycles_for(&self, kind: GateKind) -> Result<u64> {
        let v = *self
            .gates
            .get(kind.name())
            .ok_or_else(|| Error::MissingDuration(kind.name().to_string()))?;
        let cycles = match self.unit {
            DurationUnit::Cycles => v.round(),
            // a tolerance keeps exact multiples such as 660/60 from rounding up
            DurationUnit::Ns => (v / self.tau_ns - 1e-9).ceil(),
        };
        Ok((cycles.max(1.0)) as u64)
    }
}
