//! Crosstalk-safe full-barrier layering ("zzx-lite") and interference
//! accounting.
//!
//! The layering is a deterministic approximation of a ZZ-crosstalk-aware
//! scheduler: gates are placed ASAP in program order, and no layer holds two
//! two-qubit gates closer than two hops. Consecutive layers are separated by a
//! full barrier, so a layer lasts as long as its slowest gate.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, GateInstance};
use crate::error::{Error, Result};
use crate::topology::{gate_distance, DistanceMatrix, Topology};

/// Minimum gate distance at which two gates are considered crosstalk-free.
pub const SAFE_DISTANCE: u32 = 2;

pub const DEFAULT_ALPHA: f64 = 0.5;

/// One set of parallel gates.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Layer {
    pub gates: Vec<GateInstance>,
    /// Idle qubits that receive an identity gate for crosstalk mitigation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<usize>,
    /// Active-qubit interference edges moved into the cross-qubit count by
    /// the identities above.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub transferred_edges: usize,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl Layer {
    /// Layer cycle: the duration of the slowest gate.
    pub fn cycle(&self) -> u64 {
        self.gates
            .iter()
            .map(|g| g.duration_cycles)
            .max()
            .unwrap_or(0)
            .max(if self.identities.is_empty() { 0 } else { 1 })
    }

    pub fn interference(&self, t: &Topology, alpha: f64) -> InterferenceReport {
        interference_cost(&self.gates, t, alpha).reclassified(self.transferred_edges)
    }
}

/// Gate sets separated by full barriers.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LayeredCircuit {
    pub num_qubits: usize,
    pub layers: Vec<Layer>,
}

impl LayeredCircuit {
    pub fn layer_cycles(&self) -> Vec<u64> {
        self.layers.iter().map(Layer::cycle).collect()
    }

    /// Sum of layer cycles.
    pub fn program_cycle(&self) -> u64 {
        self.layers.iter().map(Layer::cycle).sum()
    }

    pub fn num_gates(&self) -> usize {
        self.layers.iter().map(|l| l.gates.len()).sum()
    }

    /// Layer index of every gate, indexed by gate id.
    pub fn layer_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.num_gates()];
        for (l, layer) in self.layers.iter().enumerate() {
            for g in &layer.gates {
                if g.id < out.len() {
                    out[g.id] = l;
                }
            }
        }
        out
    }

    /// Interference summed over all layers.
    pub fn interference(&self, t: &Topology, alpha: f64) -> InterferenceReport {
        self.layers
            .iter()
            .map(|l| l.interference(t, alpha))
            .fold(InterferenceReport::empty(alpha), |acc, r| acc.merge(&r))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layers serialize")
    }
}

/// Checks that every gate fits the device: qubits exist and are usable, and
/// two-qubit gates act on coupled pairs.
pub fn check_connectivity(c: &Circuit, t: &Topology) -> Result<()> {
    c.validate()?;
    for g in &c.gates {
        for &q in &g.qubits {
            if q >= t.num_qubits() {
                return Err(Error::BadInput(format!(
                    "gate {} uses qubit {q} but the device has {} qubits",
                    g.id,
                    t.num_qubits()
                )));
            }
            if !t.is_usable(q) {
                return Err(Error::UnusableQubit { gate: g.id, qubit: q });
            }
        }
        if let [a, b] = g.qubits[..] {
            if !t.is_coupled(a, b) {
                return Err(Error::ConnectivityViolation {
                    gate: g.id,
                    kind: g.kind.name().to_string(),
                    a,
                    b,
                });
            }
        }
    }
    Ok(())
}

/// Greedy ASAP layering in program order. A gate joins the first layer after
/// the last use of its qubits that holds no two-qubit gate within
/// [`SAFE_DISTANCE`] of it (only checked when the gate itself is two-qubit).
pub fn layerize_crosstalk_safe(c: &Circuit, t: &Topology, dm: &DistanceMatrix) -> Result<LayeredCircuit> {
    check_connectivity(c, t)?;
    let mut layers: Vec<Layer> = Vec::new();
    let mut last_layer: Vec<Option<usize>> = vec![None; c.num_qubits.max(t.num_qubits())];
    for g in &c.gates {
        let lo = g
            .qubits
            .iter()
            .filter_map(|&q| last_layer[q])
            .max()
            .map_or(0, |l| l + 1);
        let mut target = lo;
        while target < layers.len() {
            let blocked = g.is_two_qubit()
                && layers[target]
                    .gates
                    .iter()
                    .any(|h| h.is_two_qubit() && gate_distance(g, h, dm) < SAFE_DISTANCE);
            if !blocked {
                break;
            }
            target += 1;
        }
        if target == layers.len() {
            layers.push(Layer::default());
        }
        layers[target].gates.push(g.clone());
        for &q in &g.qubits {
            last_layer[q] = Some(target);
        }
    }
    Ok(LayeredCircuit {
        num_qubits: c.num_qubits,
        layers,
    })
}

/// A connected group of simultaneously active qubits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub qubits: Vec<usize>,
    pub density: usize,
}

/// Edge-count interference of a gate set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterferenceReport {
    /// Coupling edges joining active qubits of different gates.
    #[serde(rename = "IA")]
    pub ia: usize,
    /// Coupling edges joining an active and an idle qubit.
    #[serde(rename = "IC")]
    pub ic: usize,
    pub alpha: f64,
    #[serde(rename = "J")]
    pub j: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub clusters: Vec<Cluster>,
}

impl InterferenceReport {
    pub fn new(ia: usize, ic: usize, alpha: f64) -> Self {
        InterferenceReport {
            ia,
            ic,
            alpha,
            j: ia as f64 + alpha * ic as f64,
            clusters: Vec::new(),
        }
    }

    pub fn empty(alpha: f64) -> Self {
        InterferenceReport::new(0, 0, alpha)
    }

    /// Moves `edges` active-qubit edges into the cross-qubit count.
    pub fn reclassified(self, edges: usize) -> Self {
        let moved = edges.min(self.ia);
        InterferenceReport {
            clusters: self.clusters,
            ..InterferenceReport::new(self.ia - moved, self.ic + moved, self.alpha)
        }
    }

    /// Sums counts; cluster lists are concatenated.
    pub fn merge(mut self, other: &InterferenceReport) -> Self {
        let mut clusters = std::mem::take(&mut self.clusters);
        clusters.extend(other.clusters.iter().cloned());
        InterferenceReport {
            clusters,
            ..InterferenceReport::new(self.ia + other.ia, self.ic + other.ic, self.alpha)
        }
    }
}

/// Owner gate of each qubit, `None` for idle.
fn owners<'a>(gates: impl IntoIterator<Item = &'a GateInstance>, n: usize) -> Vec<Option<usize>> {
    let mut owner = vec![None; n];
    for g in gates {
        for &q in &g.qubits {
            if q < n {
                owner[q] = Some(g.id);
            }
        }
    }
    owner
}

fn classify(owner: &[Option<usize>], t: &Topology) -> (Vec<(usize, usize)>, usize) {
    let mut ia_edges = Vec::new();
    let mut ic = 0;
    for (a, b) in t.usable_edges() {
        match (owner[a], owner[b]) {
            (Some(x), Some(y)) if x != y => ia_edges.push((a, b)),
            (Some(_), None) | (None, Some(_)) => ic += 1,
            _ => {}
        }
    }
    (ia_edges, ic)
}

fn clusters(owner: &[Option<usize>], t: &Topology) -> Vec<Cluster> {
    let n = owner.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if owner[start].is_none() || seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut members = Vec::new();
        seen[start] = true;
        while let Some(u) = stack.pop() {
            members.push(u);
            for v in t.usable_neighbors(u) {
                if owner[v].is_some() && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(Cluster {
            density: members.len(),
            qubits: members,
        });
    }
    out
}

/// Interference of one gate set: `J = IA + alpha * IC`.
pub fn interference_cost<'a>(
    layer: impl IntoIterator<Item = &'a GateInstance>,
    t: &Topology,
    alpha: f64,
) -> InterferenceReport {
    let owner = owners(layer, t.num_qubits());
    let (ia_edges, ic) = classify(&owner, t);
    InterferenceReport {
        clusters: clusters(&owner, t),
        ..InterferenceReport::new(ia_edges.len(), ic, alpha)
    }
}

/// Identity placement for one gate set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdentityPlan {
    pub qubits: Vec<usize>,
    pub transferred_edges: usize,
}

/// Chooses idle qubits for identity gates: one next to each active-qubit
/// interference edge, and one next to the active set when the set holds only
/// single-qubit gates. Ties go to the lowest index.
pub fn plan_identities<'a>(gates: impl IntoIterator<Item = &'a GateInstance>, t: &Topology) -> IdentityPlan {
    plan_identities_within(gates, t, t.num_qubits())
}

/// [`plan_identities`] restricted to qubits below `limit`, such as the
/// register size of the circuit.
pub fn plan_identities_within<'a>(
    gates: impl IntoIterator<Item = &'a GateInstance>,
    t: &Topology,
    limit: usize,
) -> IdentityPlan {
    let gates: Vec<&GateInstance> = gates.into_iter().collect();
    let owner = owners(gates.iter().copied(), t.num_qubits());
    let (ia_edges, _) = classify(&owner, t);
    let idle = |q: usize| q < limit && owner[q].is_none() && t.is_usable(q);
    let mut plan = IdentityPlan::default();
    let place = |plan: &mut IdentityPlan, q: usize| {
        if !plan.qubits.contains(&q) {
            plan.qubits.push(q);
        }
    };
    for (u, v) in ia_edges {
        let spot = t
            .usable_neighbors(u)
            .chain(t.usable_neighbors(v))
            .filter(|&q| idle(q))
            .min();
        if let Some(q) = spot {
            place(&mut plan, q);
            plan.transferred_edges += 1;
        }
    }
    if !gates.is_empty() && gates.iter().all(|g| g.qubits.len() == 1) {
        let spot = gates
            .iter()
            .flat_map(|g| g.qubits.iter().copied())
            .flat_map(|q| t.usable_neighbors(q))
            .filter(|&q| idle(q))
            .min();
        if let Some(q) = spot {
            place(&mut plan, q);
        }
    }
    plan.qubits.sort_unstable();
    plan
}

/// Adds identity gates to every layer. Layer count and cycles are unchanged
/// because an identity lasts one cycle.
pub fn insert_identity_mitigation(lc: &LayeredCircuit, t: &Topology) -> LayeredCircuit {
    let mut out = lc.clone();
    for layer in &mut out.layers {
        let plan = plan_identities_within(&layer.gates, t, lc.num_qubits);
        layer.identities = plan.qubits;
        layer.transferred_edges = plan.transferred_edges;
    }
    out
}
