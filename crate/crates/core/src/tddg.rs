//! Time and Distance Dependency Graph.
//!
//! Nodes are gates plus `start`/`end` sentinels; an edge `a -> b` means `b`
//! may not start before `a` finishes. Data edges join gates sharing a qubit,
//! distance edges join gates less than two hops apart. Edges always point from
//! an earlier baseline layer to a later one, so the layer order is a
//! topological order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::baseline::{LayeredCircuit, SAFE_DISTANCE};
use crate::circuit::GateInstance;
use crate::error::{Error, Result};
use crate::topology::{gate_distance, DistanceMatrix};

pub const START: usize = 0;
pub const END: usize = 1;

const fn node_of(gate: usize) -> usize {
    gate + 2
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Data,
    Distance,
    /// Sentinel edge from `start` or into `end`.
    Control,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TddgNode {
    /// `None` for the sentinels.
    pub gate: Option<GateInstance>,
    pub gest: u64,
    pub gft: u64,
    pub removed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tddg {
    nodes: Vec<TddgNode>,
    edges: BTreeMap<(usize, usize), EdgeKind>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    layers: Vec<Vec<usize>>,
    layer_of: Vec<usize>,
    lmft: Vec<u64>,
    closure_edges: usize,
}

/// Candidate filtering for one gate, exactly as specified by the filtering
/// rule: scan `sets` in order; a gate `B` less than two hops from `a` is a
/// candidate, and becomes a finalist when it is the first candidate or lies at
/// least two hops from every earlier candidate.
pub fn filter_gate_candidates<'a, S>(a: &GateInstance, sets: S, dm: &DistanceMatrix) -> Vec<&'a GateInstance>
where
    S: IntoIterator<Item = &'a [GateInstance]>,
{
    let mut candidates: Vec<&GateInstance> = Vec::new();
    let mut finalists = Vec::new();
    for set in sets {
        for b in set {
            if gate_distance(a, b, dm) < SAFE_DISTANCE {
                let valid = candidates.is_empty()
                    || candidates
                        .iter()
                        .map(|c| gate_distance(c, b, dm))
                        .min()
                        .is_some_and(|d| d >= SAFE_DISTANCE);
                if valid {
                    finalists.push(b);
                }
                candidates.push(b);
            }
        }
    }
    finalists
}

/// Linear-time equivalent of [`filter_gate_candidates`]: instead of taking a
/// minimum over all earlier candidates it keeps the set of qubits within one
/// hop of any candidate.
struct NeighborhoodFilter {
    near: Vec<Vec<usize>>,
    near_a: Vec<u32>,
    blocked: Vec<u32>,
    stamp: u32,
}

impl NeighborhoodFilter {
    fn new(dm: &DistanceMatrix) -> Self {
        let n = dm.len();
        let near = (0..n)
            .map(|q| {
                let mut v: Vec<usize> = dm
                    .row(q)
                    .iter()
                    .enumerate()
                    .filter(|&(p, &d)| p != q && d < SAFE_DISTANCE)
                    .map(|(p, _)| p)
                    .collect();
                v.push(q);
                v
            })
            .collect();
        NeighborhoodFilter {
            near,
            near_a: vec![0; n],
            blocked: vec![0; n],
            stamp: 0,
        }
    }

    fn finalists<'a>(
        &mut self,
        a: &GateInstance,
        sets: impl Iterator<Item = &'a [GateInstance]>,
        out: &mut Vec<usize>,
    ) {
        self.stamp += 1;
        let stamp = self.stamp;
        for &qa in &a.qubits {
            for &q in &self.near[qa] {
                self.near_a[q] = stamp;
            }
        }
        for set in sets {
            for b in set {
                if !b.qubits.iter().any(|&q| self.near_a[q] == stamp) {
                    continue;
                }
                if b.qubits.iter().all(|&q| self.blocked[q] != stamp) {
                    out.push(b.id);
                }
                for &qb in &b.qubits {
                    for &q in &self.near[qb] {
                        self.blocked[q] = stamp;
                    }
                }
            }
        }
    }
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn union_into(dst: &mut [u64], src: &[u64]) {
    for (d, s) in dst.iter_mut().zip(src) {
        *d |= s;
    }
}

/// Builds the TDDG from a baseline layering.
///
/// Forward and backward candidate-filtering passes are followed by a closure
/// pass: any pair of gates in different layers that share a qubit or sit
/// within two hops, and are not already ordered by a path, gets a direct edge.
/// The filtering passes alone can leave such pairs unordered when a closer
/// candidate shadows them.
pub fn build_tddg(lc: &LayeredCircuit, dm: &DistanceMatrix) -> Result<Tddg> {
    let n = lc.num_gates();
    let layer_of = lc.layer_of();
    if layer_of.contains(&usize::MAX) {
        return Err(Error::BadInput("gate ids of the layering are not dense".into()));
    }
    let mut gates: Vec<Option<GateInstance>> = vec![None; n];
    for layer in &lc.layers {
        for g in &layer.gates {
            gates[g.id] = Some(g.clone());
        }
    }
    let gates: Vec<GateInstance> = gates.into_iter().map(|g| g.expect("dense ids")).collect();
    let layers: Vec<Vec<usize>> = lc
        .layers
        .iter()
        .map(|l| {
            let mut ids: Vec<usize> = l.gates.iter().map(|g| g.id).collect();
            ids.sort_unstable();
            ids
        })
        .collect();
    // scan order inside a set is program order
    let sets: Vec<Vec<GateInstance>> = layers
        .iter()
        .map(|ids| ids.iter().map(|&i| gates[i].clone()).collect())
        .collect();

    let mut edges: BTreeMap<(usize, usize), EdgeKind> = BTreeMap::new();
    let kind_of = |a: &GateInstance, b: &GateInstance| {
        if a.shares_qubit(b) {
            EdgeKind::Data
        } else {
            EdgeKind::Distance
        }
    };

    let mut filter = NeighborhoodFilter::new(dm);
    let mut found = Vec::new();
    for (i, set) in sets.iter().enumerate() {
        for a in set {
            found.clear();
            filter.finalists(a, sets[i + 1..].iter().map(Vec::as_slice), &mut found);
            for &b in &found {
                edges.insert((a.id, b), kind_of(a, &gates[b]));
            }
        }
    }
    for (i, set) in sets.iter().enumerate().rev() {
        for b in set {
            found.clear();
            filter.finalists(b, sets[..i].iter().map(Vec::as_slice), &mut found);
            for &a in &found {
                edges.insert((a, b.id), kind_of(&gates[a], b));
            }
        }
    }

    for &(a, b) in edges.keys() {
        if layer_of[a] >= layer_of[b] {
            return Err(Error::InternalInvariantViolation(format!(
                "edge {a} -> {b} does not advance the layer order"
            )));
        }
    }

    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edges.keys() {
        preds[b].push(a);
    }

    // closure pass, in topological (layer) order
    let words = n.div_ceil(64).max(1);
    let mut ancestors: Vec<Vec<u64>> = vec![vec![0; words]; n];
    let order: Vec<usize> = layers.iter().flatten().copied().collect();
    let mut closure_edges = 0;
    for (pos, &b) in order.iter().enumerate() {
        let mut anc = vec![0u64; words];
        for &p in &preds[b] {
            union_into(&mut anc, &ancestors[p]);
            set_bit(&mut anc, p);
        }
        for &a in order[..pos].iter().rev() {
            if layer_of[a] == layer_of[b] || bit(&anc, a) {
                continue;
            }
            if gate_distance(&gates[a], &gates[b], dm) < SAFE_DISTANCE {
                edges.insert((a, b), kind_of(&gates[a], &gates[b]));
                preds[b].push(a);
                union_into(&mut anc, &ancestors[a]);
                set_bit(&mut anc, a);
                closure_edges += 1;
            }
        }
        ancestors[b] = anc;
    }

    let mut node_edges: BTreeMap<(usize, usize), EdgeKind> = edges
        .into_iter()
        .map(|((a, b), k)| ((node_of(a), node_of(b)), k))
        .collect();
    let mut has_succ = vec![false; n];
    for &(a, _) in node_edges.keys() {
        has_succ[a - 2] = true;
    }
    for g in 0..n {
        if preds[g].is_empty() {
            node_edges.insert((START, node_of(g)), EdgeKind::Control);
        }
        if !has_succ[g] {
            node_edges.insert((node_of(g), END), EdgeKind::Control);
        }
    }

    let total = n + 2;
    let mut node_preds = vec![Vec::new(); total];
    let mut node_succs = vec![Vec::new(); total];
    for &(a, b) in node_edges.keys() {
        node_preds[b].push(a);
        node_succs[a].push(b);
    }
    let mut nodes = vec![
        TddgNode {
            gate: None,
            gest: 0,
            gft: 0,
            removed: false,
        };
        2
    ];
    nodes.extend(gates.into_iter().map(|g| TddgNode {
        gate: Some(g),
        gest: 0,
        gft: 0,
        removed: false,
    }));
    let lmft = vec![0; layers.len()];
    Ok(Tddg {
        nodes,
        edges: node_edges,
        preds: node_preds,
        succs: node_succs,
        layers,
        layer_of,
        lmft,
        closure_edges,
    })
}

impl Tddg {
    pub fn num_gates(&self) -> usize {
        self.nodes.len() - 2
    }

    pub fn layers(&self) -> &[Vec<usize>] {
        &self.layers
    }

    pub fn layer_of(&self, gate: usize) -> usize {
        self.layer_of[gate]
    }

    pub fn gate(&self, id: usize) -> &GateInstance {
        self.nodes[node_of(id)].gate.as_ref().expect("gate node")
    }

    pub fn gest(&self, id: usize) -> u64 {
        self.nodes[node_of(id)].gest
    }

    pub fn gft(&self, id: usize) -> u64 {
        self.nodes[node_of(id)].gft
    }

    pub fn node(&self, index: usize) -> &TddgNode {
        &self.nodes[index]
    }

    /// Time recorded on the `end` sentinel.
    pub fn makespan(&self) -> u64 {
        self.nodes[END].gest
    }

    /// Layer's maximum finish time, one per baseline layer.
    pub fn lmft(&self) -> &[u64] {
        &self.lmft
    }

    /// Edges added by the closure pass rather than candidate filtering.
    pub fn closure_edges(&self) -> usize {
        self.closure_edges
    }

    /// All edges as node-index pairs (`0` = start, `1` = end, gate `g` = `g + 2`).
    pub fn node_edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        self.edges.iter().map(|(&(a, b), &k)| (a, b, k))
    }

    /// Gate-to-gate edges only.
    pub fn gate_edges(&self) -> impl Iterator<Item = (usize, usize, EdgeKind)> + '_ {
        self.node_edges()
            .filter(|&(a, b, _)| a >= 2 && b >= 2)
            .map(|(a, b, k)| (a - 2, b - 2, k))
    }

    pub fn edge(&self, from: usize, to: usize) -> Option<EdgeKind> {
        self.edges.get(&(node_of(from), node_of(to))).copied()
    }

    /// Gate predecessors of a gate (sentinels excluded).
    pub fn predecessors(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.preds[node_of(id)].iter().filter(|&&p| p >= 2).map(|&p| p - 2)
    }

    pub fn successors(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.succs[node_of(id)].iter().filter(|&&s| s >= 2).map(|&s| s - 2)
    }

    pub fn has_start_edge(&self, id: usize) -> bool {
        self.edges.contains_key(&(START, node_of(id)))
    }

    pub fn has_end_edge(&self, id: usize) -> bool {
        self.edges.contains_key(&(node_of(id), END))
    }

    /// Forward pass in layer order: GEST is the latest predecessor finish,
    /// GFT adds the gate's own duration; LMFT is the latest GFT per layer.
    pub fn compute_times(&mut self) {
        let mut makespan = 0;
        for l in 0..self.layers.len() {
            let mut lmft = 0;
            for &g in &self.layers[l] {
                let v = node_of(g);
                let gest = self.preds[v].iter().map(|&p| self.nodes[p].gft).max().unwrap_or(0);
                let node = &mut self.nodes[v];
                node.gest = gest;
                node.gft = gest + node.gate.as_ref().map_or(0, |g| g.duration_cycles);
                lmft = lmft.max(node.gft);
            }
            self.lmft[l] = lmft;
            makespan = makespan.max(lmft);
        }
        self.nodes[END].gest = makespan;
        self.nodes[END].gft = makespan;
    }

    /// Gates of `layer_index` still running when the earliest gate of the
    /// next layer may start; these can extend across the layer boundary.
    pub fn cross_layer_gates(&self, layer_index: usize) -> Vec<usize> {
        let Some(next) = self.layers.get(layer_index + 1) else {
            return Vec::new();
        };
        let Some(earliest) = next.iter().map(|&g| self.gest(g)).min() else {
            return Vec::new();
        };
        self.layers[layer_index]
            .iter()
            .copied()
            .filter(|&g| self.gft(g) > earliest)
            .collect()
    }

    /// GEST of each gate in `layer` from the finish times of its remaining
    /// (not deleted) predecessors.
    pub fn find_predecessors(&self, layer: &[usize]) -> Vec<(usize, u64)> {
        layer
            .iter()
            .map(|&g| {
                let gest = self.preds[node_of(g)]
                    .iter()
                    .filter(|&&p| !self.nodes[p].removed)
                    .map(|&p| self.nodes[p].gft)
                    .max()
                    .unwrap_or(0);
                (g, gest)
            })
            .collect()
    }

    pub(crate) fn set_times(&mut self, id: usize, gest: u64, gft: u64) {
        let node = &mut self.nodes[node_of(id)];
        node.gest = gest;
        node.gft = gft;
    }

    pub(crate) fn set_makespan(&mut self, t: u64) {
        self.nodes[END].gest = t;
        self.nodes[END].gft = t;
    }

    /// Marks a gate as deleted; its timing is kept for reporting.
    pub(crate) fn remove(&mut self, id: usize) {
        self.nodes[node_of(id)].removed = true;
    }

    pub fn is_removed(&self, id: usize) -> bool {
        self.nodes[node_of(id)].removed
    }

    fn node_label(index: usize) -> serde_json::Value {
        match index {
            START => json!("start"),
            END => json!("end"),
            g => json!(g - 2),
        }
    }

    pub fn to_json(&self) -> String {
        let nodes: Vec<_> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| match &n.gate {
                None => json!({"id": Self::node_label(i), "gest": n.gest, "gft": n.gft}),
                Some(g) => json!({
                    "id": g.id,
                    "kind": g.kind,
                    "qubits": g.qubits,
                    "layer": self.layer_of[g.id],
                    "dur": g.duration_cycles,
                    "gest": n.gest,
                    "gft": n.gft,
                }),
            })
            .collect();
        let edges: Vec<_> = self
            .node_edges()
            .map(|(a, b, k)| json!({"from": Self::node_label(a), "to": Self::node_label(b), "kind": k}))
            .collect();
        serde_json::to_string_pretty(&json!({
            "nodes": nodes,
            "edges": edges,
            "layers": self.layers,
            "lmft": self.lmft,
        }))
        .expect("tddg serializes")
    }

    /// Graphviz rendering: distance edges thick, data edges thin, sentinel
    /// edges dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tddg {\n  rankdir=LR;\n  node [shape=box];\n");
        out.push_str("  start [shape=ellipse];\n  end [shape=ellipse];\n");
        for (l, layer) in self.layers.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{l} {{\n    label=\"layer {l}\";\n    style=dashed;");
            for &g in layer {
                let gate = self.gate(g);
                let qubits: Vec<String> = gate.qubits.iter().map(|q| format!("q{q}")).collect();
                let _ = writeln!(
                    out,
                    "    g{g} [label=\"{}_{g}\\n{}\\nGEST {} GFT {}\"];",
                    gate.kind,
                    qubits.join(","),
                    self.gest(g),
                    self.gft(g)
                );
            }
            out.push_str("  }\n");
        }
        let name = |i: usize| match i {
            START => "start".to_string(),
            END => "end".to_string(),
            g => format!("g{}", g - 2),
        };
        for (a, b, k) in self.node_edges() {
            let style = match k {
                EdgeKind::Data => "",
                EdgeKind::Distance => " [penwidth=3]",
                EdgeKind::Control => " [style=dashed]",
            };
            let _ = writeln!(out, "  {} -> {}{};", name(a), name(b), style);
        }
        out.push_str("}\n");
        out
    }
}
