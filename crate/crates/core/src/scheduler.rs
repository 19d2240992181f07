//! Iterative scheduling with barrier punching.
//!
//! Starting from the baseline layering, each iteration picks the gates of the
//! current layer that can start earliest, lets them begin as soon as their
//! predecessors finish, and keeps only the still-running gates of the previous
//! layer (the cross-layer gates) alongside them. The qubits of that parallel
//! execution zone are released from the barrier; all other qubits stay
//! synchronized.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::baseline::{interference_cost, plan_identities_within, InterferenceReport, LayeredCircuit, SAFE_DISTANCE};
use crate::circuit::{Circuit, GateInstance, GateKind};
use crate::error::{Error, Result};
use crate::qasm::{write_gate, write_header, write_measurements};
use crate::tddg::Tddg;
use crate::topology::{gate_distance, DistanceMatrix, Topology};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledGate {
    pub id: usize,
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub start: u64,
    pub dur: u64,
    /// Baseline layer the gate came from.
    pub origin_layer: usize,
}

impl ScheduledGate {
    pub fn end(&self) -> u64 {
        self.start + self.dur
    }

    fn overlaps(&self, from: u64, to: u64) -> bool {
        self.start < to && self.end() > from
    }
}

/// One time window of the schedule, from one barrier boundary to the next.
/// Gates listed here start in this window; cross-layer gates may run past
/// its end.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ScheduledLayer {
    pub start: u64,
    pub lambda: u64,
    pub gates: Vec<ScheduledGate>,
    /// Qubits still synchronized at the boundary closing this window.
    pub barrier_qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub transferred_edges: usize,
}

fn is_zero(v: &usize) -> bool {
    *v == 0
}

impl ScheduledLayer {
    pub fn end(&self) -> u64 {
        self.start + self.lambda
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub time: u64,
    pub punched: Vec<usize>,
    pub retained: Vec<usize>,
}

/// Zone split recorded by one scheduling iteration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneRecord {
    pub lmft: u64,
    pub pre_sz: Vec<usize>,
    pub pez: Vec<usize>,
    pub post_sz: Vec<usize>,
    pub cross_layer: Vec<usize>,
    pub new_layer: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Schedule {
    pub program_cycle: u64,
    pub num_qubits: usize,
    pub layers: Vec<ScheduledLayer>,
    pub boundaries: Vec<Boundary>,
    #[serde(default)]
    pub zones: Vec<ZoneRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interference: Option<InterferenceReport>,
}

fn scheduled(g: &GateInstance, start: u64, origin_layer: usize) -> ScheduledGate {
    ScheduledGate {
        id: g.id,
        kind: g.kind,
        qubits: g.qubits.clone(),
        start,
        dur: g.duration_cycles,
        origin_layer,
    }
}

impl Schedule {
    /// Full-barrier schedule: one window per baseline layer.
    pub fn baseline(lc: &LayeredCircuit) -> Schedule {
        let all: Vec<usize> = (0..lc.num_qubits).collect();
        let mut t = 0;
        let mut layers = Vec::new();
        let mut boundaries = Vec::new();
        for (l, layer) in lc.layers.iter().enumerate() {
            let lambda = layer.cycle();
            let mut gates: Vec<ScheduledGate> = layer.gates.iter().map(|g| scheduled(g, t, l)).collect();
            gates.sort_by_key(|g| g.id);
            let last = l + 1 == lc.layers.len();
            layers.push(ScheduledLayer {
                start: t,
                lambda,
                gates,
                barrier_qubits: if last { Vec::new() } else { all.clone() },
                identities: layer.identities.clone(),
                transferred_edges: layer.transferred_edges,
            });
            t += lambda;
            if !last {
                boundaries.push(Boundary {
                    time: t,
                    punched: Vec::new(),
                    retained: all.clone(),
                });
            }
        }
        Schedule {
            program_cycle: t,
            num_qubits: lc.num_qubits,
            layers,
            boundaries,
            zones: Vec::new(),
            interference: None,
        }
    }

    pub fn num_gates(&self) -> usize {
        self.layers.iter().map(|l| l.gates.len()).sum()
    }

    /// All scheduled gates ordered by start cycle, then id.
    pub fn gates(&self) -> Vec<&ScheduledGate> {
        let mut v: Vec<&ScheduledGate> = self.layers.iter().flat_map(|l| &l.gates).collect();
        v.sort_by_key(|g| (g.start, g.id));
        v
    }

    pub fn gate(&self, id: usize) -> Option<&ScheduledGate> {
        self.layers.iter().flat_map(|l| &l.gates).find(|g| g.id == id)
    }

    pub fn lambdas(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.lambda).collect()
    }

    /// Qubits touched by at least one gate.
    pub fn touched_qubits(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self
            .layers
            .iter()
            .flat_map(|l| l.gates.iter().flat_map(|g| g.qubits.iter().copied()))
            .collect();
        set.into_iter().collect()
    }

    /// Gates running at some point inside window `w`.
    pub fn active_in(&self, w: usize) -> Vec<&ScheduledGate> {
        let (from, to) = (self.layers[w].start, self.layers[w].end());
        self.gates().into_iter().filter(|g| g.overlaps(from, to)).collect()
    }

    fn active_instances(&self, w: usize) -> Vec<GateInstance> {
        self.active_in(w)
            .into_iter()
            .map(|g| GateInstance::new(g.id, g.kind, g.qubits.clone()).with_duration(g.dur))
            .collect()
    }

    /// Places one-cycle identity gates at the start of every window on idle
    /// qubits next to interfering active qubits.
    pub fn with_identity_mitigation(mut self, t: &Topology) -> Schedule {
        for w in 0..self.layers.len() {
            let plan = plan_identities_within(&self.active_instances(w), t, self.num_qubits);
            self.layers[w].identities = plan.qubits;
            self.layers[w].transferred_edges = plan.transferred_edges;
        }
        self
    }

    /// Interference summed over windows, counting every gate running in a
    /// window as active there.
    pub fn interference(&self, t: &Topology, alpha: f64) -> InterferenceReport {
        (0..self.layers.len())
            .map(|w| {
                interference_cost(&self.active_instances(w), t, alpha)
                    .reclassified(self.layers[w].transferred_edges)
            })
            .fold(InterferenceReport::empty(alpha), |acc, r| acc.merge(&r))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serializes")
    }

    pub fn from_json(text: &str) -> Result<Schedule> {
        Ok(serde_json::from_str(text)?)
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

/// Runs the punching iteration over a TDDG whose times have been computed,
/// updating gate times in place, and returns the resulting schedule.
pub fn schedule_and_punch(g: &mut Tddg, lc: &LayeredCircuit) -> Result<Schedule> {
    let layers: Vec<Vec<usize>> = g.layers().to_vec();
    let all: BTreeSet<usize> = (0..lc.num_qubits).collect();
    let Some(first) = layers.first() else {
        g.set_makespan(0);
        return Ok(Schedule {
            num_qubits: lc.num_qubits,
            ..Default::default()
        });
    };
    for &id in first {
        let dur = g.gate(id).duration_cycles;
        g.set_times(id, 0, dur);
    }
    let mut prev: Vec<usize> = first.clone();
    let mut starts: Vec<u64> = vec![0];
    let mut boundaries: Vec<Boundary> = Vec::new();
    let mut zones = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    let mut next_layer = 1;

    loop {
        if cur.is_empty() {
            let Some(layer) = layers.get(next_layer) else { break };
            cur = layer.clone();
            next_layer += 1;
        }
        let boundary = *starts.last().expect("first window");
        let gests: Vec<(usize, u64)> = g
            .find_predecessors(&cur)
            .into_iter()
            .map(|(id, t)| (id, t.max(boundary)))
            .collect();
        let lmft = gests.iter().map(|&(_, t)| t).min().expect("current layer is non-empty");
        let new_layer: Vec<usize> = gests.iter().filter(|p| p.1 == lmft).map(|p| p.0).collect();
        let post_sz: Vec<usize> = gests.iter().filter(|p| p.1 != lmft).map(|p| p.0).collect();
        let (pre_sz, cross_layer): (Vec<usize>, Vec<usize>) = prev.iter().partition(|&&id| g.gft(id) <= lmft);
        for &id in &pre_sz {
            g.remove(id);
        }
        for &id in &new_layer {
            let dur = g.gate(id).duration_cycles;
            g.set_times(id, lmft, lmft + dur);
        }
        let pez = sorted(new_layer.iter().chain(&cross_layer).copied().collect());
        let pez_qubits: BTreeSet<usize> = pez.iter().flat_map(|&id| g.gate(id).qubits.iter().copied()).collect();
        if lmft > boundary {
            starts.push(lmft);
            boundaries.push(Boundary {
                time: lmft,
                punched: pez_qubits.iter().copied().collect(),
                retained: all.difference(&pez_qubits).copied().collect(),
            });
        } else if let Some(b) = boundaries.last_mut() {
            let punched: BTreeSet<usize> = b.punched.iter().copied().chain(pez_qubits).collect();
            b.retained = all.difference(&punched).copied().collect();
            b.punched = punched.into_iter().collect();
        }
        zones.push(ZoneRecord {
            lmft,
            pre_sz,
            pez: pez.clone(),
            post_sz: post_sz.clone(),
            cross_layer,
            new_layer,
        });
        prev = pez;
        cur = post_sz;
    }

    let n = g.num_gates();
    let makespan = (0..n).map(|id| g.gft(id)).max().unwrap_or(0);
    g.set_makespan(makespan);
    for (a, b, _) in g.gate_edges() {
        if g.gest(b) < g.gft(a) {
            return Err(Error::InternalInvariantViolation(format!(
                "gate {b} starts at {} before predecessor {a} finishes at {}",
                g.gest(b),
                g.gft(a)
            )));
        }
    }

    let mut windows: Vec<ScheduledLayer> = starts
        .iter()
        .enumerate()
        .map(|(i, &s)| {
            let end = starts.get(i + 1).copied().unwrap_or(makespan);
            ScheduledLayer {
                start: s,
                lambda: end - s,
                barrier_qubits: boundaries.get(i).map(|b| b.retained.clone()).unwrap_or_default(),
                ..Default::default()
            }
        })
        .collect();
    for id in 0..n {
        let start = g.gest(id);
        let w = starts.partition_point(|&s| s <= start) - 1;
        windows[w].gates.push(scheduled(g.gate(id), start, g.layer_of(id)));
    }
    Ok(Schedule {
        program_cycle: makespan,
        num_qubits: lc.num_qubits,
        layers: windows,
        boundaries,
        zones,
        interference: None,
    })
}

/// OpenQASM 2.0 text in start-cycle order. Identity gates open their window
/// and each boundary emits a barrier over its retained qubits.
pub fn emit_scheduled_qasm(s: &Schedule, c: &Circuit) -> String {
    let mut out = String::new();
    write_header(&mut out, c.num_qubits.max(s.num_qubits), c.classical_bits);
    let last = s.layers.len().saturating_sub(1);
    for (w, layer) in s.layers.iter().enumerate() {
        for &q in &layer.identities {
            write_gate(&mut out, GateKind::ID, &[], &[q]);
        }
        for g in &layer.gates {
            let params = c.gates.get(g.id).map(|x| x.params.as_slice()).unwrap_or(&[]);
            write_gate(&mut out, g.kind, params, &g.qubits);
        }
        if w < last && !layer.barrier_qubits.is_empty() {
            let args: Vec<String> = layer.barrier_qubits.iter().map(|q| format!("q[{q}]")).collect();
            let _ = writeln!(out, "barrier {};", args.join(","));
        }
    }
    write_measurements(&mut out, &c.measurements);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum Violation {
    /// Two intervals on one qubit overlap. `None` marks an identity gate.
    QubitOverlap { qubit: usize, a: Option<usize>, b: Option<usize> },
    /// A later gate on a shared qubit starts before the earlier one ends.
    DataOrder { earlier: usize, later: usize, qubit: usize },
    /// Overlapping gates from different baseline layers sit too close.
    Crosstalk { a: usize, b: usize, distance: u32 },
    /// Window widths, positions or gate coverage disagree with the program cycle.
    Cycle { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct VerifyReport {
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn exclusivity_ok(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, Violation::QubitOverlap { .. }))
    }

    pub fn data_order_ok(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, Violation::DataOrder { .. }))
    }

    pub fn crosstalk_ok(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, Violation::Crosstalk { .. }))
    }

    pub fn cycle_ok(&self) -> bool {
        !self.violations.iter().any(|v| matches!(v, Violation::Cycle { .. }))
    }
}

/// Checks qubit exclusivity, data-dependency order, crosstalk safety of
/// overlapping gates and program-cycle consistency.
pub fn verify_schedule(s: &Schedule, c: &Circuit, _t: &Topology, dm: &DistanceMatrix) -> VerifyReport {
    let mut violations = Vec::new();
    let gates = s.gates();
    let nq = c.num_qubits.max(s.num_qubits).max(dm.len());

    // (a) exclusivity, identities included
    let mut per_qubit: Vec<Vec<(u64, u64, Option<usize>)>> = vec![Vec::new(); nq];
    for g in &gates {
        for &q in &g.qubits {
            if q < nq {
                per_qubit[q].push((g.start, g.end(), Some(g.id)));
            }
        }
    }
    for layer in &s.layers {
        for &q in &layer.identities {
            if q < nq {
                per_qubit[q].push((layer.start, layer.start + 1, None));
            }
        }
    }
    for (q, list) in per_qubit.iter_mut().enumerate() {
        list.sort();
        for w in list.windows(2) {
            if w[1].0 < w[0].1 {
                violations.push(Violation::QubitOverlap { qubit: q, a: w[0].2, b: w[1].2 });
            }
        }
    }

    // (b) program order on shared qubits
    let mut by_id: Vec<&ScheduledGate> = gates.clone();
    by_id.sort_by_key(|g| g.id);
    let mut last_on: Vec<Option<&ScheduledGate>> = vec![None; nq];
    for g in &by_id {
        for &q in &g.qubits {
            if q >= nq {
                continue;
            }
            if let Some(e) = last_on[q] {
                if g.start < e.end() {
                    violations.push(Violation::DataOrder { earlier: e.id, later: g.id, qubit: q });
                }
            }
            last_on[q] = Some(g);
        }
    }

    // (c) crosstalk safety between layers
    for (i, a) in gates.iter().enumerate() {
        for b in &gates[i + 1..] {
            if b.start >= a.end() {
                break;
            }
            if a.origin_layer == b.origin_layer {
                continue;
            }
            let d = gate_distance(
                &GateInstance::new(a.id, a.kind, a.qubits.clone()),
                &GateInstance::new(b.id, b.kind, b.qubits.clone()),
                dm,
            );
            if d < SAFE_DISTANCE {
                violations.push(Violation::Crosstalk { a: a.id, b: b.id, distance: d });
            }
        }
    }

    // (d) program cycle
    let mut t = 0;
    for (w, layer) in s.layers.iter().enumerate() {
        if layer.start != t {
            violations.push(Violation::Cycle {
                message: format!("window {w} starts at {} instead of {t}", layer.start),
            });
        }
        if layer.lambda == 0 {
            violations.push(Violation::Cycle { message: format!("window {w} is empty") });
        }
        for g in &layer.gates {
            if g.start < layer.start || g.start >= layer.end() {
                violations.push(Violation::Cycle {
                    message: format!("gate {} starts outside window {w}", g.id),
                });
            }
        }
        t = layer.start + layer.lambda;
    }
    if t != s.program_cycle {
        violations.push(Violation::Cycle {
            message: format!("windows sum to {t} but the program cycle is {}", s.program_cycle),
        });
    }
    if let Some(g) = gates.iter().find(|g| g.end() > s.program_cycle) {
        violations.push(Violation::Cycle {
            message: format!("gate {} ends after the program cycle", g.id),
        });
    }
    let mut seen = vec![0usize; c.gates.len()];
    for g in &gates {
        match c.gates.get(g.id) {
            Some(orig) if orig.kind == g.kind && orig.qubits == g.qubits => seen[g.id] += 1,
            _ => violations.push(Violation::Cycle {
                message: format!("gate {} does not match the circuit", g.id),
            }),
        }
    }
    for (id, &k) in seen.iter().enumerate() {
        if k != 1 {
            violations.push(Violation::Cycle {
                message: format!("gate {id} scheduled {k} times"),
            });
        }
    }
    VerifyReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::layerize_crosstalk_safe;
    use crate::circuit::DurationTable;
    use crate::qasm::parse_qasm;
    use crate::tddg::build_tddg;
    use crate::topology::all_pairs_distance;

    struct Run {
        circuit: Circuit,
        topo: Topology,
        dm: DistanceMatrix,
        lc: LayeredCircuit,
        tddg: Tddg,
        schedule: Schedule,
    }

    fn run(qasm: &str, topo: Topology) -> Run {
        let circuit = parse_qasm(qasm)
            .unwrap()
            .quantize_durations(&DurationTable::in_cycles(1.0, [("rz", 1), ("x", 1), ("cz", 2), ("iswap", 6)]))
            .unwrap();
        let dm = all_pairs_distance(&topo);
        let lc = layerize_crosstalk_safe(&circuit, &topo, &dm).unwrap();
        let mut tddg = build_tddg(&lc, &dm).unwrap();
        tddg.compute_times();
        let schedule = schedule_and_punch(&mut tddg, &lc).unwrap();
        Run { circuit, topo, dm, lc, tddg, schedule }
    }

    const FIG2: &str = "qreg q[12]; iswap q[3],q[7]; cz q[4],q[5]; rz(pi/4) q[10]; cz q[2],q[6]; iswap q[8],q[9];";

    #[test]
    fn worked_example_schedule() {
        let r = run(FIG2, Topology::grid(3, 4));
        let s = &r.schedule;
        assert_eq!(s.program_cycle, 8);
        assert_eq!(s.lambdas(), vec![2, 4, 2]);
        assert_eq!(s.boundaries[0].punched, vec![3, 7, 8, 9]);
        assert_eq!(s.boundaries[0].retained, vec![0, 1, 2, 4, 5, 6, 10, 11]);
        let (a, b) = (s.gate(0).unwrap(), s.gate(4).unwrap());
        assert!(a.start < b.end() && b.start < a.end());
        assert_eq!(r.tddg.gft(4), 8);
        assert_eq!(r.tddg.makespan(), 8);
        assert!(verify_schedule(s, &r.circuit, &r.topo, &r.dm).passed());
    }

    #[test]
    fn worked_example_zones() {
        let s = run(FIG2, Topology::grid(3, 4)).schedule;
        let cross: Vec<Vec<usize>> = s.zones.iter().map(|z| z.cross_layer.clone()).collect();
        assert_eq!(cross, vec![vec![0], vec![4]]);
        assert_eq!(s.zones[0].pre_sz, vec![1, 2]);
        assert_eq!(s.zones[0].new_layer, vec![4]);
        assert_eq!(s.zones[0].post_sz, vec![3]);
        assert_eq!(s.zones[1].lmft, 6);
    }

    #[test]
    fn predecessors_of_second_layer() {
        let r = run(FIG2, Topology::grid(3, 4));
        let mut fresh = build_tddg(&r.lc, &r.dm).unwrap();
        fresh.compute_times();
        assert_eq!(fresh.find_predecessors(&[3, 4]), vec![(3, 6), (4, 2)]);
        assert_eq!(fresh.find_predecessors(&[0, 1, 2]), vec![(0, 0), (1, 0), (2, 0)]);
    }

    #[test]
    fn chain_predecessor_time() {
        let r = run("qreg q[2]; cz q[0],q[1]; x q[0];", Topology::line(2));
        let mut g = build_tddg(&r.lc, &r.dm).unwrap();
        g.compute_times();
        assert_eq!(g.find_predecessors(&[1]), vec![(1, 2)]);
    }

    #[test]
    fn single_layer_matches_baseline() {
        let r = run("qreg q[6]; cz q[0],q[1]; cz q[4],q[5];", Topology::line(6));
        let mut base = Schedule::baseline(&r.lc);
        base.zones.clear();
        assert_eq!(r.schedule, base);
        assert!(r.schedule.boundaries.is_empty());
    }

    #[test]
    fn empty_circuit() {
        let r = run("qreg q[3];", Topology::line(3));
        assert_eq!(r.schedule.program_cycle, 0);
        assert!(r.schedule.layers.is_empty());
        let text = emit_scheduled_qasm(&r.schedule, &r.circuit);
        assert!(parse_qasm(&text).unwrap().gates.is_empty());
    }

    #[test]
    fn emitted_barriers_skip_punched_qubits() {
        let r = run(FIG2, Topology::grid(3, 4));
        let text = emit_scheduled_qasm(&r.schedule, &r.circuit);
        let first = text.lines().find(|l| l.starts_with("barrier")).unwrap();
        for q in [3, 7, 8, 9] {
            assert!(!first.contains(&format!("q[{q}]")), "{first}");
        }
        assert!(first.contains("q[4]"));
        assert_eq!(parse_qasm(&text).unwrap().gates.len(), 5);
    }

    #[test]
    fn baseline_emission_has_full_barriers() {
        let r = run(FIG2, Topology::grid(3, 4));
        let base = Schedule::baseline(&r.lc);
        assert_eq!(base.program_cycle, 12);
        let text = emit_scheduled_qasm(&base, &r.circuit);
        let barriers: Vec<&str> = text.lines().filter(|l| l.starts_with("barrier")).collect();
        assert_eq!(barriers.len(), 1);
        assert_eq!(barriers[0].matches("q[").count(), 12);
        assert!(verify_schedule(&base, &r.circuit, &r.topo, &r.dm).passed());
    }

    #[test]
    fn verifier_reports_data_violation() {
        let r = run("qreg q[2]; cz q[0],q[1]; x q[0];", Topology::line(2));
        let mut s = r.schedule.clone();
        s.layers[1].gates[0].start = 1;
        let report = verify_schedule(&s, &r.circuit, &r.topo, &r.dm);
        assert!(!report.passed());
        assert!(report
            .violations
            .contains(&Violation::DataOrder { earlier: 0, later: 1, qubit: 0 }));
    }

    #[test]
    fn verifier_reports_crosstalk() {
        let r = run("qreg q[4]; cz q[0],q[1]; cz q[2],q[3];", Topology::line(4));
        let mut s = r.schedule.clone();
        let moved = s.layers[1].gates.remove(0);
        s.layers[0].gates.push(ScheduledGate { start: 0, ..moved });
        let report = verify_schedule(&s, &r.circuit, &r.topo, &r.dm);
        assert!(!report.crosstalk_ok());
    }

    #[test]
    fn identities_sit_on_idle_qubits() {
        let r = run(FIG2, Topology::grid(3, 4));
        let s = r.schedule.clone().with_identity_mitigation(&r.topo);
        assert!(verify_schedule(&s, &r.circuit, &r.topo, &r.dm).passed());
        assert_eq!(s.program_cycle, 8);
        let before = r.schedule.interference(&r.topo, 0.5);
        let after = s.interference(&r.topo, 0.5);
        assert!(after.ia <= before.ia);
    }

    #[test]
    fn json_is_deterministic_and_round_trips() {
        let a = run(FIG2, Topology::grid(3, 4)).schedule;
        let b = run(FIG2, Topology::grid(3, 4)).schedule;
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(Schedule::from_json(&a.to_json()).unwrap(), a);
    }
}
