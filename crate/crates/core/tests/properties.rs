mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use cyco::baseline::{insert_identity_mitigation, interference_cost, layerize_crosstalk_safe};
use cyco::circuit::{Circuit, DurationTable};
use cyco::metrics::{
    bench_report, hellinger_distance, hellinger_fidelity, read_csv_report, speedup_ratio, BenchRecord,
    Distribution, FidelityVariant, ReportFormat,
};
use cyco::pipeline::{run_pipeline, PipelineOptions};
use cyco::profiles::builtin_profile;
use cyco::qasm::{emit_qasm, parse_qasm};
use cyco::random::random_circuit;
use cyco::tddg::{build_tddg, Tddg};
use cyco::topology::{all_pairs_distance, gate_distance, DistanceMatrix, Topology};

fn floyd_warshall(t: &Topology) -> Vec<Vec<u64>> {
    let n = t.num_qubits();
    let inf = u64::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for q in 0..n {
        if t.is_usable(q) {
            d[q][q] = 0;
        }
    }
    for (a, b) in t.usable_edges() {
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

fn arb_topology() -> impl Strategy<Value = Topology> {
    (1usize..12).prop_flat_map(|n| {
        let pairs = proptest::collection::vec((0..n, 0..n), 0..(n * 2));
        let unusable = proptest::collection::btree_set(0..n, 0..=(n / 4));
        (Just(n), pairs, unusable).prop_map(|(n, pairs, unusable)| {
            let edges: Vec<_> = pairs.into_iter().filter(|(a, b)| a != b).collect();
            Topology::new(n, edges, unusable).unwrap()
        })
    })
}

fn device(choice: u8) -> (Topology, DurationTable) {
    match choice % 4 {
        0 => builtin_profile("grid:3x4").unwrap(),
        1 => (Topology::grid(4, 4), common::all_kinds_table()),
        2 => builtin_profile("brisbane-127").unwrap(),
        _ => (Topology::line(8), common::all_kinds_table()),
    }
}

fn arb_circuit() -> impl Strategy<Value = (Topology, DurationTable, Circuit)> {
    (any::<u8>(), 1usize..=16, 0usize..80, any::<u64>()).prop_map(|(choice, n, gates, seed)| {
        let (t, d) = device(choice);
        let n = n.min(t.num_qubits());
        let c = random_circuit(&t, &d, n, gates, seed).unwrap();
        (t, d, c)
    })
}

fn reachable_from(g: &Tddg, from: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![from];
    while let Some(u) = stack.pop() {
        for v in g.successors(u) {
            if seen.insert(v) {
                stack.push(v);
            }
        }
    }
    seen
}

fn is_acyclic(g: &Tddg) -> bool {
    let n = g.num_gates();
    let mut indeg = vec![0usize; n];
    for (_, b, _) in g.gate_edges() {
        indeg[b] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(u) = ready.pop() {
        done += 1;
        for v in g.successors(u) {
            indeg[v] -= 1;
            if indeg[v] == 0 {
                ready.push(v);
            }
        }
    }
    done == n
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn distances_match_floyd_warshall(t in arb_topology()) {
        let dm = all_pairs_distance(&t);
        let fw = floyd_warshall(&t);
        for a in 0..t.num_qubits() {
            for b in 0..t.num_qubits() {
                let want = if fw[a][b] >= u64::MAX / 4 { DistanceMatrix::INF } else { fw[a][b] as u32 };
                prop_assert_eq!(dm.get(a, b), want);
                prop_assert_eq!(dm.get(a, b), dm.get(b, a));
            }
        }
    }

    #[test]
    fn gate_distance_is_symmetric((t, _d, c) in arb_circuit()) {
        let dm = all_pairs_distance(&t);
        for a in c.gates.iter().take(20) {
            for b in c.gates.iter().take(20) {
                prop_assert_eq!(gate_distance(a, b, &dm), gate_distance(b, a, &dm));
                prop_assert_eq!(gate_distance(a, b, &dm) == 0, a.shares_qubit(b));
            }
        }
    }

    #[test]
    fn qasm_round_trip((_t, _d, c) in arb_circuit()) {
        prop_assert_eq!(parse_qasm(&emit_qasm(&c)).unwrap(), c);
    }

    #[test]
    fn layering_is_crosstalk_safe((t, d, c) in arb_circuit()) {
        let dm = all_pairs_distance(&t);
        let c = c.quantize_durations(&d).unwrap();
        let lc = layerize_crosstalk_safe(&c, &t, &dm).unwrap();
        let mut seen = vec![0; c.len()];
        let layer_of = lc.layer_of();
        for layer in &lc.layers {
            let mut used = BTreeSet::new();
            for g in &layer.gates {
                seen[g.id] += 1;
                for &q in &g.qubits {
                    prop_assert!(used.insert(q), "qubit {} twice in a layer", q);
                }
            }
            for a in layer.gates.iter().filter(|g| g.is_two_qubit()) {
                for b in layer.gates.iter().filter(|g| g.is_two_qubit() && g.id != a.id) {
                    prop_assert!(gate_distance(a, b, &dm) >= 2);
                }
            }
        }
        prop_assert!(seen.iter().all(|&k| k == 1));
        for a in &c.gates {
            for b in c.gates.iter().filter(|b| b.id > a.id && b.shares_qubit(a)) {
                prop_assert!(layer_of[a.id] < layer_of[b.id]);
            }
        }
    }

    #[test]
    fn tddg_orders_every_close_pair((t, d, c) in arb_circuit()) {
        let dm = all_pairs_distance(&t);
        let c = c.quantize_durations(&d).unwrap();
        let lc = layerize_crosstalk_safe(&c, &t, &dm).unwrap();
        let mut g = build_tddg(&lc, &dm).unwrap();
        prop_assert!(is_acyclic(&g));
        for (a, b, _) in g.gate_edges() {
            prop_assert!(g.layer_of(a) < g.layer_of(b));
        }
        for a in 0..g.num_gates() {
            let reach = reachable_from(&g, a);
            for b in 0..g.num_gates() {
                if g.layer_of(b) > g.layer_of(a) && gate_distance(g.gate(a), g.gate(b), &dm) < 2 {
                    prop_assert!(reach.contains(&b), "{} does not reach {}", a, b);
                }
            }
            prop_assert!(g.has_start_edge(a) || g.predecessors(a).next().is_some());
            prop_assert!(g.has_end_edge(a) || g.successors(a).next().is_some());
        }
        g.compute_times();
        for (a, b, _) in g.gate_edges() {
            prop_assert!(g.gest(b) >= g.gft(a));
        }
        for (l, layer) in g.layers().iter().enumerate() {
            let lmft = layer.iter().map(|&id| g.gft(id)).max().unwrap_or(0);
            prop_assert_eq!(g.lmft()[l], lmft);
        }
    }

    #[test]
    fn punching_never_lengthens_and_verifies((t, d, c) in arb_circuit()) {
        let out = run_pipeline(&c, &t, &d, &PipelineOptions::default()).unwrap();
        prop_assert!(out.schedule.program_cycle <= out.baseline.program_cycle);
        prop_assert!(out.verify.passed(), "{:?}", out.verify.violations);
        prop_assert_eq!(out.schedule.num_gates(), out.circuit.len());
        prop_assert_eq!(out.schedule.lambdas().iter().sum::<u64>(), out.schedule.program_cycle);
        for g in out.schedule.gates() {
            prop_assert!(g.end() <= out.schedule.program_cycle);
        }
        let again = run_pipeline(&c, &t, &d, &PipelineOptions::default()).unwrap();
        prop_assert_eq!(out.schedule.to_json(), again.schedule.to_json());
    }

    #[test]
    fn semantics_preserved((t, d, c) in arb_circuit()) {
        prop_assume!(c.num_qubits <= 10);
        let out = run_pipeline(&c, &t, &d, &PipelineOptions::default()).unwrap();
        let text = cyco::scheduler::emit_scheduled_qasm(&out.schedule, &out.circuit);
        let emitted = parse_qasm(&text).unwrap();
        let dev = common::statevector::programs_agree(&c, &emitted, c.num_qubits, 11);
        prop_assert!(dev <= 1e-9, "deviation {}", dev);
    }

    #[test]
    fn mitigation_never_raises_active_interference((t, d, c) in arb_circuit()) {
        let dm = all_pairs_distance(&t);
        let c = c.quantize_durations(&d).unwrap();
        let lc = layerize_crosstalk_safe(&c, &t, &dm).unwrap();
        let m = insert_identity_mitigation(&lc, &t);
        prop_assert_eq!(m.program_cycle(), lc.program_cycle());
        for (before, after) in lc.layers.iter().zip(&m.layers) {
            let (rb, ra) = (before.interference(&t, 0.5), after.interference(&t, 0.5));
            prop_assert!(ra.ia <= rb.ia);
            prop_assert_eq!(ra.ia + ra.ic, rb.ia + rb.ic);
            let raw = interference_cost(&before.gates, &t, 0.5);
            prop_assert!(raw.ia + raw.ic <= t.num_edges());
            prop_assert!((raw.j - (raw.ia as f64 + 0.5 * raw.ic as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn speedup_is_antitone(base in 0.001f64..1e6, a in 0.0f64..1e6, b in 0.0f64..1e6) {
        prop_assert_eq!(speedup_ratio(base, base).unwrap(), 0.0);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(speedup_ratio(base, lo).unwrap() >= speedup_ratio(base, hi).unwrap());
    }

    #[test]
    fn hellinger_is_symmetric(w in proptest::collection::vec(0.0f64..1.0, 1..6), v in proptest::collection::vec(0.0f64..1.0, 1..6)) {
        fn norm(w: &[f64]) -> Option<Distribution> {
            let s: f64 = w.iter().sum();
            (s > 1e-6).then(|| Distribution::new(w.iter().enumerate().map(|(i, x)| (format!("{i:03b}"), x / s))).ok()).flatten()
        }
        let (Some(p), Some(q)) = (norm(&w), norm(&v)) else { return Ok(()) };
        for variant in [FidelityVariant::Paper, FidelityVariant::Standard] {
            let f1 = hellinger_fidelity(&p, &q, variant).unwrap();
            let f2 = hellinger_fidelity(&q, &p, variant).unwrap();
            prop_assert!((f1 - f2).abs() < 1e-12);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&f1));
        }
        let h = hellinger_distance(&p, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&h));
    }

    #[test]
    fn bench_csv_round_trip(rows in proptest::collection::vec(("[a-z_, \"]{1,12}", 0.001f64..1e4, 0.0f64..1e4), 0..8)) {
        let records: Vec<BenchRecord> = rows
            .iter()
            .map(|(name, base, cyco)| BenchRecord {
                benchmark: name.clone(),
                tau_baseline: *base,
                tau_cyco: *cyco,
                delta: speedup_ratio(*base, *cyco).unwrap(),
                cycles_baseline: 0,
                cycles_cyco: 0,
                interference_baseline: None,
                interference_cyco: None,
            })
            .collect();
        prop_assume!(records.iter().all(|r| r.benchmark != "MEAN"));
        let mut buf = Vec::new();
        bench_report(&records, ReportFormat::Csv, &mut buf).unwrap();
        let back = read_csv_report(buf.as_slice()).unwrap();
        prop_assert_eq!(back, records.iter().map(BenchRecord::row).collect::<Vec<_>>());
    }
}

#[test]
fn hellinger_variants_agree_at_extremes() {
    let p = Distribution::new([("0", 1.0)]).unwrap();
    let q = Distribution::new([("1", 1.0)]).unwrap();
    for (a, b) in [(&p, &p), (&p, &q)] {
        let fp = hellinger_fidelity(a, b, FidelityVariant::Paper).unwrap();
        let fs = hellinger_fidelity(a, b, FidelityVariant::Standard).unwrap();
        assert_eq!(fp, fs);
    }
}

#[test]
fn oracle_sanity() {
    common::statevector::check_oracle_sanity();
    assert!((common::statevector::eval_angle("-(pi/2)") + std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!((common::statevector::eval_angle("3*pi/4") - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    assert_eq!(common::statevector::eval_angle("1.5e-1"), 0.15);
}

#[test]
fn oracle_gates_are_unitary() {
    let table = common::all_kinds_table();
    for kind in table.kinds() {
        let mut c = Circuit::new(3);
        let qubits = if kind.arity() == 1 { vec![1] } else { vec![2, 1] };
        c.push(kind, qubits, (0..kind.num_params()).map(|i| format!("0.{}", 3 + i)).collect());
        let s = common::statevector::random_state(3, 5);
        let out = common::statevector::run(&c, &s);
        let norm: f64 = out.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12, "{kind} is not norm preserving");
    }
}
