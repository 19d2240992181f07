//! Hardware coupling graphs and hop-count distances.

use std::collections::{BTreeSet, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circuit::GateInstance;
use crate::error::{Error, Result};

/// Coupling graph of a device. Edges are unordered and unit length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    num_qubits: usize,
    edges: BTreeSet<(usize, usize)>,
    unusable: BTreeSet<usize>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TopologyFile {
    num_qubits: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    unusable: Vec<usize>,
}

impl Topology {
    pub fn new(
        num_qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        unusable: impl IntoIterator<Item = usize>,
    ) -> Result<Topology> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::BadInput(format!("self-loop on qubit {a}")));
            }
            if a >= num_qubits || b >= num_qubits {
                return Err(Error::BadInput(format!(
                    "edge ({a}, {b}) out of range for {num_qubits} qubits"
                )));
            }
            set.insert((a.min(b), a.max(b)));
        }
        let unusable: BTreeSet<usize> = unusable.into_iter().collect();
        if let Some(&q) = unusable.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::BadInput(format!("unusable qubit {q} out of range")));
        }
        let mut adjacency = vec![Vec::new(); num_qubits];
        for &(a, b) in &set {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Topology {
            num_qubits,
            edges: set,
            unusable,
            adjacency,
        })
    }

    /// Nearest-neighbour `rows x cols` lattice, row-major numbering.
    pub fn grid(rows: usize, cols: usize) -> Topology {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let i = r * cols + c;
                if c + 1 < cols {
                    edges.push((i, i + 1));
                }
                if r + 1 < rows {
                    edges.push((i, i + cols));
                }
            }
        }
        Topology::new(rows * cols, edges, []).expect("grid edges are valid")
    }

    /// Path graph `0 - 1 - ... - (n-1)`.
    pub fn line(n: usize) -> Topology {
        Topology::new(n, (1..n).map(|i| (i - 1, i)), []).expect("line edges are valid")
    }

    pub fn from_json(text: &str) -> Result<Topology> {
        let f: TopologyFile = serde_json::from_str(text)?;
        Topology::new(f.num_qubits, f.edges.into_iter().map(|[a, b]| (a, b)), f.unusable)
    }

    pub fn load(path: &Path) -> Result<Topology> {
        Topology::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let f = TopologyFile {
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            unusable: self.unusable.iter().copied().collect(),
        };
        serde_json::to_string_pretty(&f).expect("topology serializes")
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn unusable(&self) -> &BTreeSet<usize> {
        &self.unusable
    }

    pub fn is_usable(&self, q: usize) -> bool {
        q < self.num_qubits && !self.unusable.contains(&q)
    }

    pub fn num_usable(&self) -> usize {
        self.num_qubits - self.unusable.len()
    }

    /// Neighbours of `q`, including unusable ones.
    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }

    /// Usable neighbours of a usable qubit.
    pub fn usable_neighbors(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        let ok = self.is_usable(q);
        self.adjacency[q]
            .iter()
            .copied()
            .filter(move |&n| ok && self.is_usable(n))
    }

    /// Edges whose endpoints are both usable.
    pub fn usable_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges()
            .filter(|&(a, b)| self.is_usable(a) && self.is_usable(b))
    }

    pub fn is_coupled(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }
}

/// All-pairs hop counts over usable qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub const INF: u32 = u32::MAX;

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, a: usize, b: usize) -> u32 {
        self.d[a * self.n + b]
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.d[a * self.n..(a + 1) * self.n]
    }
}

/// Breadth-first search from every usable qubit; unusable qubits are treated
/// as removed vertices.
pub fn all_pairs_distance(t: &Topology) -> DistanceMatrix {
    let n = t.num_qubits();
    let mut d = vec![DistanceMatrix::INF; n * n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        if !t.is_usable(src) {
            continue;
        }
        let row = &mut d[src * n..(src + 1) * n];
        row[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = row[u];
            for v in t.usable_neighbors(u) {
                if row[v] == DistanceMatrix::INF {
                    row[v] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    DistanceMatrix { n, d }
}

/// Minimum hop distance between any qubit of `a` and any qubit of `b`.
/// Gates sharing a qubit are at distance 0.
pub fn gate_distance(a: &GateInstance, b: &GateInstance, dm: &DistanceMatrix) -> u32 {
    let mut best = DistanceMatrix::INF;
    for &qa in &a.qubits {
        for &qb in &b.qubits {
            if qa == qb {
                return 0;
            }
            best = best.min(dm.get(qa, qb));
        }
    }
    best
}
