//! Uniform hypergraphs with opaque vertex labels, and vertex weightings.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex id as it appears in serialized artifacts: a plain integer
/// (Fano plane, `[q]`), an ascending tuple (shift hypergraph windows), or a
/// name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexLabel {
    Int(i64),
    Tuple(Vec<u32>),
    Name(String),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Int(i) => write!(f, "{i}"),
            VertexLabel::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(u32::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            VertexLabel::Name(s) => f.write_str(s),
        }
    }
}

/// A `k`-uniform hypergraph. Vertices are addressed by index `0..len` in
/// label order as given; every edge is stored as an ascending index list.
#[derive(Clone, Debug)]
pub struct Hypergraph {
    k: usize,
    labels: Vec<VertexLabel>,
    edges: Vec<Vec<usize>>,
    edge_set: HashSet<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    pub fn new(k: usize, labels: Vec<VertexLabel>, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidHypergraph(format!("uniformity {k} < 2")));
        }
        let distinct: HashSet<&VertexLabel> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidHypergraph("duplicate vertex label".into()));
        }
        let mut stored = Vec::with_capacity(edges.len());
        let mut edge_set = HashSet::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); labels.len()];
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.len() != k {
                return Err(Error::InvalidHypergraph(format!("edge {e:?} does not have {k} distinct vertices")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= labels.len()) {
                return Err(Error::InvalidHypergraph(format!("edge mentions unknown vertex {v}")));
            }
            if !edge_set.insert(e.clone()) {
                return Err(Error::InvalidHypergraph(format!("duplicate edge {e:?}")));
            }
            for &v in &e {
                incidence[v].push(stored.len());
            }
            stored.push(e);
        }
        Ok(Hypergraph { k, labels, edges: stored, edge_set, incidence })
    }

    /// Vertices labelled `1..=n`; edges given by those labels.
    pub fn from_int_edges(k: usize, n: usize, edges: &[Vec<i64>]) -> Result<Self> {
        let labels = (1..=n as i64).map(VertexLabel::Int).collect();
        let edges = edges
            .iter()
            .map(|e| {
                e.iter()
                    .map(|&v| {
                        if v >= 1 && v as usize <= n {
                            Ok(v as usize - 1)
                        } else {
                            Err(Error::InvalidHypergraph(format!("vertex {v} outside [1, {n}]")))
                        }
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Hypergraph::new(k, labels, edges)
    }

    /// The Fano plane on `1..=7`.
    pub fn fano() -> Self {
        let lines = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
        let edges: Vec<Vec<i64>> = lines.iter().map(|l| l.to_vec()).collect();
        Hypergraph::from_int_edges(3, 7, &edges).expect("fano plane is valid")
    }

    /// Complete `k`-uniform hypergraph on `1..=n`.
    pub fn complete(k: usize, n: usize) -> Result<Self> {
        let labels = (1..=n as i64).map(VertexLabel::Int).collect();
        Hypergraph::new(k, labels, k_subsets(n, k))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &VertexLabel {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &VertexLabel) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Indices of edges containing `v`, in edge order.
    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn has_edge(&self, vertices: &[usize]) -> bool {
        let mut e = vertices.to_vec();
        e.sort_unstable();
        self.edge_set.contains(&e)
    }

    /// No edge lies entirely inside `set`.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let mut inside = vec![false; self.labels.len()];
        for &v in set {
            if v < inside.len() {
                inside[v] = true;
            }
        }
        self.edges.iter().all(|e| !e.iter().all(|&v| inside[v]))
    }

    /// Any two edges share at most one vertex.
    pub fn is_linear(&self) -> bool {
        let mut pairs = HashSet::new();
        for e in &self.edges {
            for (i, &a) in e.iter().enumerate() {
                for &b in &e[i + 1..] {
                    if !pairs.insert((a, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn label_map(&self) -> HashMap<&VertexLabel, usize> {
        self.labels.iter().enumerate().map(|(i, l)| (l, i)).collect()
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Nonnegative exact weights on the vertices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFamily(Vec<BigRational>);

impl WeightFamily {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidParameter(format!("negative weight {w}")));
        }
        Ok(WeightFamily(weights))
    }

    pub fn uniform(len: usize) -> Self {
        WeightFamily(vec![BigRational::from_integer(BigInt::from(1)); len])
    }

    /// Characteristic function of `set` on `0..len`.
    pub fn characteristic(len: usize, set: &[usize]) -> Self {
        let mut w = vec![BigRational::zero(); len];
        for &v in set {
            w[v] = BigRational::from_integer(BigInt::from(1));
        }
        WeightFamily(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, v: usize) -> &BigRational {
        &self.0[v]
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.0
    }

    pub fn total(&self) -> BigRational {
        self.0.iter().fold(BigRational::zero(), |acc, w| acc + w)
    }

    pub fn weight_of(&self, set: &[usize]) -> BigRational {
        let distinct: BTreeSet<usize> = set.iter().copied().collect();
        distinct.into_iter().fold(BigRational::zero(), |acc, v| acc + &self.0[v])
    }

    /// Scaled to total 1; `None` when the total vanishes.
    pub fn normalized(&self) -> Option<Self> {
        let total = self.total();
        if total.is_zero() {
            return None;
        }
        Some(WeightFamily(self.0.iter().map(|w| w / &total).collect()))
    }
}
