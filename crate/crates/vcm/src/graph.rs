//! Immutable weighted directed graph with a string-label table.
//!
//! Vertices are dense indices assigned in first-appearance order of the
//! input edge list, so rankings are reproducible from a given file. All
//! internal iteration orders (adjacency, aggregation) are canonicalized on
//! vertex *labels*, which makes every score computed downstream invariant
//! to permutations of the input lines, bit for bit.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// Dense vertex index, valid only for the graph that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// One out-arc. Weight is always finite and positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub to: VertexId,
    pub weight: f64,
}

#[derive(Debug, Clone)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
    /// CSR out-adjacency: arcs of vertex v live in
    /// `edges[offsets[v]..offsets[v+1]]`, sorted by target label rank.
    offsets: Vec<u32>,
    edges: Vec<Edge>,
    /// Total out-arc weight per vertex, self-loops and all.
    out_weight: Vec<f64>,
    /// Rank of each vertex's label in lexicographic order.
    label_rank: Vec<u32>,
    undirected: bool,
}

/// Builds a graph from `(source, target, weight)` triples.
///
/// Parallel arcs with the same ordered endpoints are merged by summing
/// weights. With `undirected` set, each input edge is materialized as two
/// arcs carrying the full weight; self-loops become a single arc either
/// way. Weights must be finite and positive.
pub fn build_graph<S: AsRef<str>>(edges: &[(S, S, f64)], undirected: bool) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, VertexId> = HashMap::new();
    let mut intern = |label: &str| -> VertexId {
        if let Some(&id) = index.get(label) {
            return id;
        }
        let id = VertexId(labels.len() as u32);
        labels.push(label.to_string());
        index.insert(label.to_string(), id);
        id
    };

    let mut arcs: HashMap<(u32, u32), Vec<f64>> = HashMap::new();
    for (i, (src, dst, weight)) in edges.iter().enumerate() {
        let line = i + 1;
        let (src, dst, weight) = (src.as_ref(), dst.as_ref(), *weight);
        if src.is_empty() || dst.is_empty() {
            return Err(Error::EmptyLabel { line });
        }
        if !weight.is_finite() || weight <= 0.0 {
            return Err(Error::InvalidWeight {
                line,
                src: src.to_string(),
                dst: dst.to_string(),
                weight,
            });
        }
        let s = intern(src);
        let t = intern(dst);
        arcs.entry((s.0, t.0)).or_default().push(weight);
        if undirected && s != t {
            arcs.entry((t.0, s.0)).or_default().push(weight);
        }
    }

    let n = labels.len();
    let mut rank_order: Vec<u32> = (0..n as u32).collect();
    rank_order.sort_by(|&a, &b| labels[a as usize].cmp(&labels[b as usize]));
    let mut label_rank = vec![0u32; n];
    for (rank, &v) in rank_order.iter().enumerate() {
        label_rank[v as usize] = rank as u32;
    }

    let mut flat: Vec<(u32, Edge)> = arcs
        .into_iter()
        .map(|((s, t), mut weights)| {
            // Canonical summation order keeps aggregation independent of
            // input line order down to the last bit.
            weights.sort_by(f64::total_cmp);
            (
                s,
                Edge {
                    to: VertexId(t),
                    weight: weights.iter().sum(),
                },
            )
        })
        .collect();
    flat.sort_by_key(|(s, e)| (*s, label_rank[e.to.index()]));
    let mut offsets = vec![0u32; n + 1];
    for (s, _) in &flat {
        offsets[*s as usize + 1] += 1;
    }
    for v in 0..n {
        offsets[v + 1] += offsets[v];
    }
    let edges: Vec<Edge> = flat.into_iter().map(|(_, e)| e).collect();
    let out_weight = (0..n)
        .map(|v| {
            edges[offsets[v] as usize..offsets[v + 1] as usize]
                .iter()
                .map(|e| e.weight)
                .sum()
        })
        .collect();

    Ok(Graph {
        labels,
        index,
        offsets,
        edges,
        out_weight,
        label_rank,
        undirected,
    })
}

impl Graph {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_undirected(&self) -> bool {
        self.undirected
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Lexicographic rank of `v`'s label; the canonical iteration key.
    #[inline]
    pub fn label_rank(&self, v: VertexId) -> u32 {
        self.label_rank[v.index()]
    }

    pub fn resolve_label(&self, label: &str) -> Result<VertexId> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    #[inline]
    pub fn out_edges(&self, v: VertexId) -> &[Edge] {
        &self.edges[self.offsets[v.index()] as usize..self.offsets[v.index() + 1] as usize]
    }

    /// Total weight over all out-arcs of `v`, including self-loops and arcs
    /// that point backwards or sideways in any level graph. Zero for a sink.
    #[inline]
    pub fn out_weight_total(&self, v: VertexId) -> f64 {
        self.out_weight[v.index()]
    }

    /// Weight of the arc `s -> t`, if present.
    pub fn arc_weight(&self, s: VertexId, t: VertexId) -> Option<f64> {
        self.out_edges(s).iter().find(|e| e.to == t).map(|e| e.weight)
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() < self.labels.len() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                index: v.0,
                count: self.labels.len(),
            })
        }
    }

    /// All arcs as `(source, target, weight)` label triples, canonically
    /// sorted.
    pub fn arcs_by_label(&self) -> Vec<(String, String, f64)> {
        let mut arcs: Vec<(String, String, f64)> = (0..self.vertex_count())
            .flat_map(|s| {
                self.out_edges(VertexId(s as u32))
                    .iter()
                    .map(move |e| (self.labels[s].clone(), self.labels[e.to.index()].clone(), e.weight))
            })
            .collect();
        arcs.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        arcs
    }
}
