//! Per-query BFS level graph and target relocation.

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

use std::collections::VecDeque;

/// BFS layering of a graph from one source, the scratch structure behind a
/// connectivity query. Level -1 marks unreachable vertices. After
/// [`relocate_target`](LevelGraph::relocate_target) the target sits alone at
/// `max_level() + 1` and belongs to no bucket, so arcs into it qualify as
/// forward from every level.
pub struct LevelGraph<'g> {
    graph: &'g Graph,
    source: VertexId,
    levels: Vec<i32>,
    /// Reachable vertices per level, in canonical BFS discovery order.
    buckets: Vec<Vec<VertexId>>,
    target: Option<VertexId>,
}

impl<'g> LevelGraph<'g> {
    /// BFS over out-arcs from `s`. O(V+E).
    pub fn build(graph: &'g Graph, source: VertexId) -> Self {
        let n = graph.vertex_count();
        let mut levels = vec![-1i32; n];
        let mut buckets: Vec<Vec<VertexId>> = vec![vec![source]];
        levels[source.index()] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let next = levels[v.index()] + 1;
            for e in graph.out_edges(v) {
                if levels[e.to.index()] == -1 {
                    levels[e.to.index()] = next;
                    if buckets.len() == next as usize {
                        buckets.push(Vec::new());
                    }
                    buckets[next as usize].push(e.to);
                    queue.push_back(e.to);
                }
            }
        }
        // Adjacency is label-ranked, so FIFO discovery order is already a
        // canonical function of the labelled graph; no per-bucket sort.
        LevelGraph {
            graph,
            source,
            levels,
            buckets,
            target: None,
        }
    }

    /// Moves `t` one level past every other reachable vertex: out of its
    /// bucket, with the level cap recomputed over what remains. W is
    /// untouched. Errors if `t` is unreachable.
    pub fn relocate_target(&mut self, t: VertexId) -> Result<()> {
        let lvl = self.levels[t.index()];
        if lvl < 0 {
            return Err(Error::UnreachableTarget {
                label: self.graph.label(t).to_string(),
            });
        }
        let bucket = &mut self.buckets[lvl as usize];
        if let Some(pos) = bucket.iter().position(|&v| v == t) {
            bucket.remove(pos);
        }
        while self.buckets.len() > 1 && self.buckets.last().is_some_and(Vec::is_empty) {
            self.buckets.pop();
        }
        self.levels[t.index()] = self.buckets.len() as i32;
        self.target = Some(t);
        Ok(())
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> Option<VertexId> {
        self.target
    }

    /// BFS level of `v`; -1 if unreachable. Reflects relocation.
    #[inline]
    pub fn level(&self, v: VertexId) -> i32 {
        self.levels[v.index()]
    }

    pub fn is_reachable(&self, v: VertexId) -> bool {
        self.levels[v.index()] >= 0
    }

    /// Highest level holding a bucketed vertex (the loop bound `k`).
    pub fn max_level(&self) -> usize {
        self.buckets.len() - 1
    }

    pub fn bucket(&self, level: usize) -> &[VertexId] {
        &self.buckets[level]
    }

    /// Total out-arc weight of `v` (the attention divisor).
    #[inline]
    pub fn out_weight(&self, v: VertexId) -> f64 {
        self.graph.out_weight_total(v)
    }
}
