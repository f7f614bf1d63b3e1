//! Comparison measures: truncated Katz, communicability, max-flow and
//! escape probability. Katz and communicability read the unweighted
//! adjacency (arc presence only); max-flow and escape probability use the
//! edge weights as capacities / transition mass.

use std::collections::VecDeque;

use crate::graph::{Graph, VertexId};
use crate::{Error, Result};

/// Vertex cap for the dense-matrix machinery (Katz, communicability,
/// escape probability). Larger graphs get a scale error; the connectivity
/// engine itself has no such gate.
pub const DENSE_VERTEX_LIMIT: usize = 5000;

fn check_scale(graph: &Graph) -> Result<()> {
    let n = graph.vertex_count();
    if n > DENSE_VERTEX_LIMIT {
        return Err(Error::ScaleLimit {
            vertices: n,
            limit: DENSE_VERTEX_LIMIT,
        });
    }
    Ok(())
}

/// Square row-major matrix of walk counts or transition probabilities.
#[derive(Debug, Clone)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    /// Unweighted adjacency: 1.0 wherever an arc exists.
    pub fn from_unweighted_adjacency(graph: &Graph) -> Result<Self> {
        check_scale(graph)?;
        let n = graph.vertex_count();
        let mut data = vec![0.0; n * n];
        for v in 0..n {
            for e in graph.out_edges(VertexId(v as u32)) {
                data[v * n + e.to.index()] = 1.0;
            }
        }
        Ok(DenseMatrix { n, data })
    }

    /// Row-normalized weighted adjacency; a row with no out-arcs stays zero.
    pub fn from_row_normalized(graph: &Graph) -> Result<Self> {
        check_scale(graph)?;
        let n = graph.vertex_count();
        let mut data = vec![0.0; n * n];
        for v in 0..n {
            let id = VertexId(v as u32);
            let total = graph.out_weight_total(id);
            if total > 0.0 {
                for e in graph.out_edges(id) {
                    data[v * n + e.to.index()] = e.weight / total;
                }
            }
        }
        Ok(DenseMatrix { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n + col]
    }

    /// Row-vector product `x * M`.
    pub fn vecmat(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (row, &xv) in x.iter().enumerate() {
            if xv == 0.0 {
                continue;
            }
            let base = row * self.n;
            for (col, o) in out.iter_mut().enumerate() {
                *o += xv * self.data[base + col];
            }
        }
        out
    }

    /// Matrix-vector product `M * x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (row, o) in out.iter_mut().enumerate() {
            let base = row * self.n;
            *o = x.iter().enumerate().map(|(c, &xv)| self.data[base + c] * xv).sum();
        }
        out
    }
}

/// Longest finite BFS distance over all ordered reachable pairs, ignoring
/// weights. Zero for a single vertex; infinite distances are excluded.
pub fn graph_diameter(graph: &Graph) -> Result<usize> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut diameter = 0usize;
    let mut level = vec![-1i32; n];
    let mut queue = VecDeque::new();
    for s in 0..n {
        level.fill(-1);
        level[s] = 0;
        queue.clear();
        queue.push_back(VertexId(s as u32));
        while let Some(v) = queue.pop_front() {
            let next = level[v.index()] + 1;
            for e in graph.out_edges(v) {
                if level[e.to.index()] == -1 {
                    level[e.to.index()] = next;
                    diameter = diameter.max(next as usize);
                    queue.push_back(e.to);
                }
            }
        }
    }
    Ok(diameter)
}

/// Truncated Katz index: `sum_{l=1..max_len} alpha^l * walks_l(s, t)` over
/// the unweighted adjacency, where walks may repeat vertices. Truncation
/// makes alpha >= 1 usable.
pub fn katz_score(
    graph: &Graph,
    s: VertexId,
    t: VertexId,
    alpha: f64,
    max_len: usize,
) -> Result<f64> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "katz alpha must be finite and > 0, got {alpha}"
        )));
    }
    if max_len < 1 {
        return Err(Error::InvalidParameter("katz max_len must be >= 1".into()));
    }
    let a = DenseMatrix::from_unweighted_adjacency(graph)?;
    let mut walks = vec![0.0; graph.vertex_count()];
    walks[s.index()] = 1.0;
    let mut score = 0.0;
    let mut factor = 1.0;
    for _ in 1..=max_len {
        walks = a.vecmat(&walks);
        factor *= alpha;
        score += factor * walks[t.index()];
    }
    Ok(score)
}

/// Truncated series for the `(s, t)` entry of `exp(A)` over the unweighted
/// adjacency: `sum_{l=0..terms} walks_l(s, t) / l!`.
pub fn communicability(graph: &Graph, s: VertexId, t: VertexId, terms: usize) -> Result<f64> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if terms < 1 {
        return Err(Error::InvalidParameter(
            "communicability needs terms >= 1".into(),
        ));
    }
    let a = DenseMatrix::from_unweighted_adjacency(graph)?;
    let mut scaled = vec![0.0; graph.vertex_count()];
    scaled[s.index()] = 1.0; // A^0 / 0!
    let mut total = scaled[t.index()];
    for l in 1..=terms {
        scaled = a.vecmat(&scaled);
        for v in &mut scaled {
            *v /= l as f64;
        }
        total += scaled[t.index()];
    }
    Ok(total)
}

/// Series length at which one further term is provably below 1e-12 for
/// every vertex pair, so the truncated sum is stable at that precision.
pub fn communicability_default_terms(graph: &Graph) -> Result<usize> {
    let a = DenseMatrix::from_unweighted_adjacency(graph)?;
    let n = graph.vertex_count();
    // z_l bounds every entry of A^l / l! from above (start from all ones).
    let mut z = vec![1.0; n];
    let mut l = 0usize;
    loop {
        l += 1;
        z = a.vecmat(&z);
        for v in &mut z {
            *v /= l as f64;
        }
        let peak = z.iter().cloned().fold(0.0, f64::max);
        // Past l+1 >= 2n every step at least halves the bound, so the whole
        // tail stays under twice the current peak.
        if l + 1 >= 2 * n && peak < 0.5e-12 {
            return Ok(l);
        }
        if l > 200_000 {
            return Err(Error::InvalidParameter(
                "communicability series failed to converge".into(),
            ));
        }
    }
}

const FLOW_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct FlowArc {
    to: u32,
    capacity: f64,
    flow: f64,
}

/// Residual network with paired forward/reverse arcs for augmenting-path
/// search. Capacities are the edge weights.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    arcs: Vec<FlowArc>,
    adjacency: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn from_graph(graph: &Graph) -> Self {
        let n = graph.vertex_count();
        let mut net = FlowNetwork {
            arcs: Vec::new(),
            adjacency: vec![Vec::new(); n],
        };
        for v in 0..n {
            for e in graph.out_edges(VertexId(v as u32)) {
                net.add_arc(v as u32, e.to.0, e.weight);
            }
        }
        net
    }

    fn add_arc(&mut self, from: u32, to: u32, capacity: f64) {
        let fwd = self.arcs.len();
        self.arcs.push(FlowArc { to, capacity, flow: 0.0 });
        self.adjacency[from as usize].push(fwd);
        self.arcs.push(FlowArc { to: from, capacity: 0.0, flow: 0.0 });
        self.adjacency[to as usize].push(fwd + 1);
    }

    #[inline]
    fn residual(&self, arc: usize) -> f64 {
        self.arcs[arc].capacity - self.arcs[arc].flow
    }

    fn bfs_levels(&self, s: usize, t: usize, level: &mut [i32]) -> bool {
        level.fill(-1);
        level[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            for &arc in &self.adjacency[v] {
                let to = self.arcs[arc].to as usize;
                if self.residual(arc) > FLOW_EPS && level[to] == -1 {
                    level[to] = level[v] + 1;
                    queue.push_back(to);
                }
            }
        }
        level[t] != -1
    }

    fn push(&mut self, v: usize, t: usize, limit: f64, level: &[i32], cursor: &mut [usize]) -> f64 {
        if v == t {
            return limit;
        }
        while cursor[v] < self.adjacency[v].len() {
            let arc = self.adjacency[v][cursor[v]];
            let to = self.arcs[arc].to as usize;
            let res = self.residual(arc);
            if res > FLOW_EPS && level[to] == level[v] + 1 {
                let pushed = self.push(to, t, limit.min(res), level, cursor);
                if pushed > 0.0 {
                    self.arcs[arc].flow += pushed;
                    self.arcs[arc ^ 1].flow -= pushed;
                    return pushed;
                }
            }
            cursor[v] += 1;
        }
        0.0
    }

    /// Dinic: repeat level-graph phases of blocking augmentation.
    pub fn max_flow(&mut self, s: usize, t: usize) -> f64 {
        let n = self.adjacency.len();
        let mut total = 0.0;
        let mut level = vec![-1i32; n];
        while self.bfs_levels(s, t, &mut level) {
            let mut cursor = vec![0usize; n];
            loop {
                let pushed = self.push(s, t, f64::INFINITY, &level, &mut cursor);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}

/// Maximum s->t flow with arc capacities equal to edge weights. Undirected
/// builds already carry both arc directions.
pub fn max_flow(graph: &Graph, s: VertexId, t: VertexId) -> Result<f64> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if s == t {
        return Err(Error::IdenticalEndpoints);
    }
    let mut net = FlowNetwork::from_graph(graph);
    Ok(net.max_flow(s.index(), t.index()))
}

/// Probability that a decaying random walk from `s` reaches `t` before
/// returning to `s` or dying. Each step survives with probability `c` and
/// then moves by the row-normalized weights; dead ends absorb.
///
/// Solves `h(v) = c * sum_u P(v,u) h(u)` with `h(t) = 1`, `h(s) = 0` by
/// fixed-point iteration (a contraction for c < 1) and returns
/// `c * sum_u P(s,u) h(u)`.
pub fn escape_probability(graph: &Graph, s: VertexId, t: VertexId, c: f64) -> Result<f64> {
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if s == t {
        return Err(Error::IdenticalEndpoints);
    }
    if !c.is_finite() || c <= 0.0 || c > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "escape probability c must lie in (0, 1], got {c}"
        )));
    }
    let p = DenseMatrix::from_row_normalized(graph)?;
    let n = graph.vertex_count();
    let mut h = vec![0.0; n];
    h[t.index()] = 1.0;
    let mut next = vec![0.0; n];
    for _ in 0..200_000 {
        let mut delta = 0.0f64;
        for v in 0..n {
            let value = if v == t.index() {
                1.0
            } else if v == s.index() {
                0.0
            } else {
                let mut acc = 0.0;
                let base = v * n;
                for (u, &hu) in h.iter().enumerate() {
                    let pvu = p.data[base + u];
                    if pvu != 0.0 {
                        acc += pvu * hu;
                    }
                }
                c * acc
            };
            delta = delta.max((value - h[v]).abs());
            next[v] = value;
        }
        std::mem::swap(&mut h, &mut next);
        if delta < 1e-15 {
            break;
        }
    }
    let mut ep = 0.0;
    let base = s.index() * n;
    for (u, &hu) in h.iter().enumerate() {
        ep += p.data[base + u] * hu;
    }
    Ok(c * ep)
}
