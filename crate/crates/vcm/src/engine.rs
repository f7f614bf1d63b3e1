//! The connectivity-score engine: attenuated forward propagation over a
//! relocated level graph, optional intra-level exchange, and a brute-force
//! path-enumeration oracle used to cross-check the propagation.

use rayon::prelude::*;

use crate::graph::{Graph, VertexId};
use crate::level::LevelGraph;
use crate::{Error, Result};

/// Query controls: the per-level attenuation factor and the two boolean
/// switches. `level_share` turns on one unattenuated exchange round along
/// intra-level arcs before each level propagates; `input_max` makes a vertex
/// keep the maximum incoming forward contribution instead of the sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VcmParams {
    pub alpha: f64,
    pub level_share: bool,
    pub input_max: bool,
}

impl Default for VcmParams {
    fn default() -> Self {
        VcmParams {
            alpha: 1.0,
            level_share: false,
            input_max: false,
        }
    }
}

impl VcmParams {
    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and >= 0, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Per-vertex connectivity scores for one source. Entries stay in
/// `[0, 1]` whenever `alpha <= 1`; larger alphas may amplify past 1.
#[derive(Debug, Clone)]
pub struct ScoreVector {
    scores: Vec<f64>,
}

impl ScoreVector {
    /// All zeros except a unit score on the source.
    pub fn with_unit_source(n: usize, source: VertexId) -> Self {
        let mut scores = vec![0.0; n];
        scores[source.index()] = 1.0;
        ScoreVector { scores }
    }

    #[inline]
    pub fn get(&self, v: VertexId) -> f64 {
        self.scores[v.index()]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// One simultaneous exchange round along intra-level arcs of level `j`.
///
/// Pre-round values are snapshotted, so a transfer received during the round
/// is not passed on within the same round and the outcome does not depend on
/// bucket iteration order. No attenuation applies; self-loops transfer
/// nothing (their weight still sits in the divisor W).
pub fn exchange_within_level(state: &mut ScoreVector, lg: &LevelGraph<'_>, j: usize) {
    let graph = lg.graph();
    let bucket = lg.bucket(j);
    let old: Vec<f64> = bucket.iter().map(|&v| state.scores[v.index()]).collect();
    for (&v, &value) in bucket.iter().zip(&old) {
        if value == 0.0 {
            continue;
        }
        let w_total = lg.out_weight(v);
        for e in graph.out_edges(v) {
            if e.to != v && lg.level(e.to) == j as i32 {
                state.scores[e.to.index()] += e.weight / w_total * value;
            }
        }
    }
}

/// Propagates level `j` forward: every arc that climbs levels carries
/// `alpha^j * w/W` of its tail's score (`0^0 = 1`, so level 0 always feeds
/// its neighbors). Backward and intra-level arcs are skipped but their
/// weight stays in W, diminishing what does go forward. Arcs into the
/// relocated target qualify from any level.
pub fn propagate_forward(
    state: &mut ScoreVector,
    lg: &LevelGraph<'_>,
    j: usize,
    params: &VcmParams,
) {
    let graph = lg.graph();
    let attenuation = if j == 0 {
        1.0
    } else {
        params.alpha.powi(j as i32)
    };
    for &v in lg.bucket(j) {
        let value = state.scores[v.index()];
        if value == 0.0 {
            continue;
        }
        let w_total = lg.out_weight(v);
        for e in graph.out_edges(v) {
            if lg.level(e.to) > j as i32 {
                let f = attenuation * e.weight / w_total;
                let contribution = f * value;
                let slot = &mut state.scores[e.to.index()];
                if params.input_max {
                    if contribution > *slot {
                        *slot = contribution;
                    }
                } else {
                    *slot += contribution;
                }
            }
        }
    }
}

/// Connectivity score from `s` to `t`. Runs in O(V+E): one BFS to form the
/// level graph, the target moved past the deepest level, then one pass of
/// exchange (when enabled) and forward propagation per level.
pub fn vcm(graph: &Graph, s: VertexId, t: VertexId, params: &VcmParams) -> Result<f64> {
    params.validate()?;
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if s == t {
        return Ok(1.0);
    }
    let mut lg = LevelGraph::build(graph, s);
    if !lg.is_reachable(t) {
        return Ok(0.0);
    }
    lg.relocate_target(t)?;
    let mut state = ScoreVector::with_unit_source(graph.vertex_count(), s);
    for j in 0..=lg.max_level() {
        if params.level_share {
            exchange_within_level(&mut state, &lg, j);
        }
        propagate_forward(&mut state, &lg, j, params);
    }
    Ok(state.get(t))
}

/// Scores from `s` to every vertex, computed as independent single-target
/// queries (bit-identical to calling [`vcm`] per target). O(V·(V+E)).
pub fn vcm_all_targets(graph: &Graph, s: VertexId, params: &VcmParams) -> Result<ScoreVector> {
    params.validate()?;
    graph.check_vertex(s)?;
    let scores = (0..graph.vertex_count() as u32)
        .into_par_iter()
        .map(|t| vcm(graph, s, VertexId(t), params))
        .collect::<Result<Vec<f64>>>()?;
    Ok(ScoreVector { scores })
}

/// Largest graph the enumeration oracle accepts.
pub const ORACLE_VERTEX_LIMIT: usize = 12;

/// Closed-form check for `level_share = false`: enumerates every arc path
/// from `s` to `t` whose levels strictly increase in the relocated level
/// graph and combines per-path values `prod(alpha^level(v_i) * w_i/W(v_i))`
/// by sum (or max under `input_max`). Exponential, guarded to tiny graphs;
/// exists to verify the propagation engine, not to be fast.
pub fn path_sum_oracle(graph: &Graph, s: VertexId, t: VertexId, params: &VcmParams) -> Result<f64> {
    params.validate()?;
    graph.check_vertex(s)?;
    graph.check_vertex(t)?;
    if params.level_share {
        return Err(Error::InvalidParameter(
            "path oracle covers level_share = false only".into(),
        ));
    }
    if graph.vertex_count() > ORACLE_VERTEX_LIMIT {
        return Err(Error::OracleSize {
            vertices: graph.vertex_count(),
            limit: ORACLE_VERTEX_LIMIT,
        });
    }
    if s == t {
        return Ok(1.0);
    }
    let mut lg = LevelGraph::build(graph, s);
    if !lg.is_reachable(t) {
        return Ok(0.0);
    }
    lg.relocate_target(t)?;

    fn walk(
        lg: &LevelGraph<'_>,
        v: VertexId,
        t: VertexId,
        value: f64,
        params: &VcmParams,
        acc: &mut f64,
    ) {
        if v == t {
            if params.input_max {
                if value > *acc {
                    *acc = value;
                }
            } else {
                *acc += value;
            }
            return;
        }
        let graph = lg.graph();
        let level = lg.level(v);
        let attenuation = if level == 0 {
            1.0
        } else {
            params.alpha.powi(level)
        };
        let w_total = lg.out_weight(v);
        for e in graph.out_edges(v) {
            if lg.level(e.to) > level {
                let step = attenuation * e.weight / w_total;
                walk(lg, e.to, t, value * step, params, acc);
            }
        }
    }

    let mut acc = 0.0;
    walk(&lg, s, t, 1.0, params, &mut acc);
    Ok(acc)
}
