//! Ranking, alpha sweeps and cross-method comparison.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::baselines::{
    communicability_default_terms, escape_probability, graph_diameter, max_flow, DenseMatrix,
};
use crate::engine::{vcm_all_targets, VcmParams};
use crate::graph::{Graph, VertexId};
use crate::level::LevelGraph;
use crate::{Error, Result};

/// One ranked vertex: score plus its pre-relocation BFS level from the
/// source (-1 when unreachable).
#[derive(Debug, Clone, PartialEq)]
pub struct RankEntry {
    pub vertex: VertexId,
    pub label: String,
    pub score: f64,
    pub level: i32,
}

/// Ranking columns over an ordered list of alphas.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub alphas: Vec<f64>,
    pub columns: Vec<Vec<RankEntry>>,
}

fn rank_scores(
    graph: &Graph,
    source: VertexId,
    levels: &LevelGraph<'_>,
    scores: &[f64],
    top_k: usize,
    level_filter: Option<i32>,
) -> Vec<RankEntry> {
    let mut entries: Vec<RankEntry> = (0..graph.vertex_count() as u32)
        .map(VertexId)
        .filter(|&v| v != source)
        .map(|v| RankEntry {
            vertex: v,
            label: graph.label(v).to_string(),
            score: scores[v.index()],
            level: levels.level(v),
        })
        .filter(|e| level_filter.is_none_or(|want| e.level == want))
        .collect();
    // Score descending, then label ascending: a total, reproducible order.
    entries.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.label.cmp(&b.label)));
    entries.truncate(top_k);
    entries
}

/// Top-k connectivity ranking from `source`, optionally restricted to
/// vertices at one BFS level ("n steps away").
pub fn rank_from_source(
    graph: &Graph,
    source: VertexId,
    params: &VcmParams,
    top_k: usize,
    level_filter: Option<i32>,
) -> Result<Vec<RankEntry>> {
    if top_k < 1 {
        return Err(Error::InvalidParameter("top_k must be >= 1".into()));
    }
    let scores = vcm_all_targets(graph, source, params)?;
    let levels = LevelGraph::build(graph, source);
    Ok(rank_scores(
        graph,
        source,
        &levels,
        scores.as_slice(),
        top_k,
        level_filter,
    ))
}

/// One independent ranking per alpha, presented ranks-as-rows.
pub fn alpha_sweep(
    graph: &Graph,
    source: VertexId,
    alphas: &[f64],
    base: &VcmParams,
    top_k: usize,
    level_filter: Option<i32>,
) -> Result<SweepTable> {
    if alphas.is_empty() {
        return Err(Error::InvalidParameter("alpha list is empty".into()));
    }
    for &alpha in alphas {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "alpha must be finite and >= 0, got {alpha}"
            )));
        }
    }
    let columns = alphas
        .par_iter()
        .map(|&alpha| {
            let params = VcmParams { alpha, ..*base };
            rank_from_source(graph, source, &params, top_k, level_filter)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        alphas: alphas.to_vec(),
        columns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Vcm,
    Katz,
    Communicability,
    MaxFlow,
    Escape,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Vcm,
        Method::Katz,
        Method::Communicability,
        Method::MaxFlow,
        Method::Escape,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Vcm => "vcm",
            Method::Katz => "katz",
            Method::Communicability => "communicability",
            Method::MaxFlow => "maxflow",
            Method::Escape => "escape",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vcm" => Ok(Method::Vcm),
            "katz" => Ok(Method::Katz),
            "communicability" => Ok(Method::Communicability),
            "maxflow" => Ok(Method::MaxFlow),
            "escape" => Ok(Method::Escape),
            other => Err(Error::InvalidParameter(format!(
                "unknown method {other:?} (expected vcm, katz, communicability, maxflow, escape)"
            ))),
        }
    }
}

/// Per-method knobs for [`compare_methods`].
#[derive(Debug, Clone)]
pub struct MethodParams {
    pub vcm: VcmParams,
    pub katz_alpha: f64,
    /// Walk-length cutoff; defaults to the graph diameter.
    pub katz_max_len: Option<usize>,
    pub escape_c: f64,
}

impl Default for MethodParams {
    fn default() -> Self {
        MethodParams {
            vcm: VcmParams::default(),
            katz_alpha: 0.33,
            katz_max_len: None,
            escape_c: 0.9,
        }
    }
}

/// A method's ranking, or the reason it was unavailable (e.g. the dense
/// baselines' scale gate). One method failing does not fail the others.
#[derive(Debug)]
pub struct MethodOutcome {
    pub method: Method,
    pub outcome: Result<Vec<RankEntry>>,
}

/// Size of the top-10 intersection for a pair of successful methods.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOverlap {
    pub first: Method,
    pub second: Method,
    pub shared: usize,
}

#[derive(Debug)]
pub struct CompareReport {
    pub outcomes: Vec<MethodOutcome>,
    pub overlaps: Vec<PairOverlap>,
}

fn method_scores(
    graph: &Graph,
    source: VertexId,
    method: Method,
    params: &MethodParams,
) -> Result<Vec<f64>> {
    let n = graph.vertex_count();
    match method {
        Method::Vcm => Ok(vcm_all_targets(graph, source, &params.vcm)?.as_slice().to_vec()),
        Method::Katz => {
            let max_len = match params.katz_max_len {
                Some(len) => len,
                None => graph_diameter(graph)?.max(1),
            };
            if !params.katz_alpha.is_finite() || params.katz_alpha <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "katz alpha must be finite and > 0, got {}",
                    params.katz_alpha
                )));
            }
            // One walk-vector iteration scores every target at once,
            // equivalent to per-target katz_score calls.
            let a = DenseMatrix::from_unweighted_adjacency(graph)?;
            let mut walks = vec![0.0; n];
            walks[source.index()] = 1.0;
            let mut scores = vec![0.0; n];
            let mut factor = 1.0;
            for _ in 1..=max_len {
                walks = a.vecmat(&walks);
                factor *= params.katz_alpha;
                for (acc, w) in scores.iter_mut().zip(&walks) {
                    *acc += factor * w;
                }
            }
            Ok(scores)
        }
        Method::Communicability => {
            let terms = communicability_default_terms(graph)?;
            let a = DenseMatrix::from_unweighted_adjacency(graph)?;
            let mut scaled = vec![0.0; n];
            scaled[source.index()] = 1.0;
            let mut scores = scaled.clone();
            for l in 1..=terms {
                scaled = a.vecmat(&scaled);
                for v in &mut scaled {
                    *v /= l as f64;
                }
                for (acc, term) in scores.iter_mut().zip(&scaled) {
                    *acc += term;
                }
            }
            Ok(scores)
        }
        Method::MaxFlow => (0..n as u32)
            .into_par_iter()
            .map(|t| {
                if t == source.0 {
                    Ok(0.0)
                } else {
                    max_flow(graph, source, VertexId(t))
                }
            })
            .collect(),
        Method::Escape => (0..n as u32)
            .into_par_iter()
            .map(|t| {
                if t == source.0 {
                    Ok(0.0)
                } else {
                    escape_probability(graph, source, VertexId(t), params.escape_c)
                }
            })
            .collect(),
    }
}

/// Runs each requested method from `source` against every other vertex and
/// reports top-k rankings plus pairwise top-10 agreement.
pub fn compare_methods(
    graph: &Graph,
    source: VertexId,
    methods: &[Method],
    params: &MethodParams,
    top_k: usize,
) -> Result<CompareReport> {
    if top_k < 1 {
        return Err(Error::InvalidParameter("top_k must be >= 1".into()));
    }
    if methods.is_empty() {
        return Err(Error::InvalidParameter("no methods requested".into()));
    }
    graph.check_vertex(source)?;
    let levels = LevelGraph::build(graph, source);
    let mut outcomes = Vec::new();
    let mut top10: Vec<(Method, Vec<VertexId>)> = Vec::new();
    for &method in methods {
        let outcome = method_scores(graph, source, method, params).map(|scores| {
            let full = rank_scores(graph, source, &levels, &scores, graph.vertex_count(), None);
            top10.push((method, full.iter().take(10).map(|e| e.vertex).collect()));
            full.into_iter().take(top_k).collect::<Vec<_>>()
        });
        outcomes.push(MethodOutcome { method, outcome });
    }
    let mut overlaps = Vec::new();
    for i in 0..top10.len() {
        for j in i + 1..top10.len() {
            let (ma, la) = &top10[i];
            let (mb, lb) = &top10[j];
            let shared = la.iter().filter(|v| lb.contains(v)).count();
            overlaps.push(PairOverlap {
                first: *ma,
                second: *mb,
                shared,
            });
        }
    }
    Ok(CompareReport { outcomes, overlaps })
}

/// Number of identical leading entries of two rankings.
pub fn leading_agreement(a: &[RankEntry], b: &[RankEntry]) -> usize {
    a.iter()
        .zip(b)
        .take_while(|(x, y)| x.vertex == y.vertex)
        .count()
}
