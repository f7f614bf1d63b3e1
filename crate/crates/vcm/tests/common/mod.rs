//! Shared fixtures and generators for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy and uses a subset

use std::collections::HashMap;
use std::path::Path;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vcm::graph::{build_graph, Graph, VertexId};
use vcm::ingest::load_edge_list;

pub fn lesmis_path() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/lesmis.wel"))
}

pub fn lesmis() -> Graph {
    load_edge_list(lesmis_path(), true).expect("vendored fixture loads")
}

/// Three-letter table abbreviation -> full vertex label.
pub fn abbreviations() -> HashMap<String, String> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/lesmis_abbrev.tsv");
    let text = std::fs::read_to_string(path).expect("abbreviation mapping loads");
    text.lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (short, full) = l.split_once('\t').expect("two columns");
            (short.to_string(), full.to_string())
        })
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random directed edges over vertices v0..v{n-1}: each ordered pair gets
/// an arc with probability `edge_prob`, weight uniform in `[w_min, w_max)`.
/// Isolated vertices never appear in the output; a lone fallback edge keeps
/// the list non-empty.
pub fn random_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    edge_prob: f64,
    w_min: f64,
    w_max: f64,
) -> Vec<(String, String, f64)> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen::<f64>() < edge_prob {
                edges.push((
                    format!("v{i}"),
                    format!("v{j}"),
                    rng.gen_range(w_min..w_max),
                ));
            }
        }
    }
    if edges.is_empty() {
        edges.push(("v0".into(), format!("v{}", n.max(2) - 1), w_min));
    }
    edges
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, edge_prob: f64) -> Graph {
    let edges = random_edges(rng, n, edge_prob, 0.1, 10.0);
    build_graph(&edges, false).expect("random edges are valid")
}

/// Independent BFS distances by |V| rounds of relaxation, for checking the
/// level graph without touching its BFS.
pub fn brute_force_levels(graph: &Graph, s: VertexId) -> Vec<i32> {
    let n = graph.vertex_count();
    let mut dist = vec![i32::MAX; n];
    dist[s.index()] = 0;
    for _ in 0..n {
        let mut changed = false;
        for v in 0..n {
            if dist[v] == i32::MAX {
                continue;
            }
            for e in graph.out_edges(VertexId(v as u32)) {
                if dist[v] + 1 < dist[e.to.index()] {
                    dist[e.to.index()] = dist[v] + 1;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist.into_iter()
        .map(|d| if d == i32::MAX { -1 } else { d })
        .collect()
}
