#![allow(dead_code)]

use std::path::PathBuf;

use hedge::{Graph, NodeId};
use rand::seq::SliceRandom;
use rand::Rng;

/// G(n, p) with `p` chosen for a target mean out-degree; directed on request.
pub fn random_graph<R: Rng>(n: usize, mean_degree: f64, directed: bool, rng: &mut R) -> Graph {
    let p = (mean_degree / (n as f64 - 1.0)).min(1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u == v || (!directed && v < u) {
                continue;
            }
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, directed, edges).unwrap()
}

/// Random subset of `size` distinct nodes.
pub fn random_set<R: Rng>(n: usize, size: usize, rng: &mut R) -> Vec<NodeId> {
    let mut all: Vec<NodeId> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size.min(n));
    all.sort_unstable();
    all
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, false, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, false, (1..n).map(|v| (v - 1, v))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, false, (1..=leaves).map(|v| (0, v))).unwrap()
}

/// Location of an optional public dataset: `$HEDGE_DATA_DIR/<name>` or `<workspace>/data/<name>`.
pub fn dataset(names: &[&str]) -> Option<PathBuf> {
    let dirs = std::env::var_os("HEDGE_DATA_DIR")
        .map(PathBuf::from)
        .into_iter()
        .chain(std::iter::once(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")));
    dirs.flat_map(|d| names.iter().map(move |n| d.join(n)))
        .find(|p| p.is_file())
}
