//! Immutable sparse graphs over dense node ids, plus edge-list IO.
//!
//! Node ids are always `0..n`. Graphs read from files keep the original
//! integer labels so that results can be reported in the input's id space.
//! Graphs are simple: self-loops and parallel edges are dropped at build time.

use std::collections::VecDeque;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{invalid, Error, Result};

pub type NodeId = usize;

/// Compressed adjacency: `targets[offsets[v]..offsets[v + 1]]` are the sorted neighbors of `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Csr {
    fn from_sorted_pairs(n: usize, pairs: &[(NodeId, NodeId)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in pairs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = pairs.iter().map(|&(_, v)| v).collect();
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    directed: bool,
    out: Csr,
    /// Only populated for directed graphs.
    inc: Csr,
    labels: Vec<i64>,
}

impl Graph {
    /// Builds a simple graph on `n` nodes labelled `0..n`.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        Self::from_labelled_edges((0..n as i64).collect(), directed, edges)
    }

    /// Builds a simple graph whose node `v` carries the original label `labels[v]`.
    pub fn from_labelled_edges<I>(labels: Vec<i64>, directed: bool, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let n = labels.len();
        let mut arcs = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for n = {n}"));
            }
            if u == v {
                continue;
            }
            arcs.push((u, v));
            if !directed {
                arcs.push((v, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let out = Csr::from_sorted_pairs(n, &arcs);
        let inc = if directed {
            let mut rev: Vec<_> = arcs.iter().map(|&(u, v)| (v, u)).collect();
            rev.sort_unstable();
            Csr::from_sorted_pairs(n, &rev)
        } else {
            Csr::default()
        };
        Ok(Graph {
            directed,
            out,
            inc,
            labels,
        })
    }

    pub fn empty(directed: bool) -> Self {
        Graph::from_edges(0, directed, std::iter::empty()).expect("empty graph")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges: unordered pairs for undirected graphs, arcs for directed ones.
    pub fn m(&self) -> usize {
        if self.directed {
            self.out.targets.len()
        } else {
            self.out.targets.len() / 2
        }
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    #[inline]
    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        self.out.row(v)
    }

    #[inline]
    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        if self.directed {
            self.inc.row(v)
        } else {
            self.out.row(v)
        }
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.out_neighbors(u).binary_search(&v).is_ok()
    }

    pub fn label(&self, v: NodeId) -> i64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Iterates edges once each: `u < v` pairs when undirected, every arc when directed.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.out_neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| self.directed || u < v)
                .map(move |v| (u, v))
        })
    }

    /// The undirected graph with an edge wherever `self` has an arc in either direction.
    pub fn to_undirected(&self) -> Graph {
        if !self.directed {
            return self.clone();
        }
        Graph::from_labelled_edges(self.labels.clone(), false, self.edges())
            .expect("ids already validated")
    }

    /// Neighbors ignoring direction; may repeat a node for reciprocal arcs.
    pub(crate) fn weak_neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let inc: &[NodeId] = if self.directed { self.inc.row(v) } else { &[] };
        self.out.row(v).iter().chain(inc.iter()).copied()
    }
}

/// Reads a whitespace-separated edge list. Lines starting with `#` and blank
/// lines are skipped; tokens past the second are ignored.
pub fn load_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<Graph> {
    parse_edge_list(BufReader::new(File::open(path)?), directed)
}

pub fn parse_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
    let mut raw = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let Some(tokens) = data_tokens(&line) else {
            continue;
        };
        if tokens.len() < 2 {
            return Err(Error::Parse {
                line: idx + 1,
                message: "expected two node ids".into(),
            });
        }
        raw.push((parse_int(tokens[0], idx)?, parse_int(tokens[1], idx)?));
    }
    build_relabelled(&raw, directed)
}

/// Builds a graph from edges over arbitrary integer labels, remapping them to
/// `0..n` in increasing label order.
pub fn build_relabelled(raw: &[(i64, i64)], directed: bool) -> Result<Graph> {
    let mut labels: Vec<i64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let id = |x: i64| labels.binary_search(&x).expect("label present");
    let edges: Vec<_> = raw.iter().map(|&(u, v)| (id(u), id(v))).collect();
    Graph::from_labelled_edges(labels.clone(), directed, edges)
}

fn data_tokens(line: &str) -> Option<Vec<&str>> {
    let trimmed = line.trim_start();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return None;
    }
    Some(trimmed.split_whitespace().collect())
}

fn parse_int(token: &str, idx: usize) -> Result<i64> {
    token.parse().map_err(|_| Error::Parse {
        line: idx + 1,
        message: format!("not an integer: {token:?}"),
    })
}

/// Writes `g` as an edge list in label space, preceded by `# `-prefixed header lines.
pub fn write_edge_list<W: Write>(g: &Graph, header: &[String], mut out: W) -> Result<()> {
    for line in header {
        writeln!(out, "# {line}")?;
    }
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", g.label(u), g.label(v))?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TemporalEdge {
    pub u: i64,
    pub v: i64,
    pub t: i64,
}

/// Timestamped edges in original label space, sorted by time (stable).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TemporalEdgeList {
    edges: Vec<TemporalEdge>,
}

/// How a snapshot at time `T` selects edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SnapshotMode {
    /// Every edge with `t <= T`.
    Cumulative,
    /// Only edges with `previous < t <= T`; edges absent from a window are treated as deleted.
    Windowed,
}

impl TemporalEdgeList {
    pub fn new(mut edges: Vec<TemporalEdge>) -> Self {
        edges.sort_by_key(|e| e.t);
        TemporalEdgeList { edges }
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Graph of the edges with `from < t <= until` (`from = None` means unbounded).
    pub fn snapshot(&self, from: Option<i64>, until: i64, directed: bool) -> Graph {
        let raw: Vec<_> = self
            .edges
            .iter()
            .take_while(|e| e.t <= until)
            .filter(|e| from.map_or(true, |f| e.t > f))
            .map(|e| (e.u, e.v))
            .collect();
        build_relabelled(&raw, directed).expect("relabelled ids are in range")
    }

    /// `count` snapshot times at equally spaced quantiles of the edge sequence;
    /// the last one is always the final timestamp.
    pub fn quantile_times(&self, count: usize) -> Vec<i64> {
        if self.edges.is_empty() || count == 0 {
            return Vec::new();
        }
        let len = self.edges.len();
        let mut times: Vec<i64> = (1..=count)
            .map(|i| self.edges[(i * len).div_ceil(count) - 1].t)
            .collect();
        times.dedup();
        times
    }
}

pub fn load_temporal_edge_list(path: impl AsRef<Path>) -> Result<TemporalEdgeList> {
    parse_temporal_edge_list(BufReader::new(File::open(path)?))
}

pub fn parse_temporal_edge_list<R: BufRead>(reader: R) -> Result<TemporalEdgeList> {
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let Some(tokens) = data_tokens(&line) else {
            continue;
        };
        if tokens.len() < 3 {
            return Err(Error::Parse {
                line: idx + 1,
                message: "expected \"u v t\"".into(),
            });
        }
        edges.push(TemporalEdge {
            u: parse_int(tokens[0], idx)?,
            v: parse_int(tokens[1], idx)?,
            t: parse_int(tokens[2], idx)?,
        });
    }
    Ok(TemporalEdgeList::new(edges))
}

/// Size of the largest weakly connected component once `removed` is deleted.
pub fn largest_component_size(g: &Graph, removed: &[NodeId]) -> usize {
    let mut seen = vec![false; g.n()];
    for &v in removed {
        seen[v] = true;
    }
    let mut best = 0;
    let mut queue = VecDeque::new();
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        let mut size = 0;
        while let Some(v) = queue.pop_front() {
            size += 1;
            for w in g.weak_neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        best = best.max(size);
    }
    best
}

fn sorted_intersection_len(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Number of triangles containing `v`. Directed graphs are symmetrized first.
pub fn incident_triangles(g: &Graph, v: NodeId) -> usize {
    if g.is_directed() {
        return incident_triangles(&g.to_undirected(), v);
    }
    let nv = g.out_neighbors(v);
    let twice: usize = nv
        .iter()
        .map(|&u| sorted_intersection_len(nv, g.out_neighbors(u)))
        .sum();
    twice / 2
}

/// All triangles `(a, b, c)` with `a < b < c` of the undirected view.
pub fn triangles(g: &Graph) -> Vec<[NodeId; 3]> {
    let ug;
    let g = if g.is_directed() {
        ug = g.to_undirected();
        &ug
    } else {
        g
    };
    let mut out = Vec::new();
    for a in 0..g.n() {
        let na = g.out_neighbors(a);
        for &b in na.iter().filter(|&&b| b > a) {
            let nb = g.out_neighbors(b);
            let (mut i, mut j) = (0, 0);
            while i < na.len() && j < nb.len() {
                match na[i].cmp(&nb[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        if na[i] > b {
                            out.push([a, b, na[i]]);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }
    out
}
