//! Breadth-first shortest-path DAGs with exact path counts.
//!
//! Path counts start in `u64`; a source whose counts overflow is recounted with
//! arbitrary precision integers. Ratios of counts are what every caller needs,
//! so [`PathCounts::ratio`] is careful not to lose precision for huge counts.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Result};
use crate::graph::{Graph, NodeId};

pub const UNREACHABLE: u32 = u32::MAX;

/// Integer type usable for shortest-path counting.
pub trait PathCount: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    /// `None` on overflow.
    fn checked_add(&self, other: &Self) -> Option<Self>;
}

impl PathCount for u64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        u64::checked_add(*self, *other)
    }
}

impl PathCount for BigUint {
    fn zero() -> Self {
        <BigUint as Zero>::zero()
    }
    fn one() -> Self {
        BigUint::from(1u32)
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
}

/// Per-node shortest path counts, in whichever width was needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathCounts {
    Small(Vec<u64>),
    Big(Vec<BigUint>),
}

impl PathCounts {
    pub fn is_zero(&self, v: NodeId) -> bool {
        match self {
            PathCounts::Small(c) => c[v] == 0,
            PathCounts::Big(c) => c[v].is_zero(),
        }
    }

    pub fn get(&self, v: NodeId) -> BigUint {
        match self {
            PathCounts::Small(c) => BigUint::from(c[v]),
            PathCounts::Big(c) => c[v].clone(),
        }
    }

    /// `count(a) / count(b)` as a float.
    pub fn ratio(&self, a: NodeId, b: NodeId) -> f64 {
        match self {
            PathCounts::Small(c) => c[a] as f64 / c[b] as f64,
            PathCounts::Big(c) => big_ratio(&c[a], &c[b]),
        }
    }
}

/// `a / b` for arbitrarily large integers, accurate to double precision.
pub fn big_ratio(a: &BigUint, b: &BigUint) -> f64 {
    let shift = a.bits().max(b.bits()).saturating_sub(64);
    let a = (a >> shift).to_f64().unwrap_or(f64::INFINITY);
    let b = (b >> shift).to_f64().unwrap_or(f64::INFINITY);
    a / b
}

/// Counts paths along the DAG implied by `dist`, visiting `order` (nondecreasing
/// distance). Predecessors of `v` are in-neighbors one level closer to the root.
/// `gate(u)` says whether paths may continue through `u`; the root always passes.
/// Returns `None` on overflow.
pub(crate) fn count_paths<C: PathCount>(
    g: &Graph,
    dist: &[u32],
    order: &[NodeId],
    mut gate: impl FnMut(NodeId) -> bool,
    counts: &mut [C],
) -> Option<()> {
    let Some((&root, rest)) = order.split_first() else {
        return Some(());
    };
    counts[root] = C::one();
    for &v in rest {
        let dv = dist[v];
        let mut acc = C::zero();
        for &u in g.in_neighbors(v) {
            if dist[u] != UNREACHABLE && dist[u] + 1 == dv && (u == root || gate(u)) {
                acc = acc.checked_add(&counts[u])?;
            }
        }
        counts[v] = acc;
    }
    Some(())
}

/// Shortest path counts over `order`, escalating to big integers on overflow.
pub(crate) fn path_counts_gated(
    g: &Graph,
    dist: &[u32],
    order: &[NodeId],
    mut gate: impl FnMut(NodeId) -> bool,
) -> PathCounts {
    let mut small = vec![0u64; g.n()];
    if count_paths(g, dist, order, &mut gate, &mut small).is_some() {
        return PathCounts::Small(small);
    }
    let mut big = vec![<BigUint as Zero>::zero(); g.n()];
    count_paths(g, dist, order, gate, &mut big).expect("big integers do not overflow");
    PathCounts::Big(big)
}

/// Reusable BFS state; resetting costs only as much as the last search touched.
#[derive(Clone, Debug)]
pub struct BfsScratch {
    dist: Vec<u32>,
    order: Vec<NodeId>,
    queue: VecDeque<NodeId>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![UNREACHABLE; n],
            order: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Searches from `s` along out-edges (`forward`) or in-edges. Stops as soon as
    /// `stop_at` is discovered; at that moment every node closer than it is settled.
    pub fn run(&mut self, g: &Graph, s: NodeId, forward: bool, stop_at: Option<NodeId>) {
        self.run_bounded(g, s, forward, stop_at, u32::MAX)
    }

    /// As [`run`](Self::run) but never discovers nodes farther than `max_depth`.
    pub fn run_bounded(
        &mut self,
        g: &Graph,
        s: NodeId,
        forward: bool,
        stop_at: Option<NodeId>,
        max_depth: u32,
    ) {
        for &v in &self.order {
            self.dist[v] = UNREACHABLE;
        }
        self.order.clear();
        self.queue.clear();
        self.dist[s] = 0;
        self.order.push(s);
        if stop_at == Some(s) {
            return;
        }
        self.queue.push_back(s);
        while let Some(v) = self.queue.pop_front() {
            let dv = self.dist[v];
            if dv >= max_depth {
                break;
            }
            let nbrs = if forward {
                g.out_neighbors(v)
            } else {
                g.in_neighbors(v)
            };
            for &w in nbrs {
                if self.dist[w] == UNREACHABLE {
                    self.dist[w] = dv + 1;
                    self.order.push(w);
                    if stop_at == Some(w) {
                        return;
                    }
                    self.queue.push_back(w);
                }
            }
        }
    }

    #[inline]
    pub fn dist(&self, v: NodeId) -> u32 {
        self.dist[v]
    }

    pub fn dists(&self) -> &[u32] {
        &self.dist
    }

    /// Discovered nodes in nondecreasing distance.
    pub fn order(&self) -> &[NodeId] {
        &self.order
    }
}

/// Result of a breadth-first search from one source.
#[derive(Clone, Debug)]
pub struct ShortestPathDag {
    pub source: NodeId,
    /// Hop distance, [`UNREACHABLE`] when there is no path.
    pub dist: Vec<u32>,
    pub sigma: PathCounts,
    pred_offsets: Vec<usize>,
    preds: Vec<NodeId>,
    /// Reachable nodes in nondecreasing distance, source first.
    pub order: Vec<NodeId>,
}

impl ShortestPathDag {
    /// Predecessors of `v` on shortest paths from the source.
    pub fn preds(&self, v: NodeId) -> &[NodeId] {
        &self.preds[self.pred_offsets[v]..self.pred_offsets[v + 1]]
    }

    pub fn is_reachable(&self, v: NodeId) -> bool {
        self.dist[v] != UNREACHABLE
    }
}

/// Shortest-path DAG of `g` rooted at `s`, following edge direction.
pub fn bfs_dag(g: &Graph, s: NodeId) -> Result<ShortestPathDag> {
    if s >= g.n() {
        return invalid(format!("source {s} out of range for n = {}", g.n()));
    }
    let mut scratch = BfsScratch::new(g.n());
    scratch.run(g, s, true, None);
    Ok(dag_from_scratch(g, s, scratch))
}

pub(crate) fn dag_from_scratch(g: &Graph, s: NodeId, scratch: BfsScratch) -> ShortestPathDag {
    let BfsScratch { dist, order, .. } = scratch;
    let sigma = path_counts_gated(g, &dist, &order, |_| true);
    let mut pred_offsets = vec![0usize; g.n() + 1];
    let mut preds = Vec::new();
    for v in 0..g.n() {
        if dist[v] != UNREACHABLE && v != s {
            preds.extend(
                g.in_neighbors(v)
                    .iter()
                    .filter(|&&u| dist[u] != UNREACHABLE && dist[u] + 1 == dist[v]),
            );
        }
        pred_offsets[v + 1] = preds.len();
    }
    ShortestPathDag {
        source: s,
        dist,
        sigma,
        pred_offsets,
        preds,
        order,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, false, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, false, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    #[test]
    fn path_distances_and_counts() {
        let d = bfs_dag(&path(4), 0).unwrap();
        assert_eq!(d.dist, vec![0, 1, 2, 3]);
        assert_eq!(d.sigma, PathCounts::Small(vec![1, 1, 1, 1]));
        assert_eq!(d.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn cycle_antipode_has_two_paths() {
        // 0-1-2 and 0-3-2
        let d = bfs_dag(&cycle(4), 0).unwrap();
        assert_eq!(d.sigma.get(2), BigUint::from(2u32));
        assert_eq!(d.preds(2), &[1, 3]);
    }

    #[test]
    fn disconnected_target() {
        let g = Graph::from_edges(2, false, []).unwrap();
        let d = bfs_dag(&g, 0).unwrap();
        assert_eq!(d.dist[1], UNREACHABLE);
        assert!(d.sigma.is_zero(1));
        assert!(d.preds(1).is_empty());
    }

    #[test]
    fn out_of_range_source() {
        assert!(bfs_dag(&path(3), 3).is_err());
    }

    #[test]
    fn overflow_escalates_to_big_integers() {
        // A chain of 70 diamonds doubles the path count at each stage: 2^70 paths.
        let stages = 70;
        let mut edges = Vec::new();
        for i in 0..stages {
            let (a, b, c, d) = (3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3);
            edges.extend([(a, b), (a, c), (b, d), (c, d)]);
        }
        let n = 3 * stages + 1;
        let g = Graph::from_edges(n, false, edges).unwrap();
        let d = bfs_dag(&g, 0).unwrap();
        assert!(matches!(d.sigma, PathCounts::Big(_)));
        assert_eq!(d.sigma.get(n - 1), BigUint::from(1u8) << 70);
        assert_eq!(d.sigma.ratio(n - 4, n - 1), 0.5);
    }

    #[test]
    fn big_ratio_precision() {
        let a = BigUint::from(3u8) << 500;
        let b = BigUint::from(4u8) << 500;
        assert_eq!(big_ratio(&a, &b), 0.75);
    }

    #[test]
    fn early_stop_settles_closer_levels() {
        let g = cycle(6);
        let mut s = BfsScratch::new(6);
        s.run(&g, 0, true, Some(3));
        assert_eq!(s.dist(3), 3);
        assert_eq!(s.dist(2), 2);
        assert_eq!(s.dist(4), 2);
        s.run(&g, 1, true, Some(2));
        assert_eq!(s.dist(0), 1);
        assert_eq!(s.dist(4), UNREACHABLE);
    }

    fn naive_dists(g: &Graph, s: NodeId) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; g.n()];
        dist[s] = 0;
        let mut frontier = vec![s];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for w in 0..g.n() {
                    if dist[w] == UNREACHABLE && g.has_edge(u, w) {
                        dist[w] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..40, any::<bool>()).prop_flat_map(|(n, directed)| {
            proptest::collection::vec((0..n, 0..n), 0..4 * n)
                .prop_map(move |e| Graph::from_edges(n, directed, e).unwrap())
        })
    }

    proptest! {
        #[test]
        fn sigma_is_sum_over_predecessors(g in arb_graph(), s in 0usize..40) {
            let s = s % g.n();
            let d = bfs_dag(&g, s).unwrap();
            prop_assert_eq!(d.sigma.get(s), BigUint::from(1u8));
            for v in 0..g.n() {
                if v == s || !d.is_reachable(v) {
                    prop_assert!(v == s || d.sigma.is_zero(v));
                    continue;
                }
                let sum: BigUint = d.preds(v).iter().map(|&u| d.sigma.get(u)).sum();
                prop_assert_eq!(sum, d.sigma.get(v));
                for &u in d.preds(v) {
                    prop_assert!(g.has_edge(u, v));
                    prop_assert_eq!(d.dist[u] + 1, d.dist[v]);
                }
            }
        }

        #[test]
        fn distances_match_naive_search(g in arb_graph(), s in 0usize..40) {
            let s = s % g.n();
            prop_assert_eq!(bfs_dag(&g, s).unwrap().dist, naive_dists(&g, s));
        }
    }
}
