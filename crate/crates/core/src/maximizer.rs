//! Pooled greedy maximization.
//!
//! Draw `q` hyper-edges, then pick `k` nodes greedily by how many
//! not-yet-covered hyper-edges they hit. The coverage fraction of the chosen set,
//! scaled by `α`, estimates its centrality.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, NodeId};
use crate::sampling::{HyperEdge, Sampler, SamplerSpec};
use crate::util::seeded_rng;

/// Hyper-edges plus the node-to-edge incidence index.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperEdgePool {
    n: usize,
    alpha: f64,
    edges: Vec<HyperEdge>,
    inc_offsets: Vec<usize>,
    incidence: Vec<usize>,
}

impl HyperEdgePool {
    pub fn from_edges(n: usize, alpha: f64, edges: Vec<HyperEdge>) -> Result<Self> {
        let mut inc_offsets = vec![0usize; n + 1];
        for h in &edges {
            for &v in h.nodes() {
                if v >= n {
                    return invalid(format!("hyper-edge node {v} out of range for n = {n}"));
                }
                inc_offsets[v + 1] += 1;
            }
        }
        for i in 0..n {
            inc_offsets[i + 1] += inc_offsets[i];
        }
        let mut fill = inc_offsets.clone();
        let mut incidence = vec![0usize; inc_offsets[n]];
        for (i, h) in edges.iter().enumerate() {
            for &v in h.nodes() {
                incidence[fill[v]] = i;
                fill[v] += 1;
            }
        }
        Ok(HyperEdgePool {
            n,
            alpha,
            edges,
            inc_offsets,
            incidence,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Indices of the edges containing `v`, ascending.
    pub fn incident(&self, v: NodeId) -> &[usize] {
        &self.incidence[self.inc_offsets[v]..self.inc_offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.inc_offsets[v + 1] - self.inc_offsets[v]
    }

    /// Number of edges meeting `set`.
    pub fn covered_by(&self, set: &[NodeId]) -> usize {
        let mut hit = vec![false; self.edges.len()];
        for &v in set {
            for &e in self.incident(v) {
                hit[e] = true;
            }
        }
        hit.iter().filter(|&&h| h).count()
    }

    /// One line per edge, node ids separated by spaces; empty edges are empty lines.
    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        for h in &self.edges {
            let line: Vec<String> = h.nodes().iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(reader: R, n: usize, alpha: f64) -> Result<Self> {
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if line.starts_with('#') {
                continue;
            }
            let nodes = line
                .split_whitespace()
                .map(|t| {
                    t.parse().map_err(|_| Error::Parse {
                        line: idx + 1,
                        message: format!("not a node id: {t:?}"),
                    })
                })
                .collect::<Result<Vec<NodeId>>>()?;
            edges.push(HyperEdge::new(nodes));
        }
        Self::from_edges(n, alpha, edges)
    }
}

/// Draws `q` independent hyper-edges from one random stream.
pub fn build_pool<R: Rng + ?Sized>(
    g: &Graph,
    spec: SamplerSpec,
    q: usize,
    rng: &mut R,
) -> Result<HyperEdgePool> {
    if q == 0 {
        return invalid("sample count must be positive");
    }
    let mut sampler = Sampler::new(g, spec)?;
    let edges = (0..q).map(|_| sampler.draw(rng)).collect();
    HyperEdgePool::from_edges(g.n(), spec.alpha(g), edges)
}

/// Draws `q` hyper-edges on `workers` threads. Worker `i` uses stream `i` of
/// `seed` and the pool is concatenated in worker order, so the result depends on
/// `(seed, workers)` only.
pub fn build_pool_parallel(
    g: &Graph,
    spec: SamplerSpec,
    q: usize,
    seed: u64,
    workers: usize,
) -> Result<HyperEdgePool> {
    if q == 0 {
        return invalid("sample count must be positive");
    }
    if workers == 0 {
        return invalid("worker count must be positive");
    }
    spec.validate(g)?;
    let chunks: Vec<Vec<HyperEdge>> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let share = q / workers + usize::from(w < q % workers);
            let mut rng = seeded_rng(seed, w as u64);
            let mut sampler = Sampler::new(g, spec).expect("validated");
            (0..share).map(|_| sampler.draw(&mut rng)).collect()
        })
        .collect();
    HyperEdgePool::from_edges(g.n(), spec.alpha(g), chunks.concat())
}

/// Outcome of a greedy run over a pool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    /// Pick order.
    pub selected: Vec<NodeId>,
    /// Newly covered edges per round.
    pub marginal_degrees: Vec<usize>,
    /// `α · covered / |H|` after each round.
    pub estimated_centrality: Vec<f64>,
    pub sample_count: usize,
    pub alpha: f64,
    pub wall_time: f64,
}

impl RunResult {
    /// Per-round estimates divided by `α`.
    pub fn scaled_centrality(&self) -> Vec<f64> {
        self.estimated_centrality
            .iter()
            .map(|c| if self.alpha > 0.0 { c / self.alpha } else { 0.0 })
            .collect()
    }

    pub fn final_estimate(&self) -> f64 {
        self.estimated_centrality.last().copied().unwrap_or(0.0)
    }
}

/// Greedy maximum coverage with lazy re-evaluation.
///
/// Each round takes the node covering the most live edges, smallest id on ties.
/// Heap keys are upper bounds on current degrees, so the first popped node whose
/// key is up to date is the exact argmax.
pub fn greedy_cover(pool: &HyperEdgePool, k: usize) -> Result<RunResult> {
    let start = Instant::now();
    let n = pool.n();
    if k == 0 {
        return invalid("k must be positive");
    }
    if k > n {
        return invalid(format!("k = {k} exceeds node count {n}"));
    }
    let mut alive = vec![true; pool.len()];
    let mut heap: BinaryHeap<(usize, Reverse<NodeId>)> =
        (0..n).map(|v| (pool.degree(v), Reverse(v))).collect();
    let mut taken = vec![false; n];
    let mut selected = Vec::with_capacity(k);
    let mut marginal_degrees = Vec::with_capacity(k);
    let mut estimated_centrality = Vec::with_capacity(k);
    let mut covered = 0usize;
    let live_degree = |v: NodeId, alive: &[bool]| pool.incident(v).iter().filter(|&&e| alive[e]).count();

    while selected.len() < k {
        let (key, Reverse(v)) = heap.pop().expect("k <= n keeps the heap nonempty");
        if taken[v] {
            continue;
        }
        let current = live_degree(v, &alive);
        if current < key {
            heap.push((current, Reverse(v)));
            continue;
        }
        taken[v] = true;
        for &e in pool.incident(v) {
            alive[e] = false;
        }
        covered += current;
        selected.push(v);
        marginal_degrees.push(current);
        estimated_centrality.push(pool.alpha() * covered as f64 / pool.len().max(1) as f64);
    }
    Ok(RunResult {
        selected,
        marginal_degrees,
        estimated_centrality,
        sample_count: pool.len(),
        alpha: pool.alpha(),
        wall_time: start.elapsed().as_secs_f64(),
    })
}

/// `α · |{h : h ∩ S ≠ ∅}| / |H|`.
pub fn estimate_centrality(pool: &HyperEdgePool, set: &[NodeId], alpha: f64) -> Result<f64> {
    if pool.is_empty() {
        return invalid("empty pool");
    }
    if let Some(&v) = set.iter().find(|&&v| v >= pool.n()) {
        return invalid(format!("node {v} out of range"));
    }
    Ok(alpha * pool.covered_by(set) as f64 / pool.len() as f64)
}

/// `ceil(3(ℓ + k) ln n / (ε² · maxk_scaled))`: hyper-edges needed so that every
/// set of size `k` is estimated within `ε · MAX_k`, where `maxk_scaled = MAX_k / α`.
pub fn sample_budget(n: usize, k: usize, eps: f64, ell: usize, maxk_scaled: f64) -> Result<usize> {
    if n < 2 {
        return invalid("budget needs n >= 2");
    }
    if !(eps > 0.0) {
        return invalid(format!("eps must be positive, got {eps}"));
    }
    if !(maxk_scaled > 0.0 && maxk_scaled <= 1.0) {
        return invalid(format!("maxk_scaled must lie in (0, 1], got {maxk_scaled}"));
    }
    let q = 3.0 * (ell + k) as f64 * (n as f64).ln() / (eps * eps * maxk_scaled);
    Ok(q.ceil() as usize)
}

/// Named sample-count presets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case")]
pub enum Budget {
    /// `q(G, ε/2)`, the count that carries the approximation guarantee.
    Theory { ell: usize, maxk_scaled: f64 },
    /// `k ln(n) / ε²`.
    PaperExp,
    /// `2 ln(2n³) / ε²`, the count used by the competing uniform-coverage method.
    EqualYalg,
    Explicit { count: usize },
}

impl Budget {
    pub fn samples(&self, n: usize, k: usize, eps: f64) -> Result<usize> {
        if !(eps > 0.0) && !matches!(self, Budget::Explicit { .. }) {
            return invalid(format!("eps must be positive, got {eps}"));
        }
        let nf = n as f64;
        let q = match *self {
            Budget::Theory { ell, maxk_scaled } => {
                return sample_budget(n, k, eps / 2.0, ell, maxk_scaled)
            }
            Budget::PaperExp => k as f64 * nf.ln() / (eps * eps),
            Budget::EqualYalg => 2.0 * (2.0 * nf.powi(3)).ln() / (eps * eps),
            Budget::Explicit { count } => return Ok(count),
        };
        Ok((q.ceil() as usize).max(1))
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Theory { .. } => f.write_str("theory"),
            Budget::PaperExp => f.write_str("paper-exp"),
            Budget::EqualYalg => f.write_str("equal-yalg"),
            Budget::Explicit { count } => write!(f, "explicit:{count}"),
        }
    }
}

impl FromStr for Budget {
    type Err = Error;

    /// `theory` (ℓ = 1, maxk_scaled = 1), `paper-exp`, `equal-yalg` or `explicit:N`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theory" => Ok(Budget::Theory {
                ell: 1,
                maxk_scaled: 1.0,
            }),
            "paper-exp" => Ok(Budget::PaperExp),
            "equal-yalg" => Ok(Budget::EqualYalg),
            _ => s
                .strip_prefix("explicit:")
                .and_then(|c| c.parse().ok())
                .filter(|&c| c > 0)
                .map(|count| Budget::Explicit { count })
                .ok_or_else(|| Error::InvalidArgument(format!("bad budget {s:?}"))),
        }
    }
}

/// Sample `budget` hyper-edges and pick `k` nodes greedily.
pub fn hedge_with_budget<R: Rng + ?Sized>(
    g: &Graph,
    spec: SamplerSpec,
    k: usize,
    budget: Budget,
    eps: f64,
    rng: &mut R,
) -> Result<RunResult> {
    let start = Instant::now();
    let q = budget.samples(g.n(), k, eps)?;
    let pool = build_pool(g, spec, q, rng)?;
    let mut result = greedy_cover(&pool, k)?;
    result.wall_time = start.elapsed().as_secs_f64();
    Ok(result)
}

/// The guaranteed variant: `q(G, ε/2)` samples, then greedy.
pub fn hedge<R: Rng + ?Sized>(
    g: &Graph,
    spec: SamplerSpec,
    k: usize,
    eps: f64,
    ell: usize,
    maxk_scaled: f64,
    rng: &mut R,
) -> Result<RunResult> {
    hedge_with_budget(g, spec, k, Budget::Theory { ell, maxk_scaled }, eps, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pool(n: usize, edges: &[&[NodeId]], alpha: f64) -> HyperEdgePool {
        let edges = edges.iter().map(|e| HyperEdge::new(e.to_vec())).collect();
        HyperEdgePool::from_edges(n, alpha, edges).unwrap()
    }

    #[test]
    fn greedy_examples() {
        let p = pool(4, &[&[1, 2], &[2, 3], &[3]], 1.0);
        let r = greedy_cover(&p, 1).unwrap();
        assert_eq!(r.selected, vec![2]);
        assert_eq!(r.marginal_degrees, vec![2]);

        let p = pool(2, &[&[1], &[1], &[1]], 1.0);
        let r = greedy_cover(&p, 2).unwrap();
        assert_eq!(r.selected, vec![1, 0]);
        assert_eq!(r.marginal_degrees, vec![3, 0]);

        let p = pool(3, &[&[], &[]], 6.0);
        let r = greedy_cover(&p, 1).unwrap();
        assert_eq!(r.selected, vec![0]);
        assert_eq!(r.estimated_centrality, vec![0.0]);
    }

    #[test]
    fn greedy_argument_errors() {
        let p = pool(2, &[&[0]], 1.0);
        assert!(greedy_cover(&p, 3).is_err());
        assert!(greedy_cover(&p, 0).is_err());
    }

    #[test]
    fn estimate_examples() {
        let p = pool(3, &[&[1], &[2]], 6.0);
        assert_eq!(estimate_centrality(&p, &[1], 6.0).unwrap(), 3.0);
        assert_eq!(estimate_centrality(&p, &[], 6.0).unwrap(), 0.0);
        let p = pool(3, &[&[1], &[], &[0, 2], &[]], 6.0);
        assert_eq!(estimate_centrality(&p, &[0, 1, 2], 6.0).unwrap(), 3.0);
        let empty = pool(3, &[], 6.0);
        assert!(estimate_centrality(&empty, &[1], 6.0).is_err());
    }

    #[test]
    fn budget_formula() {
        // ceil(3 * 6 * ln 100 / 0.01) = ceil(8289.3)
        assert_eq!(sample_budget(100, 5, 0.1, 1, 1.0).unwrap(), 8290);
        assert!(sample_budget(100, 5, 0.0, 1, 1.0).is_err());
        assert!(sample_budget(100, 5, 0.1, 1, 0.0).is_err());
        assert!(sample_budget(100, 5, 0.1, 1, 1.5).is_err());
        // Halving maxk_scaled doubles the budget (up to rounding).
        let a = sample_budget(1000, 3, 0.2, 1, 1.0).unwrap();
        let b = sample_budget(1000, 3, 0.2, 1, 0.5).unwrap();
        assert!((b as i64 - 2 * a as i64).abs() <= 2);
    }

    #[test]
    fn budget_presets() {
        assert_eq!(Budget::PaperExp.samples(5242, 10, 0.1).unwrap(), 8565);
        assert_eq!(Budget::EqualYalg.samples(5242, 10, 0.1).unwrap(), 5278);
        let theory = "theory".parse::<Budget>().unwrap();
        assert_eq!(
            theory.samples(100, 5, 0.2).unwrap(),
            sample_budget(100, 5, 0.1, 1, 1.0).unwrap()
        );
        assert_eq!(
            "explicit:17".parse::<Budget>().unwrap().samples(9, 1, 0.1).unwrap(),
            17
        );
        assert!("explicit:0".parse::<Budget>().is_err());
        assert!("fast".parse::<Budget>().is_err());
    }

    #[test]
    fn pool_dump_round_trip() {
        let p = pool(5, &[&[1, 2], &[], &[4], &[]], 20.0);
        let mut buf = Vec::new();
        p.write_to(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "1 2\n\n4\n\n");
        assert_eq!(HyperEdgePool::read_from(&buf[..], 5, 20.0).unwrap(), p);
        let with_header = [b"# config: {}\n".as_slice(), &buf].concat();
        assert_eq!(HyperEdgePool::read_from(&with_header[..], 5, 20.0).unwrap(), p);
    }

    #[test]
    fn pool_sizes_and_determinism() {
        let g = Graph::from_edges(4, false, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut rng = seeded_rng(1, 0);
        let p = build_pool(&g, SamplerSpec::Betweenness, 3, &mut rng).unwrap();
        assert_eq!(p.len(), 3);
        let a = build_pool_parallel(&g, SamplerSpec::Betweenness, 101, 5, 3).unwrap();
        let b = build_pool_parallel(&g, SamplerSpec::Betweenness, 101, 5, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 101);
        let single = build_pool_parallel(&g, SamplerSpec::Betweenness, 50, 5, 1).unwrap();
        let mut rng = seeded_rng(5, 0);
        assert_eq!(single, build_pool(&g, SamplerSpec::Betweenness, 50, &mut rng).unwrap());

        let iso = Graph::from_edges(2, false, []).unwrap();
        let p = build_pool(&iso, SamplerSpec::Betweenness, 10, &mut rng).unwrap();
        assert!(p.edges().iter().all(HyperEdge::is_empty));
        assert!(build_pool(&iso, SamplerSpec::Betweenness, 0, &mut rng).is_err());
    }

    #[test]
    fn hedge_on_small_graphs() {
        let mut rng = seeded_rng(2, 0);
        let k5 = Graph::from_edges(5, false, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        let r = hedge(&k5, SamplerSpec::Betweenness, 2, 0.3, 1, 1.0, &mut rng).unwrap();
        assert_eq!(r.final_estimate(), 0.0);

        let p3 = Graph::from_edges(3, false, [(0, 1), (1, 2)]).unwrap();
        let r = hedge_with_budget(
            &p3,
            SamplerSpec::Betweenness,
            1,
            Budget::Explicit { count: 60_000 },
            0.1,
            &mut rng,
        )
        .unwrap();
        assert_eq!(r.selected, vec![1]);
        let scaled = r.scaled_centrality()[0];
        let sd = ((1.0 / 3.0) * (2.0 / 3.0) / 60_000f64).sqrt();
        assert!((scaled - 2.0 / 6.0).abs() < 4.0 * sd, "{scaled}");
    }

    fn naive_greedy(pool: &HyperEdgePool, k: usize) -> Vec<NodeId> {
        let mut alive = vec![true; pool.len()];
        let mut taken = vec![false; pool.n()];
        let mut out = Vec::new();
        for _ in 0..k {
            let mut best: Option<(usize, NodeId)> = None;
            for v in (0..pool.n()).filter(|&v| !taken[v]) {
                let d = (0..pool.len())
                    .filter(|&e| alive[e] && pool.edges()[e].contains(v))
                    .count();
                if best.map_or(true, |(bd, _)| d > bd) {
                    best = Some((d, v));
                }
            }
            let (_, v) = best.unwrap();
            taken[v] = true;
            for e in 0..pool.len() {
                if pool.edges()[e].contains(v) {
                    alive[e] = false;
                }
            }
            out.push(v);
        }
        out
    }

    fn best_coverage(pool: &HyperEdgePool, k: usize) -> usize {
        fn rec(pool: &HyperEdgePool, start: NodeId, left: usize, chosen: &mut Vec<NodeId>) -> usize {
            let mut best = pool.covered_by(chosen);
            if left == 0 {
                return best;
            }
            for v in start..pool.n() {
                chosen.push(v);
                best = best.max(rec(pool, v + 1, left - 1, chosen));
                chosen.pop();
            }
            best
        }
        rec(pool, 0, k, &mut Vec::new())
    }

    fn arb_pool() -> impl Strategy<Value = HyperEdgePool> {
        (2usize..15).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0..n, 0..5), 1..40).prop_map(
                move |edges| {
                    let edges = edges.into_iter().map(HyperEdge::new).collect();
                    HyperEdgePool::from_edges(n, 1.0, edges).unwrap()
                },
            )
        })
    }

    proptest! {
        #[test]
        fn lazy_matches_naive(p in arb_pool(), k in 1usize..15) {
            let k = k.min(p.n());
            let r = greedy_cover(&p, k).unwrap();
            prop_assert_eq!(&r.selected, &naive_greedy(&p, k));
            prop_assert!(r.marginal_degrees.windows(2).all(|w| w[0] >= w[1]));
            prop_assert!(r.estimated_centrality.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(r.final_estimate() <= p.alpha());
        }

        #[test]
        fn greedy_within_one_minus_inv_e(p in arb_pool(), k in 1usize..4) {
            let k = k.min(p.n());
            let r = greedy_cover(&p, k).unwrap();
            let got = p.covered_by(&r.selected) as f64;
            let opt = best_coverage(&p, k) as f64;
            prop_assert!(got >= (1.0 - (-1.0f64).exp()) * opt - 1e-9);
        }

        #[test]
        fn incidence_inverts_membership(p in arb_pool()) {
            for v in 0..p.n() {
                let expect: Vec<usize> = (0..p.len()).filter(|&e| p.edges()[e].contains(v)).collect();
                prop_assert_eq!(p.incident(v), &expect[..]);
            }
        }

        #[test]
        fn estimate_monotone_submodular(p in arb_pool(), order in proptest::collection::vec(0usize..15, 3..8)) {
            let n = p.n();
            let chain: Vec<NodeId> = order.iter().map(|v| v % n).collect();
            let f = |s: &[NodeId]| estimate_centrality(&p, s, 1.0).unwrap();
            let u = chain[chain.len() - 1];
            for i in 0..chain.len() - 1 {
                for j in i..chain.len() - 1 {
                    let (s1, s2) = (&chain[..i], &chain[..j]);
                    prop_assert!(f(s1) <= f(s2) + 1e-12);
                    let mut a = s1.to_vec(); a.push(u);
                    let mut b = s2.to_vec(); b.push(u);
                    prop_assert!(f(&b) - f(s2) <= f(&a) - f(s1) + 1e-12);
                }
            }
        }
    }
}
