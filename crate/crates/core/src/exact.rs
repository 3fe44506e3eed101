//! Exact centrality oracles.
//!
//! Everything here is `O(n(n + m))` or worse and meant for ground truth on small
//! and medium graphs. Pairs are ordered; a path "hits" a set when one of its
//! internal nodes (not an endpoint) belongs to it; unreachable pairs count zero.
//!
//! Set betweenness is computed by avoidance counting: for a source `s`,
//! `τ(v)` counts shortest `s`-`v` paths whose internal nodes avoid `S`, and the
//! pair `(s, t)` contributes `1 - τ(t)/σ(t)`.

use std::io::Write;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::bfs::{path_counts_gated, BfsScratch, PathCounts, UNREACHABLE};
use crate::error::{invalid, Error, Result};
use crate::graph::{triangles, Graph, NodeId};
use crate::maximizer::{greedy_cover, HyperEdgePool};
use crate::sampling::HyperEdge;
use crate::util::{round_sig, KahanSum};

const SOURCE_CHUNK: usize = 32;

/// Largest number of subsets [`brute_force_max`] will enumerate.
pub const BRUTE_FORCE_LIMIT: u128 = 10_000_000;

/// Largest graph [`exact_kpath`] enumerates walks on.
pub const KPATH_EXACT_MAX_N: usize = 12;

/// Per-node scores `B(v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralityVector {
    pub values: Vec<f64>,
}

impl CentralityVector {
    /// Scores divided by `n(n-1)`.
    pub fn scaled(&self) -> Vec<f64> {
        let n = self.values.len() as f64;
        let alpha = n * (n - 1.0);
        self.values
            .iter()
            .map(|v| if alpha > 0.0 { v / alpha } else { 0.0 })
            .collect()
    }

    /// Node with the largest score, smallest id on ties.
    pub fn argmax(&self) -> Option<NodeId> {
        let mut best: Option<NodeId> = None;
        for (v, &x) in self.values.iter().enumerate() {
            if best.map_or(true, |b| x > self.values[b]) {
                best = Some(v);
            }
        }
        best
    }

    /// CSV `node,score,scaled_score`, nodes in label space.
    pub fn write_csv<W: Write>(&self, g: &Graph, mut out: W) -> Result<()> {
        writeln!(out, "node,score,scaled_score")?;
        for (v, (score, scaled)) in self.values.iter().zip(self.scaled()).enumerate() {
            writeln!(out, "{},{},{}", g.label(v), round_sig(*score, 9), round_sig(scaled, 9))?;
        }
        Ok(())
    }
}

fn mask(g: &Graph, set: &[NodeId]) -> Result<Vec<bool>> {
    let mut m = vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return invalid(format!("node {v} out of range for n = {}", g.n()));
        }
        m[v] = true;
    }
    Ok(m)
}

/// Runs `per_source` for every source on the rayon pool and adds the resulting
/// vectors in source order.
fn sum_over_sources<F>(n: usize, per_source: F) -> Vec<f64>
where
    F: Fn(NodeId, &mut BfsScratch, &mut [f64]) + Sync,
{
    let sources: Vec<NodeId> = (0..n).collect();
    let partials: Vec<Vec<f64>> = sources
        .par_chunks(SOURCE_CHUNK)
        .map(|chunk| {
            let mut scratch = BfsScratch::new(n);
            let mut acc = vec![0.0; n];
            for &s in chunk {
                per_source(s, &mut scratch, &mut acc);
            }
            acc
        })
        .collect();
    let mut total = vec![0.0; n];
    for p in partials {
        for (t, x) in total.iter_mut().zip(p) {
            *t += x;
        }
    }
    total
}

fn each_pred<'a>(g: &'a Graph, dist: &'a [u32], v: NodeId) -> impl Iterator<Item = NodeId> + 'a {
    let dv = dist[v];
    g.in_neighbors(v)
        .iter()
        .copied()
        .filter(move |&u| dist[u] != UNREACHABLE && dist[u] + 1 == dv)
}

/// Brandes' dependency accumulation: exact `B(v)` for every node.
pub fn brandes(g: &Graph) -> CentralityVector {
    let values = sum_over_sources(g.n(), |s, scratch, acc| {
        scratch.run(g, s, true, None);
        let dist = scratch.dists();
        let order = scratch.order();
        let sigma = path_counts_gated(g, dist, order, |_| true);
        let mut delta = vec![0.0f64; g.n()];
        for &w in order.iter().skip(1).rev() {
            let coeff = 1.0 + delta[w];
            for u in each_pred(g, dist, w) {
                delta[u] += sigma.ratio(u, w) * coeff;
            }
            acc[w] += delta[w];
        }
    });
    CentralityVector { values }
}

/// `(σ - τ) / σ` at `t`.
fn hit_fraction(sigma: &PathCounts, tau: &PathCounts, t: NodeId) -> f64 {
    match (sigma, tau) {
        (PathCounts::Small(s), PathCounts::Small(a)) => (s[t] - a[t]) as f64 / s[t] as f64,
        _ => {
            let total = sigma.get(t);
            crate::bfs::big_ratio(&(&total - tau.get(t)), &total)
        }
    }
}

/// Exact group betweenness `B(S)`.
pub fn set_bwc(g: &Graph, set: &[NodeId]) -> Result<f64> {
    let in_set = mask(g, set)?;
    if set.is_empty() {
        return Ok(0.0);
    }
    let per_source: Vec<f64> = (0..g.n())
        .into_par_iter()
        .map_init(
            || BfsScratch::new(g.n()),
            |scratch, s| {
                scratch.run(g, s, true, None);
                let (dist, order) = (scratch.dists(), scratch.order());
                let sigma = path_counts_gated(g, dist, order, |_| true);
                let tau = path_counts_gated(g, dist, order, |u| !in_set[u]);
                let mut sum = KahanSum::default();
                for &t in &order[1..] {
                    sum.add(hit_fraction(&sigma, &tau, t));
                }
                sum.value()
            },
        )
        .collect();
    let mut total = KahanSum::default();
    for x in per_source {
        total.add(x);
    }
    Ok(total.value())
}

/// For source `s`: every reachable `t ≠ s` with the number of shortest `s`-`t`
/// paths hitting `set` and the total number of shortest paths.
pub fn hit_path_counts(g: &Graph, s: NodeId, set: &[NodeId]) -> Result<Vec<(NodeId, BigUint, BigUint)>> {
    let in_set = mask(g, set)?;
    if s >= g.n() {
        return invalid(format!("source {s} out of range"));
    }
    let mut scratch = BfsScratch::new(g.n());
    scratch.run(g, s, true, None);
    let (dist, order) = (scratch.dists(), scratch.order());
    let sigma = path_counts_gated(g, dist, order, |_| true);
    let tau = path_counts_gated(g, dist, order, |u| !in_set[u]);
    let mut out: Vec<_> = order[1..]
        .iter()
        .map(|&t| (t, sigma.get(t) - tau.get(t), sigma.get(t)))
        .collect();
    out.sort_by_key(|e| e.0);
    Ok(out)
}

/// Adaptive betweenness `B(u | S) = B(S ∪ {u}) - B(S)`.
pub fn adaptive_bwc(g: &Graph, u: NodeId, set: &[NodeId]) -> Result<f64> {
    if set.contains(&u) {
        return invalid(format!("node {u} already in the set"));
    }
    let mut with_u = set.to_vec();
    with_u.push(u);
    Ok(set_bwc(g, &with_u)? - set_bwc(g, set)?)
}

/// `B(u | S)` for every node at once (zero for members of `S`).
///
/// Per source, `a(v) = τ(v)/σ(v)` runs forward and
/// `b(u) = Σ_w σ(u)/σ(w) · (1 + [w ∉ S] b(w))` runs backward over successors `w`;
/// node `u ∉ S` gains `a(u) · b(u)`. With `S = ∅` this is Brandes' recursion.
pub fn all_adaptive_bwc(g: &Graph, set: &[NodeId]) -> Result<Vec<f64>> {
    let in_set = mask(g, set)?;
    Ok(sum_over_sources(g.n(), |s, scratch, acc| {
        scratch.run(g, s, true, None);
        let (dist, order) = (scratch.dists(), scratch.order());
        let sigma = path_counts_gated(g, dist, order, |_| true);
        let mut avoid = vec![0.0f64; g.n()];
        avoid[s] = 1.0;
        for &v in &order[1..] {
            avoid[v] = each_pred(g, dist, v)
                .filter(|&u| u == s || !in_set[u])
                .map(|u| avoid[u] * sigma.ratio(u, v))
                .sum();
        }
        let mut below = vec![0.0f64; g.n()];
        for &w in order.iter().skip(1).rev() {
            let coeff = 1.0 + if in_set[w] { 0.0 } else { below[w] };
            for u in each_pred(g, dist, w) {
                below[u] += sigma.ratio(u, w) * coeff;
            }
            if !in_set[w] {
                acc[w] += avoid[w] * below[w];
            }
        }
    }))
}

/// Greedy pick order with the objective value after each pick.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyTrace {
    pub selected: Vec<NodeId>,
    pub values: Vec<f64>,
}

/// Exact greedy: `k` rounds of `argmax_u B(u | S)`, smallest id on ties.
/// `values[i]` is the exact `B` of the first `i + 1` picks.
pub fn ex_greedy(g: &Graph, k: usize) -> Result<GreedyTrace> {
    if k > g.n() {
        return invalid(format!("k = {k} exceeds node count {}", g.n()));
    }
    let mut selected = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    let mut taken = vec![false; g.n()];
    for _ in 0..k {
        let gains = all_adaptive_bwc(g, &selected)?;
        let top = (0..g.n())
            .filter(|&v| !taken[v])
            .map(|v| gains[v])
            .fold(f64::NEG_INFINITY, f64::max);
        // Float noise must not break ties between equal marginals.
        let tol = 1e-9 * top.abs().max(1.0);
        let pick = (0..g.n())
            .find(|&v| !taken[v] && gains[v] >= top - tol)
            .expect("an untaken node exists");
        taken[pick] = true;
        selected.push(pick);
        values.push(set_bwc(g, &selected)?);
    }
    Ok(GreedyTrace { selected, values })
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Exact `MAX_k` and a maximizing set (lexicographically first), by enumeration.
pub fn brute_force_max(g: &Graph, k: usize) -> Result<(Vec<NodeId>, f64)> {
    let n = g.n();
    if k > n {
        return invalid(format!("k = {k} exceeds node count {n}"));
    }
    let count = binomial(n, k);
    if count > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeGuard(format!(
            "C({n}, {k}) = {count} subsets exceeds {BRUTE_FORCE_LIMIT}"
        )));
    }
    let mut combo: Vec<NodeId> = (0..k).collect();
    let mut best = (combo.clone(), set_bwc(g, &combo)?);
    // Advance to the next k-combination in lexicographic order.
    while let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) {
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
        let value = set_bwc(g, &combo)?;
        if value > best.1 {
            best = (combo.clone(), value);
        }
    }
    Ok(best)
}

/// Exact coverage centrality: ordered pairs with some shortest path hitting `set`.
pub fn exact_coverage(g: &Graph, set: &[NodeId]) -> Result<f64> {
    let in_set = mask(g, set)?;
    let members: Vec<NodeId> = (0..g.n()).filter(|&v| in_set[v]).collect();
    if members.is_empty() {
        return Ok(0.0);
    }
    let mut scratch = BfsScratch::new(g.n());
    let from_member: Vec<Vec<u32>> = members
        .iter()
        .map(|&v| {
            scratch.run(g, v, true, None);
            scratch.dists().to_vec()
        })
        .collect();
    let mut count = 0u64;
    for s in 0..g.n() {
        scratch.run(g, s, true, None);
        let ds = scratch.dists();
        for &t in &scratch.order()[1..] {
            let dst = ds[t];
            let covered = members.iter().zip(&from_member).any(|(&v, dv)| {
                v != s && v != t && ds[v] != UNREACHABLE && dv[t] != UNREACHABLE && ds[v] + dv[t] == dst
            });
            count += u64::from(covered);
        }
    }
    Ok(count as f64)
}

/// Exact κ-path centrality: summed over start nodes, the probability that the
/// random simple walk of at most `kappa` edges visits `set` (start included).
pub fn exact_kpath(g: &Graph, set: &[NodeId], kappa: usize) -> Result<f64> {
    let in_set = mask(g, set)?;
    if g.n() > KPATH_EXACT_MAX_N {
        return Err(Error::SizeGuard(format!(
            "exact κ-path enumeration limited to n <= {KPATH_EXACT_MAX_N}, got {}",
            g.n()
        )));
    }

    fn walk(g: &Graph, in_set: &[bool], cur: NodeId, visited: &mut Vec<bool>, left: usize, prob: f64) -> f64 {
        if left == 0 {
            return 0.0;
        }
        let next: Vec<NodeId> = g.out_neighbors(cur).iter().copied().filter(|&w| !visited[w]).collect();
        let share = prob / next.len() as f64;
        next.iter()
            .map(|&w| {
                if in_set[w] {
                    share
                } else {
                    visited[w] = true;
                    let p = walk(g, in_set, w, visited, left - 1, share);
                    visited[w] = false;
                    p
                }
            })
            .sum()
    }

    let mut total = 0.0;
    let mut visited = vec![false; g.n()];
    for s in 0..g.n() {
        if in_set[s] {
            total += 1.0;
            continue;
        }
        visited[s] = true;
        total += walk(g, &in_set, s, &mut visited, kappa, 1.0);
        visited[s] = false;
    }
    Ok(total)
}

/// Greedy over triangles: each round takes the node meeting the most triangles
/// not yet touched by earlier picks. `values[i]` counts triangles touched so far.
pub fn triangle_greedy(g: &Graph, k: usize) -> Result<GreedyTrace> {
    let tris: Vec<HyperEdge> = triangles(g)
        .into_iter()
        .map(|t| HyperEdge::new(t.to_vec()))
        .collect();
    let count = tris.len() as f64;
    let pool = HyperEdgePool::from_edges(g.n(), count, tris)?;
    let run = greedy_cover(&pool, k)?;
    let mut covered = 0;
    let values = run
        .marginal_degrees
        .iter()
        .map(|d| {
            covered += d;
            covered as f64
        })
        .collect();
    Ok(GreedyTrace {
        selected: run.selected,
        values,
    })
}
