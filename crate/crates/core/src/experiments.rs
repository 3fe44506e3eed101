//! Experiment drivers: node orderings, attack curves, influence spread and
//! centrality over time.

use std::io::Write;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exact::triangle_greedy;
use crate::generators::{gen_kronecker, KroneckerMethod, KroneckerSeed};
use crate::graph::{Graph, NodeId, SnapshotMode, TemporalEdgeList};
use crate::maximizer::{build_pool, greedy_cover, RunResult};
use crate::sampling::SamplerSpec;
use crate::util::{round_sig, DisjointSets};

/// How nodes are ranked for attacks and seed selection.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "by", rename_all = "kebab-case")]
pub enum OrderingMethod {
    Sampled { sampler: SamplerSpec },
    Triangle,
}

impl std::str::FromStr for OrderingMethod {
    type Err = crate::Error;

    /// `triangle`, or any sampler name accepted by [`SamplerSpec`].
    fn from_str(s: &str) -> Result<Self> {
        if s == "triangle" {
            Ok(OrderingMethod::Triangle)
        } else {
            Ok(OrderingMethod::Sampled { sampler: s.parse()? })
        }
    }
}

impl std::fmt::Display for OrderingMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderingMethod::Sampled { sampler } => sampler.fmt(f),
            OrderingMethod::Triangle => f.pad("triangle"),
        }
    }
}

pub const ORDERING_EPS: f64 = 0.25;

/// `ceil(100 ln(n) / ε²)`.
pub fn ordering_budget(n: usize, eps: f64) -> Result<usize> {
    if !(eps > 0.0) {
        return invalid(format!("eps must be positive, got {eps}"));
    }
    Ok(((100.0 * (n as f64).ln() / (eps * eps)).ceil() as usize).max(1))
}

/// Full greedy pick order over a pool of `ordering_budget(n, eps)` hyper-edges.
pub fn centrality_run<R: Rng + ?Sized>(g: &Graph, sampler: SamplerSpec, eps: f64, rng: &mut R) -> Result<RunResult> {
    if g.n() < 2 {
        return invalid("ordering needs n >= 2");
    }
    let pool = build_pool(g, sampler, ordering_budget(g.n(), eps)?, rng)?;
    greedy_cover(&pool, g.n())
}

/// Every node, ranked by the order greedy picks them.
pub fn centrality_ordering<R: Rng + ?Sized>(
    g: &Graph,
    method: OrderingMethod,
    eps: f64,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    match method {
        OrderingMethod::Sampled { sampler } => Ok(centrality_run(g, sampler, eps, rng)?.selected),
        OrderingMethod::Triangle => {
            if g.n() < 2 {
                return invalid("ordering needs n >= 2");
            }
            Ok(triangle_greedy(g, g.n())?.selected)
        }
    }
}

/// Largest weakly connected component size after removing each prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackCurve {
    /// `(removed, lcc_size)` for `removed = 0..=cap`.
    pub points: Vec<(usize, usize)>,
}

impl AttackCurve {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "removed,lcc_size")?;
        for (r, s) in &self.points {
            writeln!(out, "{r},{s}")?;
        }
        Ok(())
    }
}

/// Removes `ordering[..cap]` one node at a time. Computed backwards: start from
/// the graph without all `cap` nodes and re-insert them with union-find.
pub fn attack_curve(g: &Graph, ordering: &[NodeId], cap: usize) -> Result<AttackCurve> {
    let n = g.n();
    if cap > n || cap > ordering.len() {
        return invalid(format!("cap {cap} exceeds node count or ordering length"));
    }
    let mut removed = vec![false; n];
    for &v in &ordering[..cap] {
        if v >= n || removed[v] {
            return invalid(format!("ordering prefix has invalid or repeated node {v}"));
        }
        removed[v] = true;
    }
    let mut sets = DisjointSets::new(n);
    let mut largest = usize::from((0..n).any(|v| !removed[v]));
    for u in (0..n).filter(|&u| !removed[u]) {
        for w in g.weak_neighbors(u) {
            if !removed[w] {
                largest = largest.max(sets.union(u, w));
            }
        }
    }
    let mut sizes = vec![0usize; cap + 1];
    sizes[cap] = largest;
    for i in (0..cap).rev() {
        let v = ordering[i];
        removed[v] = false;
        largest = largest.max(1);
        for w in g.weak_neighbors(v) {
            if !removed[w] {
                largest = largest.max(sets.union(v, w));
            }
        }
        sizes[i] = largest;
    }
    Ok(AttackCurve {
        points: sizes.into_iter().enumerate().collect(),
    })
}

fn cascade<R: Rng + ?Sized>(g: &Graph, seeds: &[NodeId], p: f64, rng: &mut R, active: &mut [bool]) -> usize {
    let mut frontier: Vec<NodeId> = Vec::new();
    for &s in seeds {
        if !active[s] {
            active[s] = true;
            frontier.push(s);
        }
    }
    let mut head = 0;
    while head < frontier.len() {
        let v = frontier[head];
        head += 1;
        for &w in g.out_neighbors(v) {
            if !active[w] && rng.gen_bool(p) {
                active[w] = true;
                frontier.push(w);
            }
        }
    }
    for &v in &frontier {
        active[v] = false;
    }
    frontier.len()
}

/// Monte Carlo estimate of the expected cascade size from `seeds` under
/// independent cascade: `(mean, standard error)`.
pub fn ic_spread_stats<R: Rng + ?Sized>(
    g: &Graph,
    seeds: &[NodeId],
    p: f64,
    runs: usize,
    rng: &mut R,
) -> Result<(f64, f64)> {
    if runs == 0 {
        return invalid("runs must be positive");
    }
    if !(0.0..=1.0).contains(&p) {
        return invalid(format!("edge probability {p} outside [0, 1]"));
    }
    if let Some(&v) = seeds.iter().find(|&&v| v >= g.n()) {
        return invalid(format!("seed {v} out of range"));
    }
    let mut active = vec![false; g.n()];
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..runs {
        let x = cascade(g, seeds, p, rng, &mut active) as f64;
        sum += x;
        sum_sq += x * x;
    }
    let r = runs as f64;
    let mean = sum / r;
    let var = if runs > 1 {
        ((sum_sq - r * mean * mean) / (r - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok((mean, (var / r).sqrt()))
}

/// Mean cascade size from `seeds` over `runs` simulations.
pub fn ic_spread<R: Rng + ?Sized>(g: &Graph, seeds: &[NodeId], p: f64, runs: usize, rng: &mut R) -> Result<f64> {
    Ok(ic_spread_stats(g, seeds, p, runs, rng)?.0)
}

/// Influence maximization by greedy coverage of `num_rr` reverse-reachable sets.
pub fn ris_influence_max<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    num_rr: usize,
    p: f64,
    rng: &mut R,
) -> Result<Vec<NodeId>> {
    let pool = build_pool(g, SamplerSpec::RrInfluence { p }, num_rr, rng)?;
    Ok(greedy_cover(&pool, k)?.selected)
}

/// Seed-selection methods compared in the influence table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfluenceMethod {
    Im,
    Betweenness,
    Coverage,
    KPath,
    Triangle,
}

impl InfluenceMethod {
    pub const ALL: [InfluenceMethod; 5] = [
        InfluenceMethod::Im,
        InfluenceMethod::Betweenness,
        InfluenceMethod::Coverage,
        InfluenceMethod::KPath,
        InfluenceMethod::Triangle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            InfluenceMethod::Im => "im",
            InfluenceMethod::Betweenness => "betweenness",
            InfluenceMethod::Coverage => "coverage",
            InfluenceMethod::KPath => "kpath",
            InfluenceMethod::Triangle => "triangle",
        }
    }
}

impl std::str::FromStr for InfluenceMethod {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        InfluenceMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("unknown method {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InfluenceRow {
    pub method: InfluenceMethod,
    pub k: usize,
    pub spread: f64,
    pub std_err: f64,
}

/// Parameters of an influence comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfluenceSetup {
    pub ks: Vec<usize>,
    pub methods: Vec<InfluenceMethod>,
    pub p: f64,
    pub num_rr: usize,
    pub runs: usize,
    pub eps: f64,
    pub kappa: usize,
}

/// Seeds each method's top-`k` nodes and scores them with the same cascade
/// simulator, restarting the evaluation stream from `eval_seed` for every row.
pub fn influence_comparison<R: Rng + ?Sized>(
    g: &Graph,
    setup: &InfluenceSetup,
    eval_seed: u64,
    rng: &mut R,
) -> Result<Vec<InfluenceRow>> {
    let kmax = setup.ks.iter().copied().max().unwrap_or(0);
    if kmax > g.n() {
        return invalid(format!("k = {kmax} exceeds node count {}", g.n()));
    }
    let mut rows = Vec::new();
    for &method in &setup.methods {
        let ranking = match method {
            InfluenceMethod::Im => ris_influence_max(g, kmax, setup.num_rr, setup.p, rng)?,
            InfluenceMethod::Betweenness => {
                centrality_ordering(g, OrderingMethod::Sampled { sampler: SamplerSpec::Betweenness }, setup.eps, rng)?
            }
            InfluenceMethod::Coverage => {
                centrality_ordering(g, OrderingMethod::Sampled { sampler: SamplerSpec::Coverage }, setup.eps, rng)?
            }
            InfluenceMethod::KPath => centrality_ordering(
                g,
                OrderingMethod::Sampled { sampler: SamplerSpec::KPath { kappa: setup.kappa } },
                setup.eps,
                rng,
            )?,
            InfluenceMethod::Triangle => centrality_ordering(g, OrderingMethod::Triangle, setup.eps, rng)?,
        };
        for &k in &setup.ks {
            let mut eval = crate::util::seeded_rng(eval_seed, 0);
            let (spread, std_err) = ic_spread_stats(g, &ranking[..k], setup.p, setup.runs, &mut eval)?;
            rows.push(InfluenceRow {
                method,
                k,
                spread,
                std_err,
            });
        }
    }
    Ok(rows)
}

pub fn write_influence_csv<W: Write>(rows: &[InfluenceRow], mut out: W) -> Result<()> {
    writeln!(out, "method,k,spread")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.method.name(), r.k, round_sig(r.spread, 9))?;
    }
    Ok(())
}

/// One `(snapshot, k)` row of an evolution series.
#[derive(Clone, Debug, PartialEq)]
pub struct EvolutionRow {
    pub t: i64,
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub k: usize,
    pub scaled_centrality: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct EvolutionSeries {
    pub rows: Vec<EvolutionRow>,
}

impl EvolutionSeries {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,n,m,avg_deg,k,scaled_centrality")?;
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.t,
                r.n,
                r.m,
                round_sig(r.avg_degree, 9),
                r.k,
                round_sig(r.scaled_centrality, 9)
            )?;
        }
        Ok(())
    }
}

/// Rows for one snapshot graph: a single greedy run over an ordering-sized pool,
/// read off at each `k` (clamped to `n`).
pub fn snapshot_rows<R: Rng + ?Sized>(
    g: &Graph,
    t: i64,
    ks: &[usize],
    sampler: SamplerSpec,
    eps: f64,
    rng: &mut R,
) -> Result<Vec<EvolutionRow>> {
    let (n, m) = (g.n(), g.m());
    let avg_degree = match (n, g.is_directed()) {
        (0, _) => 0.0,
        (_, true) => m as f64 / n as f64,
        (_, false) => 2.0 * m as f64 / n as f64,
    };
    let scaled: Vec<f64> = if n < 2 {
        vec![0.0; ks.len()]
    } else {
        let run = centrality_run(g, sampler, eps, rng)?;
        let curve = run.scaled_centrality();
        ks.iter().map(|&k| if k == 0 { 0.0 } else { curve[k.min(n) - 1] }).collect()
    };
    Ok(ks
        .iter()
        .zip(scaled)
        .map(|(&k, scaled_centrality)| EvolutionRow {
            t,
            n,
            m,
            avg_degree,
            k,
            scaled_centrality,
        })
        .collect())
}

/// Centrality estimates over snapshots of a temporal edge list.
pub fn evolve<R: Rng + ?Sized>(
    temporal: &TemporalEdgeList,
    snapshots: &[i64],
    ks: &[usize],
    sampler: SamplerSpec,
    eps: f64,
    mode: SnapshotMode,
    directed: bool,
    rng: &mut R,
) -> Result<EvolutionSeries> {
    if snapshots.windows(2).any(|w| w[0] > w[1]) {
        return invalid("snapshot times must be sorted");
    }
    let mut rows = Vec::new();
    let mut previous = None;
    for &t in snapshots {
        let from = match mode {
            SnapshotMode::Cumulative => None,
            SnapshotMode::Windowed => previous,
        };
        let g = temporal.snapshot(from, t, directed);
        rows.extend(snapshot_rows(&g, t, ks, sampler, eps, rng)?);
        previous = Some(t);
    }
    Ok(EvolutionSeries { rows })
}

/// Kronecker graphs of growing size as a synthetic time series (`t = i` for `2^i` nodes).
pub fn kronecker_series<R: Rng + ?Sized>(
    seed: &KroneckerSeed,
    levels: std::ops::RangeInclusive<u32>,
    ks: &[usize],
    sampler: SamplerSpec,
    eps: f64,
    method: KroneckerMethod,
    rng: &mut R,
) -> Result<EvolutionSeries> {
    let mut rows = Vec::new();
    for i in levels {
        let g = gen_kronecker(seed, i, method, rng)?;
        rows.extend(snapshot_rows(&g, i as i64, ks, sampler, eps, rng)?);
    }
    Ok(EvolutionSeries { rows })
}
