//! Hyper-edge samplers.
//!
//! A sampler for a centrality `C` draws random node sets `h` such that, for
//! every node set `S`, `Pr(h ∩ S ≠ ∅) = C(S) / α` with `α` independent of `S`.
//! Each [`SamplerSpec`] variant names one such sampler and knows its `α`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigUint, RandBigInt};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bfs::{count_paths, BfsScratch, UNREACHABLE};
use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, NodeId};

/// A sampled node set, stored sorted and without duplicates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HyperEdge(Vec<NodeId>);

impl HyperEdge {
    pub fn new(mut nodes: Vec<NodeId>) -> Self {
        nodes.sort_unstable();
        nodes.dedup();
        HyperEdge(nodes)
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Whether the edge meets `set`, given as a membership mask.
    pub fn hits(&self, set: &[bool]) -> bool {
        self.0.iter().any(|&v| set[v])
    }
}

/// Which centrality's sampler to use, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SamplerSpec {
    Betweenness,
    Coverage,
    KPath { kappa: usize },
    RrInfluence { p: f64 },
}

impl SamplerSpec {
    /// Normalizer `α`: `n(n-1)` for the pair-based samplers, `n` otherwise.
    pub fn alpha(&self, g: &Graph) -> f64 {
        let n = g.n() as f64;
        match self {
            SamplerSpec::Betweenness | SamplerSpec::Coverage => n * (n - 1.0),
            SamplerSpec::KPath { .. } | SamplerSpec::RrInfluence { .. } => n,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        match *self {
            SamplerSpec::Betweenness | SamplerSpec::Coverage if g.n() < 2 => {
                invalid(format!("{self} sampling needs at least 2 nodes"))
            }
            SamplerSpec::KPath { kappa: 0 } => invalid("kappa must be positive"),
            SamplerSpec::RrInfluence { p } if !(0.0..=1.0).contains(&p) => {
                invalid(format!("edge probability {p} outside [0, 1]"))
            }
            _ if g.n() == 0 => invalid("graph has no nodes"),
            _ => Ok(()),
        }
    }
}

/// See [`SamplerSpec::alpha`].
pub fn alpha(spec: &SamplerSpec, g: &Graph) -> f64 {
    spec.alpha(g)
}

impl fmt::Display for SamplerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SamplerSpec::Betweenness => f.pad("betweenness"),
            SamplerSpec::Coverage => f.pad("coverage"),
            SamplerSpec::KPath { kappa } => f.pad(&format!("kpath:{kappa}")),
            SamplerSpec::RrInfluence { p } => f.pad(&format!("rr:{p}")),
        }
    }
}

impl FromStr for SamplerSpec {
    type Err = Error;

    /// `betweenness`, `coverage`, `kpath[:KAPPA]` (default 2), `rr[:P]` (default 0.01).
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let bad = || Error::InvalidArgument(format!("bad sampler {s:?}"));
        Ok(match (name, arg) {
            ("betweenness", None) => SamplerSpec::Betweenness,
            ("coverage", None) => SamplerSpec::Coverage,
            ("kpath", a) => SamplerSpec::KPath {
                kappa: a.map_or(Ok(2), str::parse).map_err(|_| bad())?,
            },
            ("rr", a) => SamplerSpec::RrInfluence {
                p: a.map_or(Ok(0.01), str::parse).map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        })
    }
}

/// Draws hyper-edges for one (graph, spec) pair, reusing search buffers.
pub struct Sampler<'g> {
    g: &'g Graph,
    spec: SamplerSpec,
    fwd: BfsScratch,
    bwd: BfsScratch,
    counts: Vec<u64>,
    big: Vec<BigUint>,
    mark: Vec<bool>,
    buf: Vec<NodeId>,
}

impl<'g> Sampler<'g> {
    pub fn new(g: &'g Graph, spec: SamplerSpec) -> Result<Self> {
        spec.validate(g)?;
        let n = g.n();
        Ok(Sampler {
            g,
            spec,
            fwd: BfsScratch::new(n),
            bwd: BfsScratch::new(n),
            counts: vec![0; n],
            big: Vec::new(),
            mark: vec![false; n],
            buf: Vec::new(),
        })
    }

    pub fn spec(&self) -> SamplerSpec {
        self.spec
    }

    pub fn alpha(&self) -> f64 {
        self.spec.alpha(self.g)
    }

    pub fn draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> HyperEdge {
        match self.spec {
            SamplerSpec::Betweenness => {
                let (s, t) = self.pair(rng);
                self.bwc_for_pair(s, t, rng)
            }
            SamplerSpec::Coverage => {
                let (s, t) = self.pair(rng);
                self.coverage_for_pair(s, t)
            }
            SamplerSpec::KPath { kappa } => {
                let s = rng.gen_range(0..self.g.n());
                self.kpath_from(s, kappa, rng)
            }
            SamplerSpec::RrInfluence { p } => {
                let v = rng.gen_range(0..self.g.n());
                self.rr_for_target(v, p, rng)
            }
        }
    }

    /// Uniform ordered pair of distinct nodes.
    fn pair<R: Rng + ?Sized>(&self, rng: &mut R) -> (NodeId, NodeId) {
        let n = self.g.n();
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        (s, t)
    }

    /// Internal nodes of a uniformly random shortest `s`-`t` path; empty when `t`
    /// is unreachable or adjacent.
    pub fn bwc_for_pair<R: Rng + ?Sized>(&mut self, s: NodeId, t: NodeId, rng: &mut R) -> HyperEdge {
        let g = self.g;
        self.fwd.run(g, s, true, Some(t));
        let dt = self.fwd.dist(t);
        if dt == UNREACHABLE || dt <= 1 {
            return HyperEdge::default();
        }
        // The search stopped at t, so t closes the discovery order.
        let order = self.fwd.order();
        let dist = self.fwd.dists();
        let mut nodes = Vec::with_capacity(dt as usize - 1);
        if count_paths(g, dist, order, |_| true, &mut self.counts).is_some() {
            let counts = &self.counts;
            let mut cur = t;
            while self.fwd.dist(cur) > 1 {
                let mut r = rng.gen_range(0..counts[cur]);
                let mut next = None;
                for u in preds(g, dist, cur) {
                    if r < counts[u] {
                        next = Some(u);
                        break;
                    }
                    r -= counts[u];
                }
                cur = next.expect("draw below total");
                nodes.push(cur);
            }
        } else {
            if self.big.len() != g.n() {
                self.big = vec![BigUint::default(); g.n()];
            }
            count_paths(g, dist, order, |_| true, &mut self.big).expect("no overflow");
            let counts = &self.big;
            let mut cur = t;
            while self.fwd.dist(cur) > 1 {
                let mut r = rng.gen_biguint_below(&counts[cur]);
                let mut next = None;
                for u in preds(g, dist, cur) {
                    if r < counts[u] {
                        next = Some(u);
                        break;
                    }
                    r -= &counts[u];
                }
                cur = next.expect("draw below total");
                nodes.push(cur);
            }
        }
        HyperEdge::new(nodes)
    }

    /// Every node lying on some shortest `s`-`t` path, endpoints excluded.
    pub fn coverage_for_pair(&mut self, s: NodeId, t: NodeId) -> HyperEdge {
        let g = self.g;
        self.fwd.run(g, s, true, None);
        let dt = self.fwd.dist(t);
        if dt == UNREACHABLE || dt <= 1 {
            return HyperEdge::default();
        }
        self.bwd.run_bounded(g, t, false, None, dt);
        let nodes = self
            .bwd
            .order()
            .iter()
            .copied()
            .filter(|&v| {
                v != s && v != t && {
                    let (a, b) = (self.fwd.dist(v), self.bwd.dist(v));
                    a != UNREACHABLE && a + b == dt
                }
            })
            .collect();
        HyperEdge::new(nodes)
    }

    /// Nodes of a random simple walk of at most `kappa` edges from `s`, `s` included.
    pub fn kpath_from<R: Rng + ?Sized>(&mut self, s: NodeId, kappa: usize, rng: &mut R) -> HyperEdge {
        let g = self.g;
        let mut walk = vec![s];
        self.mark[s] = true;
        let mut cur = s;
        for _ in 0..kappa {
            self.buf.clear();
            self.buf
                .extend(g.out_neighbors(cur).iter().filter(|&&w| !self.mark[w]));
            if self.buf.is_empty() {
                break;
            }
            cur = self.buf[rng.gen_range(0..self.buf.len())];
            self.mark[cur] = true;
            walk.push(cur);
        }
        for &v in &walk {
            self.mark[v] = false;
        }
        HyperEdge::new(walk)
    }

    /// Nodes reaching `v` when each edge is live independently with probability `p`.
    pub fn rr_for_target<R: Rng + ?Sized>(&mut self, v: NodeId, p: f64, rng: &mut R) -> HyperEdge {
        let g = self.g;
        let mut reached = vec![v];
        self.mark[v] = true;
        let mut head = 0;
        while head < reached.len() {
            let cur = reached[head];
            head += 1;
            for &u in g.in_neighbors(cur) {
                if !self.mark[u] && rng.gen_bool(p) {
                    self.mark[u] = true;
                    reached.push(u);
                }
            }
        }
        for &u in &reached {
            self.mark[u] = false;
        }
        HyperEdge::new(reached)
    }
}

fn preds<'a>(g: &'a Graph, dist: &'a [u32], v: NodeId) -> impl Iterator<Item = NodeId> + 'a {
    let dv = dist[v];
    g.in_neighbors(v)
        .iter()
        .copied()
        .filter(move |&u| dist[u] != UNREACHABLE && dist[u] + 1 == dv)
}

/// One betweenness hyper-edge.
pub fn sample_bwc<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<HyperEdge> {
    Ok(Sampler::new(g, SamplerSpec::Betweenness)?.draw(rng))
}

/// One coverage hyper-edge.
pub fn sample_coverage<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Result<HyperEdge> {
    Ok(Sampler::new(g, SamplerSpec::Coverage)?.draw(rng))
}

/// One κ-path hyper-edge.
pub fn sample_kpath<R: Rng + ?Sized>(g: &Graph, kappa: usize, rng: &mut R) -> Result<HyperEdge> {
    Ok(Sampler::new(g, SamplerSpec::KPath { kappa })?.draw(rng))
}

/// One reverse-reachable set under independent cascade with edge probability `p`.
pub fn sample_rr<R: Rng + ?Sized>(g: &Graph, p: f64, rng: &mut R) -> Result<HyperEdge> {
    Ok(Sampler::new(g, SamplerSpec::RrInfluence { p })?.draw(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::seeded_rng;
    use std::collections::HashMap;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, false, edges.iter().copied()).unwrap()
    }

    fn c4() -> Graph {
        graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    #[test]
    fn p3_pair_gives_middle() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let mut s = Sampler::new(&g, SamplerSpec::Betweenness).unwrap();
        let mut rng = seeded_rng(1, 0);
        assert_eq!(s.bwc_for_pair(0, 2, &mut rng).nodes(), &[1]);
        assert!(s.bwc_for_pair(0, 1, &mut rng).is_empty());
        let mut s = Sampler::new(&g, SamplerSpec::Coverage).unwrap();
        assert_eq!(s.coverage_for_pair(0, 2).nodes(), &[1]);
        assert!(s.coverage_for_pair(1, 2).is_empty());
    }

    #[test]
    fn c4_antipodal_pair() {
        let g = c4();
        let mut s = Sampler::new(&g, SamplerSpec::Betweenness).unwrap();
        let mut rng = seeded_rng(2, 0);
        let mut freq = HashMap::new();
        let trials = 20_000;
        for _ in 0..trials {
            *freq.entry(s.bwc_for_pair(0, 2, &mut rng)).or_insert(0usize) += 1;
        }
        assert_eq!(freq.len(), 2);
        for (h, c) in freq {
            assert_eq!(h.len(), 1);
            let f = c as f64 / trials as f64;
            assert!((f - 0.5).abs() < 4.0 * (0.25f64 / trials as f64).sqrt(), "{f}");
        }
        let mut s = Sampler::new(&g, SamplerSpec::Coverage).unwrap();
        assert_eq!(s.coverage_for_pair(0, 2).nodes(), &[1, 3]);
    }

    #[test]
    fn isolated_pair_gives_empty_edges() {
        let g = graph(2, &[]);
        let mut rng = seeded_rng(3, 0);
        for _ in 0..10 {
            assert!(sample_bwc(&g, &mut rng).unwrap().is_empty());
            assert!(sample_coverage(&g, &mut rng).unwrap().is_empty());
        }
    }

    #[test]
    fn pair_samplers_need_two_nodes() {
        let g = graph(1, &[]);
        let mut rng = seeded_rng(3, 0);
        assert!(sample_bwc(&g, &mut rng).is_err());
        assert!(sample_coverage(&g, &mut rng).is_err());
        assert_eq!(sample_kpath(&g, 3, &mut rng).unwrap().nodes(), &[0]);
    }

    #[test]
    fn kpath_examples() {
        let mut rng = seeded_rng(4, 0);
        let g = graph(2, &[(0, 1)]);
        let mut s = Sampler::new(&g, SamplerSpec::KPath { kappa: 1 }).unwrap();
        assert_eq!(s.kpath_from(0, 1, &mut rng).nodes(), &[0, 1]);
        let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        for _ in 0..100 {
            assert_eq!(sample_kpath(&k3, 2, &mut rng).unwrap().len(), 3);
        }
        assert!(sample_kpath(&k3, 0, &mut rng).is_err());
    }

    #[test]
    fn rr_examples() {
        let mut rng = seeded_rng(5, 0);
        let d = Graph::from_edges(2, true, [(0, 1)]).unwrap();
        let mut s = Sampler::new(&d, SamplerSpec::RrInfluence { p: 1.0 }).unwrap();
        assert_eq!(s.rr_for_target(1, 1.0, &mut rng).nodes(), &[0, 1]);
        assert_eq!(s.rr_for_target(0, 1.0, &mut rng).nodes(), &[0]);
        let g = graph(4, &[(0, 1), (1, 2)]);
        for _ in 0..20 {
            assert_eq!(sample_rr(&g, 0.0, &mut rng).unwrap().len(), 1);
        }
        let mut s = Sampler::new(&g, SamplerSpec::RrInfluence { p: 1.0 }).unwrap();
        assert_eq!(s.rr_for_target(2, 1.0, &mut rng).nodes(), &[0, 1, 2]);
        assert!(sample_rr(&g, 1.5, &mut rng).is_err());
        assert!(sample_rr(&g, f64::NAN, &mut rng).is_err());
    }

    #[test]
    fn alpha_values() {
        let g100 = Graph::from_edges(100, false, []).unwrap();
        assert_eq!(alpha(&SamplerSpec::Betweenness, &g100), 9900.0);
        assert_eq!(alpha(&SamplerSpec::KPath { kappa: 2 }, &g100), 100.0);
        assert_eq!(alpha(&SamplerSpec::RrInfluence { p: 0.1 }, &g100), 100.0);
        let g5 = Graph::from_edges(5, false, []).unwrap();
        assert_eq!(alpha(&SamplerSpec::Coverage, &g5), 20.0);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("betweenness".parse::<SamplerSpec>().unwrap(), SamplerSpec::Betweenness);
        assert_eq!("kpath".parse::<SamplerSpec>().unwrap(), SamplerSpec::KPath { kappa: 2 });
        assert_eq!("kpath:5".parse::<SamplerSpec>().unwrap(), SamplerSpec::KPath { kappa: 5 });
        assert_eq!("rr:0.5".parse::<SamplerSpec>().unwrap(), SamplerSpec::RrInfluence { p: 0.5 });
        assert!("rr:x".parse::<SamplerSpec>().is_err());
        assert!("pagerank".parse::<SamplerSpec>().is_err());
        for spec in [SamplerSpec::Coverage, SamplerSpec::KPath { kappa: 3 }] {
            assert_eq!(spec.to_string().parse::<SamplerSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn same_seed_same_sequence() {
        let g = c4();
        for spec in [
            SamplerSpec::Betweenness,
            SamplerSpec::Coverage,
            SamplerSpec::KPath { kappa: 2 },
            SamplerSpec::RrInfluence { p: 0.5 },
        ] {
            let run = |seed| {
                let mut rng = seeded_rng(seed, 0);
                let mut s = Sampler::new(&g, spec).unwrap();
                (0..50).map(|_| s.draw(&mut rng)).collect::<Vec<_>>()
            };
            assert_eq!(run(9), run(9));
        }
    }

    #[test]
    fn endpoints_never_in_pair_hyper_edges() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]);
        let mut rng = seeded_rng(6, 0);
        let mut s = Sampler::new(&g, SamplerSpec::Betweenness).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                if a == b {
                    continue;
                }
                let h = s.bwc_for_pair(a, b, &mut rng);
                assert!(!h.contains(a) && !h.contains(b));
                assert!(h.nodes().iter().all(|&v| v < 6));
                let mut c = Sampler::new(&g, SamplerSpec::Coverage).unwrap();
                let h = c.coverage_for_pair(a, b);
                assert!(!h.contains(a) && !h.contains(b));
            }
        }
    }
}
