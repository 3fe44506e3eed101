//! Synthetic graph generators.

use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{invalid, Result};
use crate::graph::{Graph, NodeId};

/// 2×2 matrix of edge probabilities for stochastic Kronecker graphs.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KroneckerSeed(pub [[f64; 2]; 2]);

impl KroneckerSeed {
    /// The core-periphery seed `[[0.9, 0.5], [0.5, 0.2]]`.
    pub const CORE_PERIPHERY: KroneckerSeed = KroneckerSeed([[0.9, 0.5], [0.5, 0.2]]);

    pub fn new(entries: [[f64; 2]; 2]) -> Result<Self> {
        if entries.iter().flatten().any(|p| !(0.0..=1.0).contains(p)) {
            return invalid(format!("seed entries must lie in [0, 1]: {entries:?}"));
        }
        Ok(KroneckerSeed(entries))
    }

    /// Parses `a,b,c,d` in row-major order.
    pub fn parse(s: &str) -> Result<Self> {
        let vals: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| crate::Error::InvalidArgument(format!("bad seed matrix {s:?}")))?;
        match vals[..] {
            [a, b, c, d] => Self::new([[a, b], [c, d]]),
            _ => invalid(format!("seed matrix needs 4 entries, got {s:?}")),
        }
    }

    /// Probability of the edge `(u, v)` in the `levels`-fold Kronecker power.
    pub fn edge_probability(&self, u: NodeId, v: NodeId, levels: u32) -> f64 {
        (0..levels)
            .map(|b| self.0[(u >> b) & 1][(v >> b) & 1])
            .product()
    }

    /// Expected number of undirected edges `Σ_{u<v} P(u, v)`.
    pub fn expected_edges(&self, levels: u32) -> f64 {
        let total: f64 = self.0.iter().flatten().sum::<f64>().powi(levels as i32);
        let diag = (self.0[0][0] + self.0[1][1]).powi(levels as i32);
        if self.0[0][1] == self.0[1][0] {
            (total - diag) / 2.0
        } else {
            let n = 1usize << levels;
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .map(|(u, v)| self.edge_probability(u, v, levels))
                .sum()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KroneckerMethod {
    /// Per-pair Bernoulli trials when `2^i <= 4096`, ball dropping above.
    Auto,
    Exact,
    BallDropping,
}

pub const KRONECKER_EXACT_MAX_LEVELS: u32 = 12;

/// Undirected stochastic Kronecker graph on `2^levels` nodes.
pub fn gen_kronecker<R: Rng + ?Sized>(
    seed: &KroneckerSeed,
    levels: u32,
    method: KroneckerMethod,
    rng: &mut R,
) -> Result<Graph> {
    if !(1..=24).contains(&levels) {
        return invalid(format!("Kronecker power must be in 1..=24, got {levels}"));
    }
    let n = 1usize << levels;
    let exact = match method {
        KroneckerMethod::Auto => levels <= KRONECKER_EXACT_MAX_LEVELS,
        KroneckerMethod::Exact => true,
        KroneckerMethod::BallDropping => false,
    };
    let mut edges = Vec::new();
    if exact {
        for u in 0..n {
            for v in u + 1..n {
                let p = seed.edge_probability(u, v, levels);
                if p > 0.0 && rng.gen_bool(p.min(1.0)) {
                    edges.push((u, v));
                }
            }
        }
    } else {
        edges = ball_dropping(seed, levels, rng);
    }
    Graph::from_edges(n, false, edges)
}

/// Drops a Poisson number of balls (mean = expected edge count) through the
/// recursive quadrants, discarding diagonal cells and repeats.
fn ball_dropping<R: Rng + ?Sized>(seed: &KroneckerSeed, levels: u32, rng: &mut R) -> Vec<(NodeId, NodeId)> {
    let expected = seed.expected_edges(levels);
    if expected <= 0.0 {
        return Vec::new();
    }
    let target = Poisson::new(expected).expect("positive mean").sample(rng) as usize;
    let cells = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let weights: Vec<f64> = cells.iter().map(|&(a, b)| seed.0[a][b]).collect();
    let total: f64 = weights.iter().sum();
    let mut edges = std::collections::HashSet::with_capacity(target);
    let mut attempts = 0usize;
    let max_attempts = target.saturating_mul(20).max(1000);
    while edges.len() < target && attempts < max_attempts {
        attempts += 1;
        let (mut u, mut v) = (0usize, 0usize);
        for b in 0..levels {
            let mut r = rng.gen::<f64>() * total;
            let mut cell = 3;
            for (i, w) in weights.iter().enumerate() {
                if r < *w {
                    cell = i;
                    break;
                }
                r -= w;
            }
            let (a, c) = cells[cell];
            u |= a << b;
            v |= c << b;
        }
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    edges
}

/// A random Apollonian network under construction.
#[derive(Clone, Debug)]
pub struct RanState {
    nodes: usize,
    edges: Vec<(NodeId, NodeId)>,
    faces: Vec<[NodeId; 3]>,
}

impl Default for RanState {
    fn default() -> Self {
        Self::new()
    }
}

impl RanState {
    /// The initial triangle on nodes 0, 1, 2 with its single active face.
    pub fn new() -> Self {
        RanState {
            nodes: 3,
            edges: vec![(0, 1), (1, 2), (0, 2)],
            faces: vec![[0, 1, 2]],
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[[NodeId; 3]] {
        &self.faces
    }

    /// Inserts a new node into a uniformly random face; returns the node and the
    /// face it split.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> (NodeId, [NodeId; 3]) {
        let idx = rng.gen_range(0..self.faces.len());
        let face = self.faces.swap_remove(idx);
        let [a, b, c] = face;
        let t = self.nodes;
        self.nodes += 1;
        self.edges.extend([(a, t), (b, t), (c, t)]);
        self.faces.extend([[a, b, t], [b, c, t], [a, c, t]]);
        (t, face)
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(self.nodes, false, self.edges.iter().copied()).expect("ids in range")
    }
}

/// Random Apollonian network on `n` nodes.
pub fn gen_ran<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    if n < 3 {
        return invalid(format!("RAN needs n >= 3, got {n}"));
    }
    let mut state = RanState::new();
    while state.node_count() < n {
        state.step(rng);
    }
    Ok(state.to_graph())
}

/// The `r`-dimensional hypercube: bitstrings adjacent at Hamming distance 1.
pub fn gen_hypercube(r: u32) -> Result<Graph> {
    if !(1..=16).contains(&r) {
        return invalid(format!("hypercube dimension must be in 1..=16, got {r}"));
    }
    let n = 1usize << r;
    let edges = (0..n).flat_map(|u| (0..r).map(move |b| (u, u ^ (1 << b))).filter(|&(u, v)| u < v));
    Graph::from_edges(n, false, edges)
}

/// Actual dimensions of a lower-bound instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct LowerBoundShape {
    pub rows: usize,
    pub cols: usize,
    pub isolated: usize,
}

impl LowerBoundShape {
    pub fn component_size(&self) -> usize {
        self.rows * self.cols
    }

    /// Probability that a uniform ordered pair of distinct nodes lies in the component.
    pub fn pair_in_component_probability(&self) -> f64 {
        let a = self.component_size() as f64;
        let n = (self.component_size() + self.isolated) as f64;
        a * (a - 1.0) / (n * (n - 1.0))
    }

    /// Probability that such a pair is at distance exactly 2 (a nonempty betweenness sample).
    pub fn pair_at_distance_two_probability(&self) -> f64 {
        let (r, c) = (self.rows as f64, self.cols as f64);
        let n = (self.component_size() + self.isolated) as f64;
        r * c * (r - 1.0) * (c - 1.0) / (n * (n - 1.0))
    }
}

/// Rook graph on `⌊ε√n⌋ × ⌊√n⌋` cells (adjacent when sharing a row or a column)
/// padded with isolated nodes to `n` total. Component nodes come first.
pub fn gen_lower_bound(n: usize, eps: f64) -> Result<(Graph, LowerBoundShape)> {
    if !(eps > 0.0 && eps < 1.0) {
        return invalid(format!("eps must lie in (0, 1), got {eps}"));
    }
    let root = (n as f64).sqrt();
    let rows = (eps * root + 1e-9).floor() as usize;
    let cols = (root + 1e-9).floor() as usize;
    if rows < 2 || cols < 2 || rows * cols > n {
        return invalid(format!("degenerate lower-bound dimensions {rows}x{cols} for n = {n}"));
    }
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            for j2 in j + 1..cols {
                edges.push((id(i, j), id(i, j2)));
            }
            for i2 in i + 1..rows {
                edges.push((id(i, j), id(i2, j)));
            }
        }
    }
    let shape = LowerBoundShape {
        rows,
        cols,
        isolated: n - rows * cols,
    };
    Ok((Graph::from_edges(n, false, edges)?, shape))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::brandes;
    use crate::util::seeded_rng;

    #[test]
    fn kronecker_extremes() {
        let mut rng = seeded_rng(1, 0);
        let ones = KroneckerSeed::new([[1.0, 1.0], [1.0, 1.0]]).unwrap();
        let g = gen_kronecker(&ones, 2, KroneckerMethod::Exact, &mut rng).unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        let zeros = KroneckerSeed::new([[0.0; 2]; 2]).unwrap();
        for method in [KroneckerMethod::Exact, KroneckerMethod::BallDropping] {
            let g = gen_kronecker(&zeros, 5, method, &mut rng).unwrap();
            assert_eq!((g.n(), g.m()), (32, 0));
        }
        assert!(gen_kronecker(&ones, 0, KroneckerMethod::Auto, &mut rng).is_err());
        assert!(gen_kronecker(&ones, 25, KroneckerMethod::Auto, &mut rng).is_err());
        assert!(KroneckerSeed::new([[1.2, 0.0], [0.0, 0.0]]).is_err());
        assert_eq!(KroneckerSeed::parse("0.9,0.5,0.5,0.2").unwrap(), KroneckerSeed::CORE_PERIPHERY);
        assert!(KroneckerSeed::parse("0.9,0.5").is_err());
    }

    #[test]
    fn kronecker_expected_edges_formula() {
        let s = KroneckerSeed::CORE_PERIPHERY;
        for levels in 1..=6 {
            let n = 1usize << levels;
            let brute: f64 = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .map(|(u, v)| s.edge_probability(u, v, levels))
                .sum();
            assert!((brute - s.expected_edges(levels)).abs() < 1e-9);
        }
    }

    #[test]
    fn kronecker_ball_dropping_near_expectation() {
        let s = KroneckerSeed::CORE_PERIPHERY;
        let mut rng = seeded_rng(3, 0);
        let g = gen_kronecker(&s, 13, KroneckerMethod::Auto, &mut rng).unwrap();
        let e = s.expected_edges(13);
        assert_eq!(g.n(), 8192);
        // Repeats are rejected and redrawn, so the count tracks the Poisson draw.
        assert!((g.m() as f64 - e).abs() < 6.0 * e.sqrt(), "{} vs {e}", g.m());
    }

    #[test]
    fn ran_small_cases() {
        let mut rng = seeded_rng(4, 0);
        let g = gen_ran(3, &mut rng).unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        let mut st = RanState::new();
        st.step(&mut rng);
        assert_eq!((st.node_count(), st.edge_count(), st.face_count()), (4, 6, 3));
        assert_eq!(st.to_graph().m(), 6);
        let g = gen_ran(100, &mut rng).unwrap();
        assert_eq!(g.m(), 294);
        assert!(gen_ran(2, &mut rng).is_err());
    }

    #[test]
    fn ran_counts_every_step() {
        for seed in 0..10 {
            let mut rng = seeded_rng(seed, 0);
            let mut st = RanState::new();
            for _ in 0..200 {
                let (t, face) = st.step(&mut rng);
                let n = st.node_count();
                assert_eq!(st.edge_count(), 3 * n - 6);
                assert_eq!(st.face_count(), 2 * n - 5);
                assert!(face.iter().all(|&c| c < t));
            }
        }
    }

    #[test]
    fn hypercube_shapes() {
        let q2 = gen_hypercube(2).unwrap();
        assert_eq!((q2.n(), q2.m()), (4, 4));
        assert!((0..4).all(|v| q2.out_neighbors(v).len() == 2));
        let q3 = gen_hypercube(3).unwrap();
        assert_eq!((q3.n(), q3.m()), (8, 12));
        assert!(gen_hypercube(0).is_err() && gen_hypercube(17).is_err());
        let b = brandes(&gen_hypercube(4).unwrap());
        assert!(b.values.iter().all(|&x| (x - b.values[0]).abs() < 1e-9));
    }

    #[test]
    fn lower_bound_shape() {
        let (g, shape) = gen_lower_bound(400, 0.5).unwrap();
        assert_eq!(shape, LowerBoundShape { rows: 10, cols: 20, isolated: 200 });
        assert_eq!(g.n(), 400);
        // each cell sees its row (19) and column (9)
        assert!((0..200).all(|v| g.out_neighbors(v).len() == 28));
        assert!((200..400).all(|v| g.out_neighbors(v).is_empty()));
        for s in [0, 57, 199] {
            let d = crate::bfs::bfs_dag(&g, s).unwrap();
            assert!((0..200).all(|t| d.dist[t] <= 2));
        }
        assert!(gen_lower_bound(16, 0.25).is_err());
        assert!(gen_lower_bound(400, 1.0).is_err());
        assert!((shape.pair_in_component_probability() - 200.0 * 199.0 / (400.0 * 399.0)).abs() < 1e-15);
    }
}
