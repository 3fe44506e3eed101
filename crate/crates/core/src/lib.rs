//! Group betweenness maximization by hyper-edge sampling.
//!
//! The crate is organised around one idea: a centrality measure that admits a
//! *hyper-edge sampler* (a randomized procedure whose output set `h` satisfies
//! `Pr(h ∩ S ≠ ∅) = C(S) / α` for every node set `S`) can be maximized by
//! drawing a pool of hyper-edges and running greedy maximum coverage over it.
//!
//! * [`graph`] and [`bfs`]: sparse graphs, edge-list IO, shortest-path DAGs.
//! * [`sampling`]: samplers for betweenness, coverage, κ-path and reverse-reachable sets.
//! * [`maximizer`]: the pooled greedy maximizer and its sample budgets.
//! * [`exact`]: exact oracles (Brandes, set betweenness, exact greedy, brute force).
//! * [`generators`]: Kronecker, random Apollonian, hypercube and lower-bound graphs.
//! * [`experiments`]: attack curves, influence spread, time-evolving snapshots.
//! * [`cli`]: the command surface used by the `hedge` binary.

pub mod bfs;
pub mod cli;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod generators;
pub mod graph;
pub mod maximizer;
pub mod sampling;
mod util;

pub use error::{Error, Result};
pub use graph::{Graph, NodeId};
pub use maximizer::{HyperEdgePool, RunResult};
pub use sampling::{HyperEdge, SamplerSpec};
pub use util::seeded_rng;
