//! Scaled group centrality across a Kronecker size sweep and across snapshots
//! of a temporal edge list.
//!
//! cargo run --release --example evolution

use hedge::experiments::{evolve, kronecker_series};
use hedge::generators::{KroneckerMethod, KroneckerSeed};
use hedge::graph::{SnapshotMode, TemporalEdge, TemporalEdgeList};
use hedge::{seeded_rng, SamplerSpec};
use rand::Rng;

fn main() -> hedge::Result<()> {
    let mut rng = seeded_rng(13, 0);
    let series = kronecker_series(
        &KroneckerSeed::CORE_PERIPHERY,
        8..=12,
        &[1, 10],
        SamplerSpec::Betweenness,
        0.25,
        KroneckerMethod::Auto,
        &mut rng,
    )?;
    series.write_csv(std::io::stdout().lock())?;

    // a growing random graph: edge t joins a new or old node to an older one
    let edges = (1..4000i64)
        .map(|t| {
            let u = rng.gen_range(0..=(t / 4).max(1));
            let v = rng.gen_range(0..=u.max(1));
            TemporalEdge { u, v, t }
        })
        .collect();
    let temporal = TemporalEdgeList::new(edges);
    let times = temporal.quantile_times(4);
    let series = evolve(&temporal, &times, &[1, 10], SamplerSpec::Betweenness, 0.25, SnapshotMode::Cumulative, false, &mut rng)?;
    series.write_csv(std::io::stdout().lock())
}
