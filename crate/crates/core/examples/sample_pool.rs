//! Build a hyper-edge pool in parallel, save it, load it back and cover it.
//!
//! cargo run --release --example sample_pool

use hedge::generators::gen_ran;
use hedge::maximizer::{build_pool_parallel, greedy_cover};
use hedge::{seeded_rng, HyperEdgePool, SamplerSpec};

fn main() -> hedge::Result<()> {
    let g = gen_ran(500, &mut seeded_rng(19, 1))?;
    let pool = build_pool_parallel(&g, SamplerSpec::Coverage, 10_000, 19, 4)?;
    let empty = pool.edges().iter().filter(|h| h.is_empty()).count();
    println!("{} hyper-edges, {empty} empty", pool.len());

    let mut buf = Vec::new();
    pool.write_to(&mut buf)?;
    let loaded = HyperEdgePool::read_from(&buf[..], g.n(), pool.alpha())?;
    assert_eq!(loaded, pool);

    let run = greedy_cover(&loaded, 4)?;
    println!("picked {:?}, marginal degrees {:?}", run.selected, run.marginal_degrees);
    Ok(())
}
