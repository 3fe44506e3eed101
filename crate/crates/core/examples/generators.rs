//! Synthetic graph families and their basic counts.
//!
//! cargo run --release --example generators

use hedge::generators::{gen_hypercube, gen_kronecker, gen_lower_bound, KroneckerMethod, KroneckerSeed, RanState};
use hedge::seeded_rng;

fn main() -> hedge::Result<()> {
    let mut rng = seeded_rng(7, 1);

    let mut ran = RanState::new();
    for _ in 0..997 {
        ran.step(&mut rng);
    }
    println!("RAN: {} nodes, {} edges, {} faces", ran.node_count(), ran.edge_count(), ran.face_count());

    for r in [4, 8, 12] {
        let g = gen_hypercube(r)?;
        println!("hypercube r={r}: n={} m={}", g.n(), g.m());
    }

    let seed = KroneckerSeed::CORE_PERIPHERY;
    for i in [8, 12, 16] {
        let g = gen_kronecker(&seed, i, KroneckerMethod::Auto, &mut rng)?;
        println!("kronecker i={i}: n={} m={} (expected {:.0})", g.n(), g.m(), seed.expected_edges(i));
    }

    let (g, shape) = gen_lower_bound(10_000, 0.5)?;
    println!(
        "lower bound: n={} m={}, {}x{} grid plus {} isolated nodes",
        g.n(),
        g.m(),
        shape.rows,
        shape.cols,
        shape.isolated
    );
    Ok(())
}
