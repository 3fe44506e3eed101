//! The same greedy maximizer driven by coverage, κ-path and reverse-reachable
//! samplers.
//!
//! cargo run --release --example other_centralities

use hedge::generators::{gen_kronecker, KroneckerMethod, KroneckerSeed};
use hedge::maximizer::{hedge_with_budget, Budget};
use hedge::{seeded_rng, SamplerSpec};

fn main() -> hedge::Result<()> {
    let g = gen_kronecker(&KroneckerSeed::CORE_PERIPHERY, 10, KroneckerMethod::Auto, &mut seeded_rng(3, 1))?;
    println!("Kronecker graph: n={} m={}", g.n(), g.m());

    let specs = ["betweenness", "coverage", "kpath:3", "rr:0.05"];
    for spec in specs {
        let spec: SamplerSpec = spec.parse()?;
        let mut rng = seeded_rng(3, 0);
        let run = hedge_with_budget(&g, spec, 5, Budget::Explicit { count: 20_000 }, 0.1, &mut rng)?;
        println!("{spec:<14} picks {:?}  scaled estimate {:.4}", run.selected, run.final_estimate() / run.alpha);
    }
    Ok(())
}
