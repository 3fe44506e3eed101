//! Pick k central nodes of a random Apollonian network and compare the pooled
//! estimate with the exact group betweenness of the picked set.
//!
//! cargo run --release --example maximize_betweenness -- [n] [k]

use hedge::exact::set_bwc;
use hedge::generators::gen_ran;
use hedge::maximizer::{hedge_with_budget, Budget};
use hedge::{seeded_rng, SamplerSpec};

fn main() -> hedge::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let n = args.next().unwrap_or(2000);
    let k = args.next().unwrap_or(5);

    let g = gen_ran(n, &mut seeded_rng(1, 1))?;
    let mut rng = seeded_rng(1, 0);
    let run = hedge_with_budget(&g, SamplerSpec::Betweenness, k, Budget::PaperExp, 0.1, &mut rng)?;

    println!("{} samples on n={} m={}", run.sample_count, g.n(), g.m());
    for (i, (v, c)) in run.selected.iter().zip(run.scaled_centrality()).enumerate() {
        println!("round {}: node {v:>5}  estimated B(S)/α = {c:.4}", i + 1);
    }
    let exact = set_bwc(&g, &run.selected)? / run.alpha;
    println!("exact B(S)/α = {exact:.4}");
    Ok(())
}
