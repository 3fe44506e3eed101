//! Independent-cascade spread of seed sets chosen by influence maximization
//! and by group centralities.
//!
//! cargo run --release --example influence

use hedge::experiments::{influence_comparison, write_influence_csv, InfluenceMethod, InfluenceSetup};
use hedge::generators::gen_ran;
use hedge::seeded_rng;

fn main() -> hedge::Result<()> {
    let g = gen_ran(1000, &mut seeded_rng(11, 1))?;
    let setup = InfluenceSetup {
        ks: vec![1, 5, 10],
        methods: InfluenceMethod::ALL.to_vec(),
        p: 0.05,
        num_rr: 20_000,
        runs: 2_000,
        eps: 0.25,
        kappa: 2,
    };
    let rows = influence_comparison(&g, &setup, 11, &mut seeded_rng(11, 0))?;
    write_influence_csv(&rows, std::io::stdout().lock())
}
