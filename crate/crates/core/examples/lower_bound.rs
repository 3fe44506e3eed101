//! On the lower-bound instance only pairs inside the grid component produce a
//! nonempty hyper-edge, so the nonempty rate tracks the pair probability.
//!
//! cargo run --release --example lower_bound

use hedge::generators::gen_lower_bound;
use hedge::sampling::Sampler;
use hedge::{seeded_rng, SamplerSpec};

fn main() -> hedge::Result<()> {
    let mut rng = seeded_rng(17, 0);
    for eps in [0.5, 0.3, 0.1] {
        let (g, shape) = gen_lower_bound(10_000, eps)?;
        let mut sampler = Sampler::new(&g, SamplerSpec::Betweenness)?;
        let draws = 50_000;
        let nonempty = (0..draws).filter(|_| !sampler.draw(&mut rng).is_empty()).count();
        println!(
            "eps={eps}: grid {}x{}, nonempty {:.4}, pair in grid {:.4}, pair at distance 2 {:.4}",
            shape.rows,
            shape.cols,
            nonempty as f64 / draws as f64,
            shape.pair_in_component_probability(),
            shape.pair_at_distance_two_probability()
        );
    }
    Ok(())
}
