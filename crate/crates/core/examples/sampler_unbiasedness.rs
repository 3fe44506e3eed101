//! Empirical check that Pr(h ∩ S ≠ ∅) = B(S)/α for the betweenness sampler.
//!
//! cargo run --release --example sampler_unbiasedness

use hedge::exact::set_bwc;
use hedge::generators::gen_ran;
use hedge::sampling::Sampler;
use hedge::{seeded_rng, SamplerSpec};

fn main() -> hedge::Result<()> {
    let g = gen_ran(60, &mut seeded_rng(5, 1))?;
    let mut sampler = Sampler::new(&g, SamplerSpec::Betweenness)?;
    let mut rng = seeded_rng(5, 0);
    let sets: [&[usize]; 3] = [&[0], &[3, 10], &[20, 30, 40]];
    let draws = 200_000;

    let masks: Vec<Vec<bool>> = sets.iter().map(|s| (0..g.n()).map(|v| s.contains(&v)).collect()).collect();
    let mut hits = [0usize; 3];
    for _ in 0..draws {
        let h = sampler.draw(&mut rng);
        for (c, m) in hits.iter_mut().zip(&masks) {
            *c += usize::from(h.hits(m));
        }
    }
    for (s, c) in sets.iter().zip(hits) {
        let want = set_bwc(&g, s)? / sampler.alpha();
        let got = c as f64 / draws as f64;
        let sd = (want * (1.0 - want) / draws as f64).sqrt();
        println!("S={s:?}: exact {want:.5} sampled {got:.5} ({:+.2} sd)", (got - want) / sd);
    }
    Ok(())
}
