//! Remove nodes in centrality order and track the largest component.
//!
//! cargo run --release --example attack_curves

use hedge::experiments::{attack_curve, centrality_ordering, OrderingMethod, ORDERING_EPS};
use hedge::generators::gen_ran;
use hedge::seeded_rng;

fn main() -> hedge::Result<()> {
    let g = gen_ran(3000, &mut seeded_rng(9, 1))?;
    let cap = 200;
    for method in ["betweenness", "coverage", "kpath:2", "triangle"] {
        let method: OrderingMethod = method.parse()?;
        let order = centrality_ordering(&g, method, ORDERING_EPS, &mut seeded_rng(9, 0))?;
        let curve = attack_curve(&g, &order, cap)?;
        let at = |i: usize| curve.points[i].1;
        println!("{method:<12} lcc after 0/10/50/200 removals: {} {} {} {}", at(0), at(10), at(50), at(cap));
    }
    Ok(())
}
