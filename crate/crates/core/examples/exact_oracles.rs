//! Exact oracles on a small graph: per-node Brandes scores, exact greedy, brute
//! force, and the adaptive marginals that drive exact greedy.
//!
//! cargo run --release --example exact_oracles

use hedge::exact::{all_adaptive_bwc, brandes, brute_force_max, ex_greedy, set_bwc};
use hedge::Graph;

fn main() -> hedge::Result<()> {
    // two triangles joined through a bridge node 3
    let g = Graph::from_edges(7, false, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 6)])?;

    let b = brandes(&g);
    println!("brandes: {:?}", b.values);
    println!("argmax:  {:?}", b.argmax());

    let greedy = ex_greedy(&g, 3)?;
    println!("ex_greedy: {:?} values {:?}", greedy.selected, greedy.values);
    for k in 1..=3 {
        let (set, best) = brute_force_max(&g, k)?;
        println!("MAX_{k} = {best} at {set:?}");
    }

    let s = [3];
    let gains = all_adaptive_bwc(&g, &s)?;
    println!("B({s:?}) = {}", set_bwc(&g, &s)?);
    println!("marginal gains given {s:?}: {gains:?}");
    Ok(())
}
