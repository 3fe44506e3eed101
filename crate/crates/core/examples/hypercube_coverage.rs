//! Coverage centrality of one hypercube node against n².
//!
//! cargo run --release --example hypercube_coverage

use hedge::exact::exact_coverage;
use hedge::generators::gen_hypercube;

fn main() -> hedge::Result<()> {
    println!("r,n,coverage,coverage_over_n2,closed_form");
    for r in 2..=10u32 {
        let g = gen_hypercube(r)?;
        let n = g.n() as f64;
        let c = exact_coverage(&g, &[0])?;
        // ordered pairs with 0 on a shortest path, minus the pairs where 0 is an endpoint
        let closed = 3f64.powi(r as i32) - 2f64.powi(r as i32 + 1) + 1.0;
        println!("{r},{},{c},{:.5},{closed}", g.n(), c / (n * n));
    }
    Ok(())
}
