//! The circle conjugacy between `z̄²` and the anti-Farey map, sampled on
//! `2⁸` points.

use antiholo::external::{boundary_conjugacy, BoundaryConjugacy};
use antiholo::Result;
use std::f64::consts::TAU;

pub fn run_example() -> Result<BoundaryConjugacy> {
    let h = boundary_conjugacy(2, 8)?;
    println!(
        "depth {}: {} samples, {} order violations, residual {:.2e}",
        h.depth,
        h.source.len(),
        h.order_violations,
        h.max_residual
    );
    for k in 0..8 {
        let t = TAU * k as f64 / 8.0;
        println!("  h({t:.4}) = {:.6}", h.eval(t));
    }
    Ok(h)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
