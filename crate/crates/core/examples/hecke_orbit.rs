//! The anti-Hecke group: relations, reduced words and the anti-Farey map.

use antiholo::external::{AntiHecke, GroupWord};
use antiholo::verify::word_separation;
use antiholo::{Result, SpherePoint};
use num_complex::Complex64;

pub struct Output {
    pub relation_residual: f64,
    pub separation: f64,
    pub fixed_residual: f64,
    pub words: usize,
}

pub fn run_example() -> Result<Output> {
    let g = AntiHecke::new(3)?;
    let base = Complex64::new(0.1, 0.05);
    let relation_residual = g.relation_residual(base);
    println!("relations at {base}: residual {relation_residual:.2e}");

    let words = GroupWord::reduced_words(3, 6);
    let separation = word_separation(&g, base, 6);
    println!(
        "{} reduced words of length <= 6, min separation {separation:.3e}",
        words.len()
    );
    for w in words.iter().filter(|w| w.len() == 3).take(4) {
        println!("  {:?} -> {}", w.0, g.apply(w, SpherePoint::Finite(base)));
    }

    let one = Complex64::new(1.0, 0.0);
    let fixed_residual = (g.anti_farey(one)? - one).norm();
    let r0 = g.rho1(Complex64::new(0.0, 0.0));
    println!(
        "R(1) - 1 = {fixed_residual:.2e}, R(rho1(0)) = {:.2e}",
        g.anti_farey(r0)?
    );
    Ok(Output {
        relation_residual,
        separation,
        fixed_residual,
        words: words.len(),
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
