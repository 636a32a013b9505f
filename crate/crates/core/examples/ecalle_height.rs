//! Parabolic constants of `z̄^d + c_d` and Écalle heights for `B_d`.

use antiholo::external::{ecalle_height, fatou_coordinate, parabolic_model_data, ParabolicModel};
use antiholo::Result;
use num_complex::Complex64;

pub struct Output {
    pub models: Vec<ParabolicModel>,
    pub heights_at_zero: Vec<f64>,
    pub functional_residual: f64,
}

pub fn run_example() -> Result<Output> {
    let mut models = Vec::new();
    for d in 2..=6 {
        let m = parabolic_model_data(d)?;
        println!(
            "d = {d}: c = {:.12}, z0 = {:.12}, |p(z0) - z0| = {:.1e}, (p∘p)'(z0) = {:.8}",
            m.c, m.z0, m.fixed_residual, m.second_iterate_derivative
        );
        models.push(m);
    }

    let mut heights_at_zero = Vec::new();
    for d in [2, 3] {
        let h = ecalle_height(d, Complex64::new(0.0, 0.0))?;
        println!("height of 0 for B_{d}: {h:.3e}");
        heights_at_zero.push(h);
    }

    // φ(F z) = φ(z) + 1 for F = B ∘ B
    let z = Complex64::new(0.1, 0.35);
    let a = fatou_coordinate(2, z, 1 << 22, 1e-7)?;
    let one = antiholo::SpherePoint::Finite(z);
    let fz = antiholo::external::blaschke(2, antiholo::external::blaschke(2, one))
        .finite()
        .expect("B_2 keeps the disk");
    let b = fatou_coordinate(2, fz, 1 << 22, 1e-7)?;
    let functional_residual = (b.phi - a.phi - 1.0).norm();
    println!(
        "phi({z}) = {:.6}, height {:.6}, |phi(Fz) - phi(z) - 1| = {functional_residual:.1e}",
        a.phi, a.phi.im
    );
    Ok(Output {
        models,
        heights_at_zero,
        functional_residual,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
