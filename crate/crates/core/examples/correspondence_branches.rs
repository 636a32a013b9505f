//! Forward and backward branches of the correspondence, the tuple map and a
//! short grand-orbit walk on the cubic scene.

use antiholo::correspondence::{
    backward_images, distinguished_branch, forward_images, group_orbit_check, tuple_check, OrbitReport, TupleReport,
};
use antiholo::{eta, scenes, QuadratureScene, Result, SpherePoint};
use num_complex::Complex64;

pub struct Output {
    pub branch_residual: f64,
    pub conjugacy_residual: f64,
    pub tuple: TupleReport,
    pub orbit: OrbitReport,
}

pub fn run_example() -> Result<Output> {
    let scene = QuadratureScene::from_spec(&scenes::cubic())?;
    let z = Complex64::from_polar(0.9, 0.5);
    let fwd = forward_images(&scene, SpherePoint::Finite(z))?;
    let bwd = backward_images(&scene, SpherePoint::Finite(z))?;
    println!("forward images of {z}:");
    for w in &fwd.images {
        println!("  {w}");
    }
    println!("backward images of {z}:");
    for w in &bwd.images {
        println!("  {w}");
    }

    // pick z = η(a) where a is another preimage of f(w₁); then the branch
    // staying in the disk sends z back to w₁, and it is σ read through f
    let w1 = Complex64::new(0.2, 0.1);
    let fib = scene.map().fiber(SpherePoint::Finite(w1))?;
    let z = fib
        .others
        .iter()
        .filter_map(|p| eta(*p).finite())
        .find(|z| z.norm() < 1.0)
        .expect("a preimage outside the disk");
    let b = distinguished_branch(&scene, z)?;
    let lhs = scene.map().eval(SpherePoint::Finite(b))?;
    let rhs = scene.schwarz(scene.map().eval(SpherePoint::Finite(z))?)?;
    let conjugacy_residual = antiholo::numerics::rel_dist(lhs, rhs);
    println!("branch at {z:.6} is {b:.6} (w1 = {w1}), |f(b) - sigma(f(z))| = {conjugacy_residual:.2e}");

    let tuple = tuple_check(&scene, SpherePoint::Finite(Complex64::new(0.3, 0.1)), 1e-8)?;
    println!(
        "tuple map: {} points, worst mismatch {:.2e}",
        tuple.tuple.len(),
        tuple.max_distance
    );

    let orbit = group_orbit_check(&scene, SpherePoint::Finite(Complex64::new(-1.5, 0.2)), 3, 1e-8)?;
    println!(
        "orbit walk: {} points, {} invariance failures, {} rank violations",
        orbit.points_visited, orbit.invariance_failures, orbit.rank_violations
    );
    Ok(Output {
        branch_residual: fwd.residual.max(bwd.residual),
        conjugacy_residual,
        tuple,
        orbit,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
