//! Cusp germs: exact coefficients, classification, the normalising
//! coordinate, and the cusp of each bundled scene.

use antiholo::cusp::{
    cusp_type, exact, inverse_puiseux, quad_cusp_report, schwarz_germ, Coeff, CuspReport, Exact, FormalSeries,
};
use antiholo::verify::normalization_decay;
use antiholo::{scenes, QuadratureScene, Result};

pub struct Output {
    pub table: Vec<CuspReport>,
    pub decay_slope: f64,
    pub scene_reports: Vec<(String, CuspReport, bool)>,
}

pub fn run_example() -> Result<Output> {
    let zero = exact(0, 0, 1);
    let one = exact(1, 0, 1);
    // w² + w³ and w² + i w³ + w⁵, coefficients from the linear term on
    let a: FormalSeries<Exact> = FormalSeries::polynomial(vec![zero.clone(), one.clone(), one.clone()]);
    let b: FormalSeries<Exact> = FormalSeries::polynomial(vec![
        zero.clone(),
        one.clone(),
        exact(0, 1, 1),
        zero.clone(),
        one.clone(),
    ]);

    let p = inverse_puiseux(&a, 6)?;
    println!(
        "inverse Puiseux coefficients of w^2 + w^3: {:?}",
        &p.to_c64().coeffs()[..4]
    );
    let germ = schwarz_germ(&a, 6)?;
    let c: Vec<_> = (2..=germ.order())
        .map(|n| germ.coeff(n).map(|x| x.to_c64()))
        .collect::<Result<_>>()?;
    println!("sigma germ from t^2: {c:?}");

    let mut table = Vec::new();
    for (name, f) in [("w^2 + w^3", &a), ("w^2 + i w^3 + w^5", &b)] {
        let r = cusp_type(f)?;
        println!(
            "{name}: ({}, 2), axis {:?}, {} invariant directions, attracting = {}",
            r.n, r.axis, r.directions, r.has_attracting
        );
        table.push(r);
    }

    let (pts, decay_slope) = normalization_decay()?;
    for (t, r) in &pts {
        println!("  |zeta| = {t:9.1}  residual {r:.3e}");
    }
    println!("log-log slope {decay_slope:.3}");

    let mut scene_reports = Vec::new();
    for spec in scenes::all() {
        let name = spec.name.clone().unwrap_or_default();
        let scene = QuadratureScene::from_spec(&spec)?;
        let c = quad_cusp_report(&scene)?;
        let mut agree = true;
        for delta in [1e-3, 1e-4, 1e-5] {
            agree &= c.drift_character(&scene, delta)? == c.report.axis;
        }
        println!(
            "{name}: cusp {:.6}, n = {}, {:?}, drift agrees = {agree}",
            c.cusp, c.report.n, c.report.axis
        );
        scene_reports.push((name, c.report, agree));
    }
    Ok(Output {
        table,
        decay_slope,
        scene_reports,
    })
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
