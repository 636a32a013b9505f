//! The bundled cubic scene: critical data, membership, `σ` and tile ranks.

use antiholo::quadrature::Membership;
use antiholo::{scenes, QuadratureScene, Result, SpherePoint, TileLabel};
use num_complex::Complex64;

pub struct Probe {
    pub point: Complex64,
    pub membership: Membership,
    pub label: TileLabel,
}

pub fn run_example() -> Result<(QuadratureScene, Vec<Probe>)> {
    let scene = QuadratureScene::from_spec(&scenes::cubic())?;
    println!("degree of sigma: {}", scene.d());
    for c in scene.circle_critical_points() {
        println!("critical point on the circle: {c:.6}");
    }
    for c in scene.exterior_critical_points() {
        println!("other critical point: {} (multiplicity {})", c.location, c.multiplicity);
    }
    for s in scene.singular_points() {
        println!("{:?} at {:.6}", s.kind, s.location);
    }

    let mut probes = Vec::new();
    for z in [
        Complex64::new(0.0, 0.0),
        Complex64::new(-1.0 / 3.0, 0.0),
        Complex64::new(-0.4, 0.05),
        Complex64::new(0.9, 0.4),
        Complex64::new(3.0, 0.0),
    ] {
        let p = SpherePoint::Finite(z);
        let membership = scene.membership(p)?;
        let label = scene.tile_rank(p, 200);
        let image = match membership {
            Membership::Outside => "-".to_string(),
            _ => scene.schwarz(p)?.to_string(),
        };
        println!("{z:>14.4}  {membership:?}  sigma = {image}  {label:?}");
        probes.push(Probe {
            point: z,
            membership,
            label,
        });
    }
    Ok((scene, probes))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example().map(|_| ())
}
