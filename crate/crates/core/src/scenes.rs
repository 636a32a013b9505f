//! Bundled scenes.
//!
//! The polynomial scenes all have the single simple circle critical point
//! `-1`; they are built from `f' = (1+z) Π (1 - z/c_k)` with `f(0) = 0`.

use num_complex::Complex64;

use crate::error::Result;
use crate::numerics::{Polynomial, RationalMap};
use crate::quadrature::{QuadratureScene, SceneSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Integrates `Π (1 - z/c)` over the given critical points, with `f(0) = 0`.
pub fn from_critical_points(critical: &[Complex64]) -> Polynomial {
    let mut fp = Polynomial::one();
    for &cp in critical {
        fp = &fp * &Polynomial::new(vec![c(1.0, 0.0), -1.0 / cp]);
    }
    let mut coeffs = vec![c(0.0, 0.0)];
    coeffs.extend(fp.coeffs().iter().enumerate().map(|(k, &a)| a / (k as f64 + 1.0)));
    Polynomial::new(coeffs)
}

fn named(name: &str, p: Polynomial, samples: usize) -> SceneSpec {
    let mut s = SceneSpec::polynomial(p.coeffs(), samples);
    s.name = Some(name.to_string());
    s
}

/// `f = z + z²/2`: the cardioid, `d = 1`.
pub fn cardioid() -> SceneSpec {
    named("cardioid", Polynomial::from_real(&[0.0, 1.0, 0.5]), 4096)
}

/// `f = z + 3z²/4 + z³/6`, critical points `-1` and `-2`; the main cubic scene.
pub fn cubic() -> SceneSpec {
    named("cubic", Polynomial::from_real(&[0.0, 1.0, 0.75, 1.0 / 6.0]), 4096)
}

/// Cubic with exterior critical point `-3`.
pub fn cubic_far() -> SceneSpec {
    named("cubic-far", from_critical_points(&[c(-1.0, 0.0), c(-3.0, 0.0)]), 4096)
}

/// Cubic with exterior critical point `3i`; not symmetric under conjugation.
pub fn cubic_skew() -> SceneSpec {
    named("cubic-skew", from_critical_points(&[c(-1.0, 0.0), c(0.0, 3.0)]), 4096)
}

/// Quartic with exterior critical points `-3` and `4`.
pub fn quartic() -> SceneSpec {
    named(
        "quartic",
        from_critical_points(&[c(-1.0, 0.0), c(-3.0, 0.0), c(4.0, 0.0)]),
        4096,
    )
}

pub fn all() -> Vec<SceneSpec> {
    vec![cardioid(), cubic(), cubic_far(), cubic_skew(), quartic()]
}

pub fn by_name(name: &str) -> Option<SceneSpec> {
    all().into_iter().find(|s| s.name.as_deref() == Some(name))
}

/// `f₁ ∘ M⁻¹` with `f₁ = z² + z⁻²` and `M` the affine map sending the disk
/// of radius 0.3 about `e^{iπ/4}` onto `𝔻`. Its correspondence is the
/// deck group of `f₁` conjugated by `M`.
pub struct DeckScene {
    pub centre: Complex64,
    pub radius: f64,
    pub map: RationalMap,
}

impl DeckScene {
    pub fn new() -> Result<Self> {
        let centre = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        let radius = 0.3;
        // u = centre + radius w
        let u = Polynomial::new(vec![centre, c(radius, 0.0)]);
        let u2 = &u * &u;
        let num = &(&u2 * &u2) + &Polynomial::one();
        let map = RationalMap::new(num, u2)?;
        Ok(DeckScene { centre, radius, map })
    }

    pub fn scene(&self, samples: usize) -> Result<QuadratureScene> {
        QuadratureScene::from_map(self.map.clone(), samples)
    }

    fn plane(&self, w: Complex64) -> Complex64 {
        self.centre + self.radius * w
    }

    fn disk(&self, u: Complex64) -> Complex64 {
        (u - self.centre) / self.radius
    }

    /// `M h M⁻¹(w)` for the three nontrivial deck maps `h ∈ {-z, 1/z, -1/z}`.
    pub fn deck_images(&self, w: Complex64) -> [Complex64; 3] {
        let u = self.plane(w);
        [self.disk(-u), self.disk(1.0 / u), self.disk(-1.0 / u)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_coefficients() {
        let p = from_critical_points(&[c(-1.0, 0.0), c(-2.0, 0.0)]);
        let q = Polynomial::from_real(&[0.0, 1.0, 0.75, 1.0 / 6.0]);
        for (a, b) in p.coeffs().iter().zip(q.coeffs()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn bundled_scenes_build() {
        for spec in all() {
            let s = QuadratureScene::from_spec(&spec).unwrap();
            assert!(s.in_srd_shape(), "{:?}", spec.name);
            assert!((s.circle_critical_points()[0] + 1.0).norm() < 1e-9);
        }
    }

    #[test]
    fn deck_scene_has_no_cusps() {
        let d = DeckScene::new().unwrap();
        let s = d.scene(2048).unwrap();
        assert_eq!(s.d(), 3);
        assert!(s.cusps().is_empty());
    }
}
