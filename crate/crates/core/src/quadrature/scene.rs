use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

use super::univalence::{univalence_scan, UnivalenceReport};
use crate::error::{Error, Result};
use crate::numerics::{roots, Polynomial, RationalMap, SpherePoint};

/// Critical points within this distance of the unit circle count as lying on it.
pub const CRITICAL_TOL: f64 = 1e-6;

/// Scene file: `{"coeff_num": [[re,im],...], "coeff_den": [[re,im],...], "samples": n}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub coeff_num: Vec<[f64; 2]>,
    #[serde(default = "unit_den")]
    pub coeff_den: Vec<[f64; 2]>,
    #[serde(default = "default_samples")]
    pub samples: usize,
}

fn unit_den() -> Vec<[f64; 2]> {
    vec![[1.0, 0.0]]
}

fn default_samples() -> usize {
    4096
}

impl SceneSpec {
    pub fn polynomial(coeffs: &[Complex64], samples: usize) -> Self {
        SceneSpec {
            name: None,
            coeff_num: coeffs.iter().map(|c| [c.re, c.im]).collect(),
            coeff_den: unit_den(),
            samples,
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Schema(format!("scene file: {e}")))
    }

    pub fn map(&self) -> Result<RationalMap> {
        let num = Polynomial::try_from(self.coeff_num.clone()).map_err(Error::Schema)?;
        let den = Polynomial::try_from(self.coeff_den.clone()).map_err(Error::Schema)?;
        if den.degree() == 0 && !den.is_zero() {
            let c = den.coeffs()[0];
            return Ok(RationalMap::polynomial(num.scaled(1.0 / c)));
        }
        RationalMap::new(num, den)
    }

    /// Hex SHA-256 of the coefficients and sample count.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for c in self
            .coeff_num
            .iter()
            .chain(std::iter::once(&[f64::NAN, 0.0]))
            .chain(&self.coeff_den)
        {
            h.update(c[0].to_le_bytes());
            h.update(c[1].to_le_bytes());
        }
        h.update((self.samples as u64).to_le_bytes());
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub location: SpherePoint,
    pub multiplicity: usize,
}

/// A validated univalent map `f: 𝔻̄ → Ω̄` with its critical data.
#[derive(Clone, Debug)]
pub struct QuadratureScene {
    pub(crate) f: RationalMap,
    pub(crate) spec: SceneSpec,
    d: usize,
    circle_critical: Vec<Complex64>,
    exterior_critical: Vec<CriticalPoint>,
    cusps: Vec<Complex64>,
    univalence: UnivalenceReport,
}

impl QuadratureScene {
    pub fn from_spec(spec: &SceneSpec) -> Result<Self> {
        let f = spec.map()?;
        Self::build(f, spec.clone())
    }

    pub fn from_map(f: RationalMap, samples: usize) -> Result<Self> {
        let spec = SceneSpec {
            name: None,
            coeff_num: f.num().coeffs().iter().map(|c| [c.re, c.im]).collect(),
            coeff_den: f.den().coeffs().iter().map(|c| [c.re, c.im]).collect(),
            samples,
        };
        Self::build(f, spec)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_spec(&SceneSpec::load(path)?)
    }

    fn build(f: RationalMap, spec: SceneSpec) -> Result<Self> {
        let deg = f.degree();
        if deg < 2 {
            return Err(Error::DegenerateMap(format!("degree {deg} map has no reflection")));
        }
        let crit = critical_points(&f)?;
        let mut circle = Vec::new();
        let mut exterior = Vec::new();
        for c in crit {
            match c.location {
                SpherePoint::Finite(z) if z.norm() < 1.0 - CRITICAL_TOL => {
                    return Err(Error::NotUnivalent(format!("critical point {z} inside the disk")));
                }
                SpherePoint::Finite(z) if (z.norm() - 1.0).abs() <= CRITICAL_TOL => {
                    if c.multiplicity > 1 {
                        return Err(Error::HigherOrderCriticalPoint(z));
                    }
                    circle.push(z);
                }
                _ => exterior.push(c),
            }
        }
        let univalence = univalence_scan(&f, spec.samples)?;
        if !univalence.passed {
            return Err(Error::NotUnivalent(format!(
                "boundary scan failed: {} crossings, {} near-double points, winding {} (expected {}), gap {:e}",
                univalence.crossings,
                univalence.double_candidates.len(),
                univalence.winding,
                univalence.expected_winding,
                univalence.min_boundary_gap
            )));
        }
        let mut cusps = Vec::with_capacity(circle.len());
        for &c in &circle {
            match f.eval_finite(c)? {
                SpherePoint::Finite(y) => cusps.push(y),
                SpherePoint::Infinity => return Err(Error::NotUnivalent(format!("pole at circle critical point {c}"))),
            }
        }
        Ok(QuadratureScene {
            d: deg - 1,
            f,
            spec,
            circle_critical: circle,
            exterior_critical: exterior,
            cusps,
            univalence,
        })
    }

    pub fn map(&self) -> &RationalMap {
        &self.f
    }

    pub fn spec(&self) -> &SceneSpec {
        &self.spec
    }

    /// `d = deg f - 1`, the degree of `σ` on its domain.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn circle_critical_points(&self) -> &[Complex64] {
        &self.circle_critical
    }

    pub fn exterior_critical_points(&self) -> &[CriticalPoint] {
        &self.exterior_critical
    }

    /// Singular points of `∂Ω`: images of the circle critical points.
    pub fn cusps(&self) -> &[Complex64] {
        &self.cusps
    }

    pub fn univalence(&self) -> &UnivalenceReport {
        &self.univalence
    }

    /// Polynomial `f` with exactly one simple critical point on the circle.
    pub fn in_srd_shape(&self) -> bool {
        self.f.is_polynomial() && self.circle_critical.len() == 1
    }

    pub fn hash(&self) -> String {
        self.spec.hash()
    }

    /// Cusps, then double-point candidates from the boundary scan
    /// (the latter are always empty for a scene that was accepted).
    pub fn singular_points(&self) -> Vec<SingularPoint> {
        let cusps = self.cusps.iter().map(|&location| SingularPoint {
            location,
            kind: SingularKind::Cusp,
        });
        let doubles = self.univalence.double_candidates.iter().map(|&location| SingularPoint {
            location,
            kind: SingularKind::DoubleCandidate,
        });
        cusps.chain(doubles).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SingularKind {
    Cusp,
    DoubleCandidate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub location: Complex64,
    pub kind: SingularKind,
}

/// Critical points of `f` on the sphere with multiplicity; they total `2 deg f - 2`.
pub fn critical_points(f: &RationalMap) -> Result<Vec<CriticalPoint>> {
    let w = f.critical_numerator();
    let mut out = Vec::new();
    if w.degree() > 0 {
        for r in roots(&w, 1e-10)?.roots {
            out.push(CriticalPoint {
                location: SpherePoint::Finite(r.value),
                multiplicity: r.multiplicity,
            });
        }
    }
    let at_inf = (2 * f.degree() - 2).saturating_sub(w.degree());
    if at_inf > 0 {
        out.push(CriticalPoint {
            location: SpherePoint::Infinity,
            multiplicity: at_inf,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cardioid_scene() {
        let s =
            QuadratureScene::from_spec(&SceneSpec::polynomial(&[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)], 2048)).unwrap();
        assert_eq!(s.d(), 1);
        assert!(s.in_srd_shape());
        assert!((s.circle_critical_points()[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((s.cusps()[0] - c(-0.5, 0.0)).norm() < 1e-12);
        let sing = s.singular_points();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0].kind, SingularKind::Cusp);
    }

    #[test]
    fn no_singular_points_without_circle_critical_points() {
        let s = QuadratureScene::from_spec(&SceneSpec::polynomial(&[c(0.0, 0.0), c(1.0, 0.0), c(0.25, 0.0)], 1024))
            .unwrap();
        assert!(s.singular_points().is_empty());
    }

    #[test]
    fn interior_critical_point_rejected() {
        let e = QuadratureScene::from_spec(&SceneSpec::polynomial(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)], 512));
        assert!(matches!(e, Err(Error::NotUnivalent(_))));
    }

    #[test]
    fn double_circle_critical_point_rejected() {
        // f' = (1+z)^2
        let e = QuadratureScene::from_spec(&SceneSpec::polynomial(
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0 / 3.0, 0.0)],
            512,
        ));
        assert!(matches!(e, Err(Error::HigherOrderCriticalPoint(_))), "{e:?}");
    }

    #[test]
    fn critical_count() {
        let f = RationalMap::new(
            Polynomial::from_real(&[1.0, 0.0, 0.0, 0.0, 1.0]),
            Polynomial::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let total: usize = critical_points(&f).unwrap().iter().map(|c| c.multiplicity).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn spec_json_defaults() {
        let s: SceneSpec = serde_json::from_str(r#"{"coeff_num": [[0,0],[1,0],[0.5,0]]}"#).unwrap();
        assert_eq!(s.samples, 4096);
        assert_eq!(s.coeff_den, vec![[1.0, 0.0]]);
        assert!(serde_json::from_str::<SceneSpec>(r#"{"coeff_num": [], "bogus": 1}"#).is_err());
        assert_eq!(s.hash().len(), 64);
    }
}
