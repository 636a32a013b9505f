use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::QuadratureScene;
use crate::error::{Error, Result};
use crate::numerics::{eta, rel_dist, SpherePoint};

/// Preimages within this distance of the unit circle are boundary points.
pub const BOUNDARY_TOL: f64 = 1e-6;

const CUSP_TOL: f64 = 1e-9;
const CYCLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// Membership together with the preimage in the closed disk, if any.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Located {
    pub membership: Membership,
    pub disk_preimage: Option<SpherePoint>,
}

/// Tile rank of a point under `σ`.
///
/// `NonEscaping(n)` means no escape within `n` steps, including early
/// detection of an attracting fixed point or 2-cycle inside `Ω`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TileLabel {
    TileRank(u32),
    NonEscaping(u32),
    #[default]
    Indeterminate,
}

impl TileLabel {
    pub fn rank(self) -> Option<u32> {
        match self {
            TileLabel::TileRank(n) => Some(n),
            _ => None,
        }
    }
}

impl QuadratureScene {
    fn classify(&self, pts: impl Iterator<Item = SpherePoint>) -> Result<Located> {
        let mut inside: Option<(f64, SpherePoint)> = None;
        let mut band: Vec<SpherePoint> = Vec::new();
        for p in pts {
            let r = p.modulus();
            if r < 1.0 - BOUNDARY_TOL {
                if inside.is_none_or(|(best, _)| r < best) {
                    inside = Some((r, p));
                }
            } else if (r - 1.0).abs() <= BOUNDARY_TOL && !band.iter().any(|&q| rel_dist(p, q) <= 1e-7) {
                band.push(p);
            }
        }
        if let Some((_, w)) = inside {
            return Ok(Located {
                membership: Membership::Inside,
                disk_preimage: Some(w),
            });
        }
        match band.len() {
            0 => Ok(Located {
                membership: Membership::Outside,
                disk_preimage: None,
            }),
            1 => Ok(Located {
                membership: Membership::Boundary,
                disk_preimage: Some(band[0]),
            }),
            _ => Err(Error::Indeterminate {
                candidates: band.iter().filter_map(|p| p.finite()).collect(),
            }),
        }
    }

    /// Classifies `z` against `Ω` by solving `f(w) = z`.
    pub fn locate(&self, z: SpherePoint) -> Result<Located> {
        let pre = self.f.preimages(z)?;
        self.classify(pre.into_iter().map(|(p, _)| p))
    }

    /// Like [`locate`](Self::locate) for `f(a)`, reusing the known preimage `a`.
    pub fn locate_image_of(&self, a: SpherePoint) -> Result<(SpherePoint, Located)> {
        let fib = self.f.fiber(a)?;
        let loc = self.classify(std::iter::once(a).chain(fib.others.iter().copied()))?;
        Ok((fib.value, loc))
    }

    pub fn membership(&self, z: SpherePoint) -> Result<Membership> {
        Ok(self.locate(z)?.membership)
    }

    /// The Schwarz reflection. Boundary points are fixed.
    pub fn schwarz(&self, z: SpherePoint) -> Result<SpherePoint> {
        let loc = self.locate(z)?;
        match loc.membership {
            Membership::Outside => Err(Error::OutsideDomain),
            Membership::Boundary => Ok(z),
            Membership::Inside => self
                .f
                .eval(eta(loc.disk_preimage.expect("inside point has a preimage"))),
        }
    }

    pub fn near_cusp(&self, z: SpherePoint) -> bool {
        match z {
            SpherePoint::Finite(z) => self
                .cusps()
                .iter()
                .any(|y| (z - y).norm() <= CUSP_TOL * y.norm().max(1.0)),
            SpherePoint::Infinity => false,
        }
    }

    /// Smallest `n ≥ 0` with `σ^n(z) ∉ Ω̄`, computed up to `max_iter` steps.
    pub fn tile_rank(&self, z: SpherePoint, max_iter: u32) -> TileLabel {
        if self.near_cusp(z) {
            return TileLabel::NonEscaping(max_iter);
        }
        match self.locate(z) {
            Ok(loc) => self.rank_from(z, loc, max_iter),
            Err(_) => TileLabel::Indeterminate,
        }
    }

    /// Tile rank of `f(z)`, the label of `z` in the lifted partition.
    pub fn lifted_label(&self, z: SpherePoint, max_iter: u32) -> TileLabel {
        match self.locate_image_of(z) {
            Ok((v, loc)) => {
                if self.near_cusp(v) {
                    return TileLabel::NonEscaping(max_iter);
                }
                self.rank_from(v, loc, max_iter)
            }
            Err(_) => TileLabel::Indeterminate,
        }
    }

    fn rank_from(&self, z: SpherePoint, loc: Located, max_iter: u32) -> TileLabel {
        let mut cur = z;
        let mut loc = loc;
        let mut prev: Option<SpherePoint> = None;
        let mut n = 0u32;
        loop {
            match loc.membership {
                Membership::Outside => return TileLabel::TileRank(n),
                Membership::Boundary => {
                    return if self.near_cusp(cur) {
                        TileLabel::NonEscaping(max_iter)
                    } else {
                        TileLabel::Indeterminate
                    }
                }
                Membership::Inside => {}
            }
            if n == max_iter {
                return TileLabel::NonEscaping(max_iter);
            }
            let a = eta(loc.disk_preimage.expect("inside point has a preimage"));
            let (next, next_loc) = match self.locate_image_of(a) {
                Ok(r) => r,
                Err(Error::Indeterminate { .. }) => return TileLabel::Indeterminate,
                Err(_) => match self.f.eval(a).and_then(|v| Ok((v, self.locate(v)?))) {
                    Ok(r) => r,
                    Err(_) => return TileLabel::Indeterminate,
                },
            };
            n += 1;
            if next_loc.membership == Membership::Inside
                && (rel_dist(next, cur) <= CYCLE_TOL || prev.is_some_and(|p| rel_dist(next, p) <= CYCLE_TOL))
            {
                return TileLabel::NonEscaping(max_iter);
            }
            if self.near_cusp(next) {
                return TileLabel::NonEscaping(max_iter);
            }
            prev = Some(cur);
            cur = next;
            loc = next_loc;
        }
    }

    /// `σ^n(z)` with the rank-0 tile and boundary handled as in `schwarz`.
    pub fn schwarz_iterate(&self, z: SpherePoint, n: usize) -> Result<SpherePoint> {
        let mut cur = z;
        for _ in 0..n {
            cur = self.schwarz(cur)?;
        }
        Ok(cur)
    }

    /// Point `f(w)` for `w` in the closed disk.
    pub fn image(&self, w: Complex64) -> Result<SpherePoint> {
        self.f.eval_finite(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::SceneSpec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cardioid() -> QuadratureScene {
        QuadratureScene::from_spec(&SceneSpec::polynomial(&[c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0)], 1024)).unwrap()
    }

    #[test]
    fn membership_basic() {
        let s = cardioid();
        assert_eq!(s.membership(SpherePoint::ZERO).unwrap(), Membership::Inside);
        assert_eq!(
            s.membership(SpherePoint::Finite(c(1.5, 0.0))).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            s.membership(SpherePoint::Finite(c(3.0, 0.0))).unwrap(),
            Membership::Outside
        );
        assert_eq!(s.membership(SpherePoint::Infinity).unwrap(), Membership::Outside);
    }

    #[test]
    fn schwarz_examples() {
        let s = cardioid();
        // polynomial: σ(f(0)) = f(∞) = ∞
        assert_eq!(s.schwarz(SpherePoint::ZERO).unwrap(), SpherePoint::Infinity);
        let b = SpherePoint::Finite(c(1.5, 0.0));
        assert_eq!(s.schwarz(b).unwrap(), b);
        assert!(matches!(
            s.schwarz(SpherePoint::Finite(c(3.0, 0.0))),
            Err(Error::OutsideDomain)
        ));
        // σ(f(w)) = f(1/w̄)
        let w = c(0.3, 0.4);
        let z = s.image(w).unwrap();
        let expect = s.image(eta(SpherePoint::Finite(w)).finite().unwrap()).unwrap();
        assert!(rel_dist(s.schwarz(z).unwrap(), expect) < 1e-12);
    }

    #[test]
    fn tile_ranks() {
        let s = cardioid();
        assert_eq!(
            s.tile_rank(SpherePoint::Finite(c(3.0, 0.0)), 50),
            TileLabel::TileRank(0)
        );
        assert_eq!(s.tile_rank(SpherePoint::ZERO, 50), TileLabel::TileRank(1));
        assert_eq!(
            s.tile_rank(SpherePoint::Finite(c(-0.5, 0.0)), 50),
            TileLabel::NonEscaping(50)
        );
        assert_eq!(
            s.tile_rank(SpherePoint::Finite(c(1.5, 0.0)), 50),
            TileLabel::Indeterminate
        );
    }
}
