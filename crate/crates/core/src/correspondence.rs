//! The antiholomorphic correspondence `𝔠*` of a quadrature scene:
//! pairs `(z, w)` with `f(w) = f(η(z))` and `w ≠ η(z)` counted once.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{eta, match_distance, rel_dist, SpherePoint};
use crate::quadrature::{Membership, QuadratureScene, TileLabel, BOUNDARY_TOL};

/// Escape-time budget used when labelling orbit points.
pub const ORBIT_MAX_ITER: u32 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BranchSet {
    pub source: SpherePoint,
    pub direction: Direction,
    /// Images repeated by multiplicity; always `d` of them.
    pub images: Vec<SpherePoint>,
    /// Largest relative defect in the defining equation.
    pub residual: f64,
}

fn defect(scene: &QuadratureScene, pts: &[SpherePoint], value: SpherePoint) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &p in pts {
        worst = worst.max(rel_dist(scene.map().eval(p)?, value));
    }
    Ok(worst)
}

/// `{w : f(w) = f(η z)}` with one copy of `η z` removed.
pub fn forward_images(scene: &QuadratureScene, z: SpherePoint) -> Result<BranchSet> {
    let a = eta(z);
    let fib = scene.map().fiber(a)?;
    let residual = defect(scene, &fib.others, fib.value)?;
    Ok(BranchSet {
        source: z,
        direction: Direction::Forward,
        images: fib.others,
        residual,
    })
}

/// `{η(u) : f(u) = f(w)}` with one copy of `w` removed.
pub fn backward_images(scene: &QuadratureScene, w: SpherePoint) -> Result<BranchSet> {
    let fib = scene.map().fiber(w)?;
    let residual = defect(scene, &fib.others, fib.value)?;
    Ok(BranchSet {
        source: w,
        direction: Direction::Backward,
        images: fib.others.into_iter().map(eta).collect(),
        residual,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TupleReport {
    pub value: SpherePoint,
    pub tuple: Vec<SpherePoint>,
    /// Worst matching distance between `forward_images(η w_i)` and the other tuple entries.
    pub max_distance: f64,
    pub passed: bool,
}

/// Checks that `η(w_i) ↦ {w_j : j ≠ i}` on the fibre `f⁻¹(w)`.
pub fn tuple_check(scene: &QuadratureScene, w: SpherePoint, tol: f64) -> Result<TupleReport> {
    let pre = scene.map().preimages(w)?;
    if let Some((p, m)) = pre.iter().find(|(_, m)| *m > 1) {
        return Err(Error::RamifiedTuple(format!("{p} has multiplicity {m} over {w}")));
    }
    let tuple: Vec<SpherePoint> = pre.into_iter().map(|(p, _)| p).collect();
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            if rel_dist(tuple[i], tuple[j]) <= 1e-7 {
                return Err(Error::RamifiedTuple(format!("{} and {} coincide", tuple[i], tuple[j])));
            }
        }
    }
    let mut worst: f64 = 0.0;
    for (i, &wi) in tuple.iter().enumerate() {
        let got = forward_images(scene, eta(wi))?.images;
        let expect: Vec<SpherePoint> = tuple
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &p)| p)
            .collect();
        worst = worst.max(match_distance(&got, &expect));
    }
    Ok(TupleReport {
        value: w,
        tuple,
        max_distance: worst,
        passed: worst <= tol,
    })
}

/// The branch of the correspondence at `z ∈ 𝔻̄` landing in `𝔻̄`; it is
/// conjugate to `σ` by `f`.
pub fn distinguished_branch(scene: &QuadratureScene, z: Complex64) -> Result<Complex64> {
    if z.norm() > 1.0 + BOUNDARY_TOL {
        return Err(Error::Precondition(format!("{z} is outside the closed disk")));
    }
    let (_, loc) = scene.locate_image_of(eta(SpherePoint::Finite(z)))?;
    match loc.membership {
        Membership::Outside => Err(Error::LeftLiftedDomain),
        _ => loc
            .disk_preimage
            .and_then(SpherePoint::finite)
            .ok_or(Error::LeftLiftedDomain),
    }
}

pub fn lifted_label(scene: &QuadratureScene, z: SpherePoint, max_iter: u32) -> TileLabel {
    scene.lifted_label(z, max_iter)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub start: SpherePoint,
    pub word_len: usize,
    pub points_visited: usize,
    /// Worst distance between deflated branches and a direct solve.
    pub max_set_distance: f64,
    /// Orbit points whose label left the tiling set.
    pub invariance_failures: usize,
    /// Forward chains from a rank-0 point of `𝔻*` whose rank is not the step count.
    pub rank_violations: usize,
    pub inconclusive: usize,
    pub passed: bool,
}

fn push_unique(v: &mut Vec<SpherePoint>, p: SpherePoint) -> bool {
    if v.iter().any(|&q| rel_dist(p, q) <= 1e-9) {
        false
    } else {
        v.push(p);
        true
    }
}

/// Walks the grand orbit of `z` for `word_len` steps in both directions.
///
/// Checks that deflated branches agree with a direct solve, that every
/// orbit point stays in the lifted tiling set, and, when `z ∈ 𝔻*` has
/// rank 0, that `k` forward steps reach rank exactly `k`.
pub fn group_orbit_check(scene: &QuadratureScene, z: SpherePoint, word_len: usize, tol: f64) -> Result<OrbitReport> {
    if !scene.in_srd_shape() {
        return Err(Error::Precondition(
            "scene is not a polynomial with one simple cusp".into(),
        ));
    }
    let start_label = scene.lifted_label(z, ORBIT_MAX_ITER);
    let TileLabel::TileRank(start_rank) = start_label else {
        return Err(Error::Precondition(format!(
            "{z} is not in the lifted tiling set ({start_label:?})"
        )));
    };
    let track_rank = start_rank == 0 && z.modulus() > 1.0 + BOUNDARY_TOL;

    let mut seen = vec![z];
    let mut frontier = vec![z];
    let mut forward_chain = vec![z];
    let mut report = OrbitReport {
        start: z,
        word_len,
        points_visited: 1,
        max_set_distance: 0.0,
        invariance_failures: 0,
        rank_violations: 0,
        inconclusive: 0,
        passed: false,
    };

    for step in 1..=word_len {
        let mut next = Vec::new();
        for &p in &frontier {
            let fwd = forward_images(scene, p)?;
            report.max_set_distance = report.max_set_distance.max(direct_distance(scene, p, &fwd.images)?);
            for &w in fwd.images.iter().chain(backward_images(scene, p)?.images.iter()) {
                if push_unique(&mut seen, w) {
                    next.push(w);
                    match scene.lifted_label(w, ORBIT_MAX_ITER) {
                        TileLabel::TileRank(_) => {}
                        TileLabel::NonEscaping(_) => report.invariance_failures += 1,
                        TileLabel::Indeterminate => report.inconclusive += 1,
                    }
                }
            }
        }
        if track_rank {
            let mut chain = Vec::new();
            for &p in &forward_chain {
                for w in forward_images(scene, p)?.images {
                    match scene.lifted_label(w, ORBIT_MAX_ITER) {
                        TileLabel::TileRank(r) if r as usize == step => {}
                        TileLabel::Indeterminate => report.inconclusive += 1,
                        _ => report.rank_violations += 1,
                    }
                    push_unique(&mut chain, w);
                }
            }
            forward_chain = chain;
        }
        frontier = next;
    }
    report.points_visited = seen.len();
    report.passed = report.max_set_distance <= tol && report.invariance_failures == 0 && report.rank_violations == 0;
    Ok(report)
}

/// Distance between deflated forward images and the full fibre minus `η(z)`.
fn direct_distance(scene: &QuadratureScene, z: SpherePoint, images: &[SpherePoint]) -> Result<f64> {
    let a = eta(z);
    let v = scene.map().eval(a)?;
    let mut all: Vec<SpherePoint> = Vec::new();
    for (p, m) in scene.map().preimages(v)? {
        all.extend(std::iter::repeat_n(p, m));
    }
    if let Some(k) = (0..all.len()).min_by(|&i, &j| rel_dist(all[i], a).total_cmp(&rel_dist(all[j], a))) {
        all.remove(k);
    }
    Ok(match_distance(images, &all))
}
