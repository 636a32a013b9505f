use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use super::AntiHecke;
use crate::error::{Error, Result};

const SEAM_TOL: f64 = 1e-12;

/// `ℛ_d` on the boundary of the quotient, in the angle coordinate
/// `θ ∈ [0, 2π/(d+1))` where `0` and `2π/(d+1)` are identified.
///
/// It is an orientation-reversing degree-`d` circle covering fixing `0`.
#[derive(Clone, Debug)]
pub struct BoundaryMap {
    group: AntiHecke,
}

impl BoundaryMap {
    pub fn new(d: usize) -> Result<Self> {
        Ok(BoundaryMap {
            group: AntiHecke::new(d)?,
        })
    }

    pub fn d(&self) -> usize {
        self.group.d()
    }

    pub fn width(&self) -> f64 {
        self.group.width()
    }

    /// Reduces an angle modulo the sector width, snapping the seam to `0`.
    pub fn normalize(&self, t: f64) -> f64 {
        let w = self.width();
        let s = t.rem_euclid(w);
        if s > w - SEAM_TOL || s < SEAM_TOL {
            0.0
        } else {
            s
        }
    }

    /// `arg ρ₁(e^{iθ})` on the long arc, valued in `[w, 2π]` for `θ ∈ [0, w]`.
    fn psi(&self, t: f64) -> f64 {
        let w = self.width();
        if t <= 0.0 {
            return TAU;
        }
        let a = self.group.rho1(Complex64::from_polar(1.0, t)).arg();
        if a < w / 2.0 {
            a + TAU
        } else {
            a
        }
    }

    /// Index `m ∈ 1..=d` of the first-level piece containing `θ`: `ρ₁(e^{iθ})`
    /// lies on the arc from `ω^m` to `ω^{m+1}`.
    pub fn piece(&self, t: f64) -> usize {
        let m = (self.psi(t) / self.width()).floor() as usize;
        m.clamp(1, self.d())
    }

    /// Branch `m` of the map, continuous on the closed piece.
    pub fn branch(&self, m: usize, t: f64) -> f64 {
        self.psi(t) - m as f64 * self.width()
    }

    pub fn map(&self, t: f64) -> f64 {
        let t = self.normalize(t);
        self.normalize(self.branch(self.piece(t), t))
    }

    /// The `d` preimages of `θ`, sorted.
    pub fn preimages(&self, t: f64) -> Vec<f64> {
        let w = self.width();
        let t = self.normalize(t);
        let mut out: Vec<f64> = (1..=self.d())
            .map(|m| {
                let psi = t + m as f64 * w;
                let back = self.group.rho1(Complex64::from_polar(1.0, psi)).arg();
                self.normalize(back.clamp(0.0, w))
            })
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// `ℛ^{-n}(0)`, sorted; it has `d^n` points.
    pub fn preimage_tree(&self, n: usize) -> Vec<f64> {
        let mut level = vec![0.0];
        for _ in 0..n {
            let mut next: Vec<f64> = level.iter().flat_map(|&t| self.preimages(t)).collect();
            next.sort_by(f64::total_cmp);
            next.dedup_by(|a, b| (*a - *b).abs() < SEAM_TOL);
            level = next;
        }
        level
    }

    /// One-sided derivative of branch `m` at `t`, stepping towards `t + dir·h`.
    fn one_sided_derivative(&self, m: usize, t: f64, dir: f64) -> f64 {
        let h = 1e-7;
        (self.branch(m, t + dir * h) - self.branch(m, t)) / (dir * h)
    }
}

/// Markov partition of `∂𝒬` by the points of `ℛ^{-2}(0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkovPartition {
    pub d: usize,
    /// Pieces `[start, end]` in the angle coordinate.
    pub pieces: Vec<[f64; 2]>,
    /// First-level piece containing each piece.
    pub branch: Vec<usize>,
    pub transition: Vec<Vec<u8>>,
    /// `|ℛ'|` at the left and right end of each piece.
    pub endpoint_multipliers: Vec<[f64; 2]>,
    pub primitive: bool,
}

impl MarkovPartition {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("piece,start,end,branch\n");
        for (k, p) in self.pieces.iter().enumerate() {
            s.push_str(&format!("{k},{:.17e},{:.17e},{}\n", p[0], p[1], self.branch[k]));
        }
        s
    }

    /// Index of the piece containing `t`.
    pub fn locate(&self, t: f64) -> usize {
        self.pieces
            .iter()
            .position(|p| t >= p[0] && t < p[1])
            .unwrap_or(self.pieces.len() - 1)
    }
}

pub fn is_primitive(m: &[Vec<u8>]) -> bool {
    let n = m.len();
    if n == 0 {
        return false;
    }
    let mut p: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect();
    let bound = (n - 1) * (n - 1) + 1;
    for _ in 1..bound {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return true;
        }
        let mut q = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if p[i][k] {
                    for j in 0..n {
                        q[i][j] |= m[k][j] != 0;
                    }
                }
            }
        }
        p = q;
    }
    p.iter().all(|r| r.iter().all(|&x| x))
}

pub fn markov_partition(d: usize) -> Result<MarkovPartition> {
    let bm = BoundaryMap::new(d)?;
    let w = bm.width();
    let cuts = bm.preimage_tree(2);
    if cuts.len() != d * d {
        return Err(Error::Precondition(format!(
            "expected {} partition points, found {}",
            d * d,
            cuts.len()
        )));
    }
    let ends: Vec<f64> = cuts.iter().copied().chain(std::iter::once(w)).collect();
    let pieces: Vec<[f64; 2]> = ends.windows(2).map(|p| [p[0], p[1]]).collect();
    let mut transition = vec![vec![0u8; pieces.len()]; pieces.len()];
    let mut branch = Vec::new();
    let mut mult = Vec::new();
    let tol = 1e-9;
    for (k, p) in pieces.iter().enumerate() {
        let m = bm.piece(0.5 * (p[0] + p[1]));
        let a = bm.branch(m, p[1]);
        let b = bm.branch(m, p[0]);
        let (lo, hi) = (a.min(b), a.max(b));
        for (j, q) in pieces.iter().enumerate() {
            if q[0] >= lo - tol && q[1] <= hi + tol {
                transition[k][j] = 1;
            }
        }
        branch.push(m);
        mult.push([
            bm.one_sided_derivative(m, p[0], 1.0).abs(),
            bm.one_sided_derivative(m, p[1], -1.0).abs(),
        ]);
    }
    let primitive = is_primitive(&transition);
    Ok(MarkovPartition {
        d,
        pieces,
        branch,
        transition,
        endpoint_multipliers: mult,
        primitive,
    })
}

/// Topological conjugacy between `z̄^d` on `𝕊¹` and `ℛ_d` on `∂𝒬`, sampled
/// by matching the sorted preimage trees of the fixed points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConjugacy {
    pub d: usize,
    pub depth: usize,
    /// Angles `2πk/d^n` on the circle.
    pub source: Vec<f64>,
    /// Matching points of `∂𝒬` in the angle coordinate.
    pub target: Vec<f64>,
    pub order_violations: usize,
    /// Worst `|ℛ(h(t)) - h(-d t)|` over the samples.
    pub max_residual: f64,
}

impl BoundaryConjugacy {
    /// Piecewise-linear interpolation of `h` at the circle angle `t`.
    pub fn eval(&self, t: f64) -> f64 {
        let t = t.rem_euclid(TAU);
        let n = self.source.len();
        let step = TAU / n as f64;
        let k = ((t / step).floor() as usize).min(n - 1);
        let (t0, y0) = (self.source[k], self.target[k]);
        let y1 = if k + 1 < n {
            self.target[k + 1]
        } else {
            TAU / (self.d + 1) as f64
        };
        y0 + (y1 - y0) * (t - t0) / step
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,theta\n");
        for (a, b) in self.source.iter().zip(&self.target) {
            s.push_str(&format!("{a:.17e},{b:.17e}\n"));
        }
        s
    }
}

pub fn boundary_conjugacy(d: usize, depth: usize) -> Result<BoundaryConjugacy> {
    let bm = BoundaryMap::new(d)?;
    let target = bm.preimage_tree(depth);
    let n = d.pow(depth as u32);
    if target.len() != n {
        return Err(Error::Precondition(format!(
            "preimage tree has {} points, expected {n}",
            target.len()
        )));
    }
    let source: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    let order_violations = target.windows(2).filter(|p| p[1] <= p[0]).count();
    let w = bm.width();
    let mut worst: f64 = 0.0;
    for k in 0..n {
        // z̄^d sends angle t_k to -d t_k, i.e. index -d k mod n
        let j = (n - (d * k) % n) % n;
        let got = bm.map(target[k]);
        let want = target[j];
        let diff = (got - want).rem_euclid(w);
        worst = worst.max(diff.min(w - diff));
    }
    Ok(BoundaryConjugacy {
        d,
        depth,
        source,
        target,
        order_violations,
        max_residual: worst,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_sizes() {
        for d in 2..5 {
            let m = markov_partition(d).unwrap();
            assert_eq!(m.pieces.len(), d * d);
            assert!(m.primitive);
            for row in &m.transition {
                assert_eq!(row.iter().map(|&x| x as usize).sum::<usize>(), d);
            }
        }
    }

    #[test]
    fn parabolic_endpoint() {
        let m = markov_partition(2).unwrap();
        // the fixed point 1 is parabolic for ℛ
        assert!((m.endpoint_multipliers[0][0] - 1.0).abs() < 1e-4);
    }

    #[test]
    fn map_is_degree_d() {
        let bm = BoundaryMap::new(3).unwrap();
        for t in [0.1, 0.5, 1.2] {
            let pre = bm.preimages(t);
            assert_eq!(pre.len(), 3);
            for p in pre {
                assert!((bm.map(p) - t).abs() < 1e-12);
            }
        }
        assert_eq!(bm.map(0.0), 0.0);
    }

    #[test]
    fn conjugacy_depth_three() {
        let c = boundary_conjugacy(2, 3).unwrap();
        assert_eq!(c.order_violations, 0);
        assert!(c.max_residual < 1e-10);
        assert_eq!(c.target[0], 0.0);
        assert!((c.eval(c.source[3]) - c.target[3]).abs() < 1e-15);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&[vec![1, 1], vec![1, 0]]));
        assert!(!is_primitive(&[vec![0, 1], vec![1, 0]]));
    }
}
