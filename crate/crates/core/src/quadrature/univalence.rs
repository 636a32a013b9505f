use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::numerics::{RationalMap, SpherePoint};

/// Sampled evidence that `f` is injective on the closed unit disk.
///
/// This is a heuristic: a curve that passes the scan at `samples` points
/// may still touch itself between samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub samples: usize,
    /// Minimum of `|f(e^{iθ}) - f(e^{iφ})| / |θ - φ|` over non-adjacent samples.
    pub min_boundary_gap: f64,
    pub crossings: usize,
    /// Midpoints of far-apart sample pairs that nearly coincide.
    pub double_candidates: Vec<Complex64>,
    pub winding: i64,
    pub expected_winding: i64,
    pub interior_derivative_min: f64,
    pub passed: bool,
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    fn orient(p: Complex64, q: Complex64, r: Complex64) -> f64 {
        (q.re - p.re) * (r.im - p.im) - (q.im - p.im) * (r.re - p.re)
    }
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 < 0.0 && o3 * o4 < 0.0
}

pub fn univalence_scan(f: &RationalMap, samples: usize) -> Result<UnivalenceReport> {
    let n = samples.max(16);
    let mut b = Vec::with_capacity(n);
    for j in 0..n {
        let z = Complex64::from_polar(1.0, TAU * j as f64 / n as f64);
        match f.eval_finite(z)? {
            SpherePoint::Finite(v) => b.push(v),
            SpherePoint::Infinity => return Err(Error::NotUnivalent(format!("pole on the unit circle near {}", z))),
        }
    }
    let step: Vec<f64> = (0..n)
        .map(|j| {
            let fwd = (b[(j + 1) % n] - b[j]).norm();
            let bwd = (b[j] - b[(j + n - 1) % n]).norm();
            fwd.max(bwd)
        })
        .collect();
    let dtheta = TAU / n as f64;

    let mut min_gap = f64::INFINITY;
    let mut crossings = 0;
    let mut doubles = Vec::new();
    for j in 0..n {
        let (a0, a1) = (b[j], b[(j + 1) % n]);
        let (lo_re, hi_re) = (a0.re.min(a1.re), a0.re.max(a1.re));
        let (lo_im, hi_im) = (a0.im.min(a1.im), a0.im.max(a1.im));
        for k in j + 2..n {
            let sep = (k - j).min(n - (k - j));
            if sep < 2 {
                continue;
            }
            let dist = (b[k] - b[j]).norm();
            min_gap = min_gap.min(dist / (sep as f64 * dtheta));
            if sep > n / 16 && dist < step[j].max(step[k]) {
                doubles.push((b[j] + b[k]) / 2.0);
            }
            let (c0, c1) = (b[k], b[(k + 1) % n]);
            if c0.re.max(c1.re) < lo_re || c0.re.min(c1.re) > hi_re {
                continue;
            }
            if c0.im.max(c1.im) < lo_im || c0.im.min(c1.im) > hi_im {
                continue;
            }
            if (k + 1) % n != j && segments_cross(a0, a1, c0, c1) {
                crossings += 1;
            }
        }
    }

    let centre = [0.0, 0.5, -0.5]
        .iter()
        .filter_map(|&r| f.eval_finite(Complex64::new(r, 0.0)).ok().and_then(|p| p.finite()))
        .next()
        .ok_or_else(|| Error::NotUnivalent("no finite interior reference value".into()))?;
    let mut total = 0.0;
    for j in 0..n {
        let u = b[j] - centre;
        let v = b[(j + 1) % n] - centre;
        total += (v / u).arg();
    }
    let winding = (total / TAU).round() as i64;

    let poles_inside = if f.den().degree() > 0 {
        crate::numerics::roots(f.den(), 1e-10)?
            .roots
            .iter()
            .filter(|r| r.value.norm() < 1.0)
            .map(|r| r.multiplicity as i64)
            .sum()
    } else {
        0
    };
    let expected = 1 - poles_inside;

    let mut dmin = f64::INFINITY;
    for i in 0..10 {
        let r = 0.05 + 0.1 * i as f64;
        for k in 0..64 {
            let z = Complex64::from_polar(r, TAU * k as f64 / 64.0);
            if f.den().eval(z).norm() > 1e-12 {
                dmin = dmin.min(f.derivative(z).norm());
            }
        }
    }

    let passed = crossings == 0 && doubles.is_empty() && winding == expected && min_gap > 1e-12;
    Ok(UnivalenceReport {
        samples: n,
        min_boundary_gap: min_gap,
        crossings,
        double_candidates: doubles,
        winding,
        expected_winding: expected,
        interior_derivative_min: dmin,
        passed,
    })
}
