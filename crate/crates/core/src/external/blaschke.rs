use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::check_degree;
use crate::error::{Error, Result};
use crate::numerics::SpherePoint;

/// `B_d(z) = ((d+1) z̄^d + (d-1)) / ((d-1) z̄^d + (d+1))`.
pub fn blaschke(d: usize, z: SpherePoint) -> SpherePoint {
    let (a, b) = ((d + 1) as f64, (d - 1) as f64);
    match z {
        SpherePoint::Infinity => SpherePoint::Finite(Complex64::new(a / b, 0.0)),
        SpherePoint::Finite(w) => {
            let p = w.conj().powu(d as u32);
            let den = b * p + a;
            if den.norm_sqr() == 0.0 {
                SpherePoint::Infinity
            } else {
                SpherePoint::from_complex((a * p + b) / den)
            }
        }
    }
}

/// `1 - B_d(1 - u)`, written so that small `u` keeps full relative precision.
fn step_u(d: usize, u: Complex64) -> Complex64 {
    // q = (1 - ū)^d - 1 = Σ_{k≥1} C(d,k) (-ū)^k
    let x = -u.conj();
    let mut q = Complex64::new(0.0, 0.0);
    let mut binom = 1.0;
    let mut pw = Complex64::new(1.0, 0.0);
    for k in 1..=d {
        binom = binom * (d + 1 - k) as f64 / k as f64;
        pw *= x;
        q += binom * pw;
    }
    -2.0 * q / (2.0 * d as f64 + (d as f64 - 1.0) * q)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatouSample {
    pub point: Complex64,
    /// Attracting Fatou coordinate of `B_d ∘ B_d`, normalised by its asymptotics.
    pub phi: Complex64,
    pub iterations: usize,
    /// Change between the last two extrapolated estimates.
    pub stability: f64,
}

struct Asymptotics {
    scale: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl Asymptotics {
    fn new(d: usize) -> Self {
        let dd = (d * d - 1) as f64;
        let e = (d * d + 1) as f64;
        Asymptotics {
            scale: (dd / 3.0).sqrt(),
            alpha: -(3.0 / dd).sqrt(),
            beta: -3.0 * e / (40.0 * dd),
            gamma: 3.0 * 3f64.sqrt() * e / (40.0 * dd.powf(1.5)),
        }
    }

    /// Approximate Fatou coordinate in the attracting petal, `u = 1 - z`.
    fn phi(&self, u: Complex64) -> Complex64 {
        let s = u * self.scale;
        let w = 1.0 / (s * s);
        w + self.alpha / s + self.beta * w.ln() + self.gamma * s
    }
}

/// Whether `z` lies in an attracting petal of `B_d ∘ B_d` at 1 on either
/// side of the circle. The sector is forward invariant with `|1 - z|`
/// strictly decreasing, so points in it converge to 1.
pub fn in_attracting_petal(d: usize, z: Complex64) -> bool {
    let u = Complex64::new(1.0, 0.0) - z;
    u.norm() * Asymptotics::new(d).scale < 0.5 && u.re.abs() > 2.0 * u.im.abs()
}

/// Attracting Fatou coordinate of `B_d ∘ B_d` at `z ∈ 𝔻`.
///
/// Iterates to the petal at `1`, evaluates the petal asymptotics there and
/// extrapolates `φ̃(F^n z) - n` in `n` until two estimates agree to `tol`.
pub fn fatou_coordinate(d: usize, z: Complex64, max_iter: usize, tol: f64) -> Result<FatouSample> {
    check_degree(d)?;
    if z.norm() >= 1.0 {
        return Err(Error::Precondition(format!("{z} is not in the open unit disk")));
    }
    let asym = Asymptotics::new(d);
    let mut u = Complex64::new(1.0, 0.0) - z;
    let mut n = 0usize;
    let f = |u: Complex64| step_u(d, step_u(d, u));

    // enter the petal: small u along the positive real direction
    while !(u.norm() * asym.scale < 0.05 && u.re > 2.0 * u.im.abs()) {
        u = f(u);
        n += 1;
        if n > max_iter {
            return Err(Error::NoConvergence {
                iterations: n,
                residual: u.norm(),
                best: vec![Complex64::new(1.0, 0.0) - u],
            });
        }
    }
    let mut target = n.max(32);
    while n < target {
        u = f(u);
        n += 1;
    }
    let mut prev_raw = asym.phi(u) - n as f64;
    let mut prev_ext: Option<Complex64> = None;
    loop {
        target *= 2;
        if target > max_iter {
            return Err(Error::NoConvergence {
                iterations: n,
                residual: f64::NAN,
                best: vec![prev_raw],
            });
        }
        while n < target {
            u = f(u);
            n += 1;
        }
        let raw = asym.phi(u) - n as f64;
        // error of the raw estimate decays like 1/n
        let ext = 2.0 * raw - prev_raw;
        if let Some(p) = prev_ext {
            let stability = (ext - p).norm();
            if stability < tol {
                return Ok(FatouSample {
                    point: z,
                    phi: ext,
                    iterations: n,
                    stability,
                });
            }
        }
        prev_raw = raw;
        prev_ext = Some(ext);
    }
}

/// Écalle height `Im φ(z)` of a point in the basin of `B_d`.
///
/// Rounding in the orbit limits the attainable stability to about `1e-8`.
pub fn ecalle_height(d: usize, z: Complex64) -> Result<f64> {
    Ok(fatou_coordinate(d, z, 1 << 22, 1e-7)?.phi.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixes_one_and_the_circle() {
        for d in 2..6 {
            let one = SpherePoint::Finite(Complex64::new(1.0, 0.0));
            assert_eq!(blaschke(d, one), one);
            let z = Complex64::from_polar(1.0, 0.7);
            let b = blaschke(d, SpherePoint::Finite(z)).finite().unwrap();
            assert!((b.norm() - 1.0).abs() < 1e-14);
        }
        assert_eq!(
            blaschke(2, SpherePoint::Infinity),
            SpherePoint::Finite(Complex64::new(3.0, 0.0))
        );
    }

    #[test]
    fn stable_step_matches_direct() {
        let u = Complex64::new(0.01, 0.003);
        let z = SpherePoint::Finite(Complex64::new(1.0, 0.0) - u);
        let direct = Complex64::new(1.0, 0.0) - blaschke(3, z).finite().unwrap();
        assert!((step_u(3, u) - direct).norm() < 1e-14);
    }

    #[test]
    fn real_points_have_zero_height() {
        let h = ecalle_height(2, Complex64::new(0.0, 0.0)).unwrap();
        assert!(h.abs() < 1e-12);
    }

    #[test]
    fn functional_equation() {
        let d = 2;
        let z = Complex64::new(0.1, 0.35);
        let fz = blaschke(d, blaschke(d, SpherePoint::Finite(z))).finite().unwrap();
        let a = fatou_coordinate(d, z, 1 << 22, 1e-7).unwrap();
        let b = fatou_coordinate(d, fz, 1 << 22, 1e-7).unwrap();
        assert!((b.phi - a.phi - 1.0).norm() < 1e-5, "{:?} {:?}", a, b);
    }
}
