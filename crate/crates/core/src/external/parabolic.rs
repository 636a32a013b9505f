use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::check_degree;
use crate::error::Result;

/// The parabolic anti-polynomial `p_d(z) = z̄^d + c_d` with
/// `c_d = (d-1) d^{-d/(d-1)}` and parabolic fixed point `z₀ = d^{-1/(d-1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParabolicModel {
    pub d: usize,
    pub c: f64,
    pub z0: f64,
    /// `|p(z₀) - z₀|`.
    pub fixed_residual: f64,
    /// Central-difference derivative of `p ∘ p` at `z₀`.
    pub second_iterate_derivative: Complex64,
}

impl ParabolicModel {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        z.conj().powu(self.d as u32) + self.c
    }

    /// Whether `z` lies in a sector of the attracting petal at `z₀`.
    ///
    /// With `u = z - z₀`, `p ∘ p (u) = u + 2k u² + O(u³)` where
    /// `k = p''(z₀)/2`; the sector `|u|·2k < 0.3`, `|Im u| < -Re u` is forward
    /// invariant under `p` with `|u|` decreasing along `p ∘ p`.
    pub fn in_attracting_petal(&self, z: Complex64) -> bool {
        let df = self.d as f64;
        let k = df * (df - 1.0) / 2.0 * self.z0.powi(self.d as i32 - 2);
        let u = z - self.z0;
        u.norm() * 2.0 * k < 0.3 && -u.re > u.im.abs()
    }
}

pub fn parabolic_model_data(d: usize) -> Result<ParabolicModel> {
    check_degree(d)?;
    let df = d as f64;
    let c = (df - 1.0) * df.powf(-df / (df - 1.0));
    let z0 = df.powf(-1.0 / (df - 1.0));
    let mut m = ParabolicModel {
        d,
        c,
        z0,
        fixed_residual: 0.0,
        second_iterate_derivative: Complex64::new(0.0, 0.0),
    };
    let p0 = Complex64::new(z0, 0.0);
    m.fixed_residual = (m.eval(p0) - p0).norm();
    let h = 1e-5;
    let pp = |z: Complex64| m.eval(m.eval(z));
    m.second_iterate_derivative = (pp(p0 + h) - pp(p0 - h)) / (2.0 * h);
    Ok(m)
}
