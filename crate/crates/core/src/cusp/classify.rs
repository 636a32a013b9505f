use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::puiseux::{check_normalized, coeff_scale};
use super::series::{Coeff, FormalSeries};
use crate::error::{Error, Result};
use crate::numerics::{roots, Polynomial};

/// Behaviour of the Schwarz reflection (odd `n`) or its second iterate
/// (even `n`) along the positive real axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxisCharacter {
    Attracting,
    Repelling,
    /// Leading drift term vanishes; higher order needed.
    Neutral,
}

/// Classification of an `(n,2)` cusp.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CuspReport {
    pub n: usize,
    #[serde(rename = "A_n")]
    pub a_n: Complex64,
    /// Number of invariant directions; a lower bound when `n` is even.
    pub directions: usize,
    pub directions_lower_bound: bool,
    pub axis: AxisCharacter,
    pub has_attracting: bool,
    /// Character read off the sign of the leading drift coefficient.
    pub drift_axis: AxisCharacter,
    pub sign_consistent: bool,
}

fn alt<T: Coeff>(f: &FormalSeries<T>, k: usize) -> Result<T> {
    let c = f.coeff(k)?;
    let s = if k.is_multiple_of(2) { c.clone() } else { -c.clone() };
    Ok(s - c.conj())
}

fn sign_character(x: f64, scale: f64) -> AxisCharacter {
    if x.abs() <= 1e-12 * scale {
        AxisCharacter::Neutral
    } else if x > 0.0 {
        AxisCharacter::Repelling
    } else {
        AxisCharacter::Attracting
    }
}

/// Type of the cusp of `f(w) = w² + C₃w³ + …`: the least `n ≥ 3` with
/// `A_n = (-1)^n C_n - C̄_n ≠ 0`.
pub fn cusp_type<T: Coeff>(f: &FormalSeries<T>) -> Result<CuspReport> {
    let scale = coeff_scale(f);
    check_normalized(f, scale)?;
    let top = f.coeffs().len();
    let mut found = None;
    for k in 3..=top {
        let a = alt(f, k)?;
        if !a.negligible(scale) {
            found = Some((k, a));
            break;
        }
    }
    let (n, a) = found.ok_or(Error::TypeUndetermined(top))?;
    let a_n = a.to_c64();
    let odd = n % 2 == 1;
    let (axis, drift_axis) = if odd {
        let rule = if n % 4 == 3 {
            AxisCharacter::Repelling
        } else {
            AxisCharacter::Attracting
        };
        (rule, sign_character(a_n.re, scale))
    } else {
        // σ∘σ(δ) = δ + 2 Re C_{n+1}(σ) δ^{(n+1)/2} + …
        let next = match f.coeff(n + 1) {
            Ok(_) => {
                let c3 = f.coeff(3)?;
                let cn1 = alt(f, n + 1)? - T::from_i64(n as i64) * c3.conj() * a / T::from_i64(2);
                sign_character(cn1.to_c64().re, scale)
            }
            Err(_) => AxisCharacter::Neutral,
        };
        (next, next)
    };
    Ok(CuspReport {
        n,
        a_n,
        directions: if odd { n - 2 } else { n - 1 },
        directions_lower_bound: !odd,
        axis,
        has_attracting: n > 3,
        drift_axis,
        sign_consistent: axis == drift_axis,
    })
}

/// Coordinate `β(z) = λ/√z` in which a `(3,2)` cusp reads `ζ ↦ ζ̄ + 1/2 + O(1/ζ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspNormalization {
    pub lambda: f64,
}

impl CuspNormalization {
    pub fn beta(&self, z: Complex64) -> Complex64 {
        self.lambda / z.sqrt()
    }

    pub fn beta_inv(&self, zeta: Complex64) -> Complex64 {
        self.lambda * self.lambda / (zeta * zeta)
    }
}

/// `λ = 1/(2 Re C₃)`; requires a `(3,2)` cusp.
pub fn cusp_normalize<T: Coeff>(f: &FormalSeries<T>) -> Result<CuspNormalization> {
    let r = cusp_type(f)?;
    if r.n != 3 {
        return Err(Error::Precondition(format!(
            "normalization needs a (3,2) cusp, got ({},2)",
            r.n
        )));
    }
    let c3 = f.coeff(3)?.to_c64();
    Ok(CuspNormalization {
        lambda: 1.0 / (2.0 * c3.re),
    })
}

/// Polynomial germ `f(w) = w² + …` on the right half-plane with its
/// Schwarz reflection computed by root finding.
#[derive(Clone, Debug)]
pub struct LocalCuspModel {
    f: Polynomial,
}

impl LocalCuspModel {
    pub fn new(f: &FormalSeries<Complex64>) -> Result<Self> {
        if !f.is_polynomial() {
            return Err(Error::Precondition("local model needs a polynomial germ".into()));
        }
        check_normalized(f, coeff_scale(f))?;
        let mut c = vec![Complex64::new(0.0, 0.0)];
        c.extend_from_slice(f.coeffs());
        Ok(LocalCuspModel { f: Polynomial::new(c) })
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    /// The small preimage of `z` with `Re w > 0`.
    pub fn chart(&self, z: Complex64) -> Result<Complex64> {
        let mut p = self.f.coeffs().to_vec();
        p[0] -= z;
        let rs = roots(&Polynomial::new(p), 1e-14)?;
        rs.expanded()
            .into_iter()
            .filter(|w| w.re > 0.0)
            .min_by(|a, b| a.norm().total_cmp(&b.norm()))
            .ok_or(Error::OutsideDomain)
    }

    /// `σ(z) = f(-w̄)` with `w` the chart preimage.
    pub fn sigma(&self, z: Complex64) -> Result<Complex64> {
        let w = self.chart(z)?;
        Ok(self.f.eval(-w.conj()))
    }
}
