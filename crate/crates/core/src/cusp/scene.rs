use num_complex::Complex64;
use num_traits::{One, Zero};

use super::classify::{cusp_type, AxisCharacter, CuspReport};
use super::series::FormalSeries;
use crate::error::{Error, Result};
use crate::numerics::SpherePoint;
use crate::quadrature::QuadratureScene;

/// Taylor order of the local normal form.
pub const NORMAL_FORM_ORDER: usize = 12;

/// Cusp of a quadrature scene with its local normal form.
#[derive(Clone, Debug)]
pub struct SceneCusp {
    /// Critical point `p` on the unit circle.
    pub critical_point: Complex64,
    /// `f(p)`.
    pub cusp: Complex64,
    /// `p² f''(p) / 2`.
    pub g2: Complex64,
    /// `F(u) = (f(p e^{-u}) - f(p)) / g2`.
    pub normal_form: FormalSeries<Complex64>,
    pub report: CuspReport,
}

/// Taylor coefficients `1..=n` of `f(p + x) - f(p)`.
fn shifted_taylor(scene: &QuadratureScene, p: Complex64, n: usize) -> Vec<Complex64> {
    let f = scene.map();
    let pad = |c: &[Complex64]| {
        let mut v = c.to_vec();
        v.resize(n + 1, Complex64::zero());
        v
    };
    let num = pad(f.num().taylor_shift(p).coeffs());
    let den = pad(f.den().taylor_shift(p).coeffs());
    // series division num / den
    let mut q = vec![Complex64::zero(); n + 1];
    for k in 0..=n {
        let mut s = num[k];
        for j in 1..=k {
            s -= den[j] * q[k - j];
        }
        q[k] = s / den[0];
    }
    q[1..].to_vec()
}

/// Normal form at the unique circle critical point, fed to `cusp_type`.
pub fn quad_cusp_report(scene: &QuadratureScene) -> Result<SceneCusp> {
    match scene.circle_critical_points() {
        [p] => cusp_at(scene, *p),
        other => Err(Error::Precondition(format!(
            "need exactly one circle critical point, found {}",
            other.len()
        ))),
    }
}

fn cusp_at(scene: &QuadratureScene, p: Complex64) -> Result<SceneCusp> {
    let n = NORMAL_FORM_ORDER;
    let t = FormalSeries::polynomial(shifted_taylor(scene, p, n));
    // H(u) = p (e^{-u} - 1)
    let mut h = Vec::with_capacity(n);
    let mut fact = 1.0;
    for k in 1..=n {
        fact *= k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        h.push(p * (sign / fact));
    }
    let g = t.compose(&FormalSeries::truncated(h), n)?;
    let g2 = g.coeff(2)?;
    let scale = g.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
    if g2.norm() <= 1e-10 * scale {
        return Err(Error::HigherOrderCriticalPoint(p));
    }
    let mut c: Vec<Complex64> = g.coeffs().iter().map(|x| x / g2).collect();
    c[0] = Complex64::zero();
    c[1] = Complex64::one();
    let normal_form = FormalSeries::truncated(c);
    let report = cusp_type(&normal_form)?;
    let cusp = match scene.map().eval(SpherePoint::Finite(p))? {
        SpherePoint::Finite(v) => v,
        SpherePoint::Infinity => return Err(Error::Precondition("cusp at infinity".into())),
    };
    Ok(SceneCusp {
        critical_point: p,
        cusp,
        g2,
        normal_form,
        report,
    })
}

/// `Re δ' - δ` where `δ'` is the normal-form coordinate of `σ(y + g2·δ)`.
/// Positive means the positive axis is repelled from the cusp.
pub fn axis_drift(scene: &QuadratureScene, cusp: &SceneCusp, delta: f64) -> Result<f64> {
    let z = cusp.cusp + cusp.g2 * delta;
    let s = scene
        .schwarz(SpherePoint::Finite(z))?
        .finite()
        .ok_or(Error::OutsideDomain)?;
    Ok(((s - cusp.cusp) / cusp.g2).re - delta)
}

impl SceneCusp {
    /// Character seen by direct σ-iteration at `delta`.
    pub fn drift_character(&self, scene: &QuadratureScene, delta: f64) -> Result<AxisCharacter> {
        let d = axis_drift(scene, self, delta)?;
        Ok(if d > 0.0 {
            AxisCharacter::Repelling
        } else {
            AxisCharacter::Attracting
        })
    }
}
