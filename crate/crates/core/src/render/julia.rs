use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::external::{blaschke, in_attracting_petal, parabolic_model_data, ParabolicModel};
use crate::numerics::{RationalMap, SpherePoint};

/// Radius of the trap disk around the parabolic point.
pub const PARABOLIC_TRAP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum JuliaLabel {
    Escaped(u32),
    /// Entered the trap with shrinking steps after this many iterations.
    Converging(u32),
    #[default]
    Undecided,
}

/// Anti-rational maps `z ↦ R(z̄)` with a known parabolic fixed point.
#[derive(Clone, Debug)]
pub enum JuliaModel {
    /// `z̄^d + c_d`, escape radius 2.
    Parabolic(ParabolicModel),
    /// The anti-Blaschke product `B_d`, parabolic at 1.
    Blaschke(usize),
    General {
        map: RationalMap,
        parabolic: Complex64,
        escape_radius: f64,
    },
}

impl JuliaModel {
    pub fn parabolic(d: usize) -> Result<Self> {
        Ok(JuliaModel::Parabolic(parabolic_model_data(d)?))
    }

    pub fn blaschke(d: usize) -> Result<Self> {
        crate::external::check_degree(d)?;
        Ok(JuliaModel::Blaschke(d))
    }

    pub fn parabolic_point(&self) -> Complex64 {
        match self {
            JuliaModel::Parabolic(m) => Complex64::new(m.z0, 0.0),
            JuliaModel::Blaschke(_) => Complex64::new(1.0, 0.0),
            JuliaModel::General { parabolic, .. } => *parabolic,
        }
    }

    fn escape_radius(&self) -> f64 {
        match self {
            JuliaModel::Parabolic(_) => 2.0,
            JuliaModel::Blaschke(_) => f64::INFINITY,
            JuliaModel::General { escape_radius, .. } => *escape_radius,
        }
    }

    /// One step; `None` for infinity.
    pub fn step(&self, z: Complex64) -> Option<Complex64> {
        match self {
            JuliaModel::Parabolic(m) => Some(m.eval(z)),
            JuliaModel::Blaschke(d) => blaschke(*d, SpherePoint::Finite(z)).finite(),
            JuliaModel::General { map, .. } => map.eval_finite(z.conj()).ok()?.finite(),
        }
    }

    /// Escape time with a parabolic trap.
    pub fn classify(&self, z: Complex64, max_iter: u32) -> JuliaLabel {
        let p = self.parabolic_point();
        let r = self.escape_radius();
        let mut cur = z;
        let mut last_step = f64::INFINITY;
        for n in 0..max_iter {
            // NaN counts as escaped
            if cur.norm().is_nan() || cur.norm() > r {
                return JuliaLabel::Escaped(n);
            }
            let Some(next) = self.step(cur) else {
                return JuliaLabel::Escaped(n + 1);
            };
            let step = (next - cur).norm();
            if (next - p).norm() < PARABOLIC_TRAP && step < last_step {
                return JuliaLabel::Converging(n + 1);
            }
            // orbits creep towards a parabolic point, so certify petal entry instead
            let in_petal = match self {
                JuliaModel::Blaschke(d) => in_attracting_petal(*d, next),
                JuliaModel::Parabolic(m) => m.in_attracting_petal(next),
                JuliaModel::General { .. } => false,
            };
            if in_petal {
                return JuliaLabel::Converging(n + 1);
            }
            last_step = step;
            cur = next;
        }
        if cur.norm().is_nan() || cur.norm() > r {
            return JuliaLabel::Escaped(max_iter);
        }
        JuliaLabel::Undecided
    }

    pub fn hash(&self) -> String {
        let desc = match self {
            JuliaModel::Parabolic(m) => format!("parabolic:{}", m.d),
            JuliaModel::Blaschke(d) => format!("blaschke:{d}"),
            JuliaModel::General {
                map,
                parabolic,
                escape_radius,
            } => format!(
                "{:?}/{:?}/{parabolic}/{escape_radius}",
                map.num().coeffs(),
                map.den().coeffs()
            ),
        };
        Sha256::digest(desc.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
