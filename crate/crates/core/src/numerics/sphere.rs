use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Finite points with modulus above this are treated as the point at infinity.
pub const CHART_SWITCH: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub const ZERO: SpherePoint = SpherePoint::Finite(Complex64::new(0.0, 0.0));

    /// Wraps a complex number, switching chart for huge or non-finite values.
    pub fn from_complex(z: Complex64) -> Self {
        if !z.re.is_finite() || !z.im.is_finite() || z.norm() > CHART_SWITCH {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(z)
        }
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// Modulus, `+inf` at infinity.
    pub fn modulus(self) -> f64 {
        match self {
            SpherePoint::Finite(z) => z.norm(),
            SpherePoint::Infinity => f64::INFINITY,
        }
    }

    pub fn conj(self) -> Self {
        match self {
            SpherePoint::Finite(z) => SpherePoint::Finite(z.conj()),
            SpherePoint::Infinity => SpherePoint::Infinity,
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::from_complex(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{}", z),
            SpherePoint::Infinity => write!(f, "∞"),
        }
    }
}

/// Reflection in the unit circle, `η(z) = 1/z̄`.
pub fn eta(z: SpherePoint) -> SpherePoint {
    match z {
        SpherePoint::Infinity => SpherePoint::ZERO,
        SpherePoint::Finite(w) if w.re == 0.0 && w.im == 0.0 => SpherePoint::Infinity,
        SpherePoint::Finite(w) => SpherePoint::Finite(w / w.norm_sqr()),
    }
}

/// Distance used to compare points: relative for finite pairs, and the
/// `η`-chart distance when infinity is involved.
pub fn rel_dist(a: SpherePoint, b: SpherePoint) -> f64 {
    match (a, b) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
        (SpherePoint::Finite(z), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(z)) => {
            1.0 / z.norm().max(1.0)
        }
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => (z - w).norm() / z.norm().max(w.norm()).max(1.0),
    }
}

/// Chordal distance on the Riemann sphere.
pub fn sphere_dist(a: SpherePoint, b: SpherePoint) -> f64 {
    match (a, b) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
        (SpherePoint::Finite(z), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(z)) => {
            2.0 / (1.0 + z.norm_sqr()).sqrt()
        }
        (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
            2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> SpherePoint {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta(c(2.0, 0.0)), c(0.5, 0.0));
        assert_eq!(eta(c(0.0, 1.0)), c(0.0, 1.0));
        assert_eq!(eta(SpherePoint::ZERO), SpherePoint::Infinity);
        assert_eq!(eta(SpherePoint::Infinity), SpherePoint::ZERO);
        // negative zero is still zero
        assert_eq!(eta(c(-0.0, 0.0)), SpherePoint::Infinity);
    }

    #[test]
    fn chart_switch() {
        assert!(SpherePoint::from_complex(Complex64::new(2e8, 0.0)).is_infinite());
        assert!(SpherePoint::from_complex(Complex64::new(f64::NAN, 0.0)).is_infinite());
        assert!(!SpherePoint::from_complex(Complex64::new(1e7, 0.0)).is_infinite());
    }

    #[test]
    fn distances() {
        assert_eq!(rel_dist(SpherePoint::Infinity, SpherePoint::Infinity), 0.0);
        assert!((sphere_dist(SpherePoint::ZERO, SpherePoint::Infinity) - 2.0).abs() < 1e-15);
        assert!((rel_dist(c(1.0, 0.0), c(1.0, 1e-9)) - 1e-9).abs() < 1e-20);
    }
}
