//! Complex arithmetic on the Riemann sphere.

mod poly;
mod rational;
mod roots;
mod sphere;

pub use poly::Polynomial;
pub use rational::{Fiber, RationalMap};
pub use roots::{match_distance, roots, roots_with, Root, RootOptions, RootSet};
pub use sphere::{eta, rel_dist, sphere_dist, SpherePoint, CHART_SWITCH};

pub type C64 = num_complex::Complex64;

/// Relative error `|a - b| / max(1, |a|)`.
pub fn rel_err(a: C64, b: C64) -> f64 {
    (a - b).norm() / a.norm().max(1.0)
}
