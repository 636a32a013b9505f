//! Numerical toolkit for Schwarz reflections of quadrature domains, the
//! antiholomorphic correspondences they generate, and the external models
//! used to describe them: the anti-Hecke group and its anti-Farey map, the
//! parabolic Blaschke products `B_d` and the anti-polynomials `z̄^d + c`.
//!
//! The crate is organised bottom up:
//!
//! * [`numerics`]: points on the sphere, polynomials, rational maps, roots.
//! * [`quadrature`]: univalent scenes, membership, `σ` and tile ranks.
//! * [`correspondence`]: branches of the correspondence and its checks.
//! * [`external`]: anti-Hecke group, anti-Farey map, Markov partition,
//!   Blaschke products and their Écalle heights.
//! * [`cusp`]: exact and floating formal series for cusp germs.
//! * [`render`]: tile and Julia pictures.
//! * [`verify`] and [`jobs`]: batch checks and JSON job specs.

pub mod correspondence;
pub mod cusp;
pub mod error;
pub mod external;
pub mod jobs;
pub mod numerics;
pub mod quadrature;
pub mod render;
pub mod scenes;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{eta, Polynomial, RationalMap, SpherePoint, C64};
pub use quadrature::{Membership, QuadratureScene, TileLabel};
