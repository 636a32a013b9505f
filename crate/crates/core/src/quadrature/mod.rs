//! Quadrature domains given as univalent images `Ω = f(𝔻)` and their
//! Schwarz reflections `σ = f ∘ η ∘ (f|𝔻)⁻¹`.

mod scene;
mod tiles;
mod univalence;

pub use scene::{CriticalPoint, QuadratureScene, SceneSpec, SingularKind, SingularPoint, CRITICAL_TOL};
pub use tiles::{Located, Membership, TileLabel, BOUNDARY_TOL};
pub use univalence::{univalence_scan, UnivalenceReport};
