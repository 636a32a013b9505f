//! Cusp asymptotics: truncated power series, Puiseux inversion of
//! `f(w) = w² + …`, the Schwarz germ `σ(z) = Σ C_n(σ) z̄^{n/2}` and the
//! `(n,2)` cusp classification.

mod classify;
mod puiseux;
mod scene;
mod series;

pub use classify::{cusp_normalize, cusp_type, AxisCharacter, CuspNormalization, CuspReport, LocalCuspModel};
pub use puiseux::{inverse_puiseux, schwarz_germ, schwarz_germ_composed, PuiseuxGerm};
pub use scene::{axis_drift, quad_cusp_report, SceneCusp, NORMAL_FORM_ORDER};
pub use series::{exact, series_compose, Coeff, Exact, FormalSeries};
