//! External models: the anti-Hecke group `Γ_d` with its anti-Farey map
//! `ℛ_d`, the parabolic anti-Blaschke products `B_d` and the parabolic
//! anti-polynomials `z̄^d + c_d`.

mod blaschke;
mod circle;
mod hecke;
mod parabolic;

pub use blaschke::{blaschke, ecalle_height, fatou_coordinate, in_attracting_petal, FatouSample};
pub use circle::{boundary_conjugacy, markov_partition, BoundaryConjugacy, BoundaryMap, MarkovPartition};
pub use hecke::{AntiHecke, GroupWord, Letter};
pub use parabolic::{parabolic_model_data, ParabolicModel};

use crate::error::{Error, Result};

pub(crate) fn check_degree(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidConfig(format!("external models need d ≥ 2, got {d}")));
    }
    Ok(())
}
