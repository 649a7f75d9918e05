//! Finitely generated groups of PL maps, explored through finite Cayley balls.

mod ball;
mod checks;
pub mod file;
mod funnel;
mod word;

pub use ball::{build_ball, default_names, BallElement, GroupBall, DEFAULT_ELEMENT_CAP};
pub use checks::{
    abelian_global_fixed_check, check_max_fixed, common_fixed_points, finite_orbits,
    first_non_commuting, global_fixed_points, is_abelian_on_ball, orbit_entry, orbit_hits_interval,
    orientation_split, positive_generators, NonCommuting, PropertyVerdict, Status, StrayFixedPoint,
    Verdict, Violation,
};
pub use file::GroupFile;
pub use funnel::{funnel_interval, Funnel, FunnelLanding, DEFAULT_MARGIN};
pub use word::{Letter, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("resource cap of {cap} exceeded (at radius {radius})")]
    ResourceExceeded { cap: usize, radius: usize },
    #[error("the chosen generators share the fixed point {0}")]
    SharedFixedPoint(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}
