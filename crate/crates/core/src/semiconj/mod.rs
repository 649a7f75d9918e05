//! Semi-conjugacy tools: translation charts, equivariance, collapse maps,
//! minimal sets and the end-to-end classification.

mod chart;
mod collapse;
mod minimal;
mod monotone;
mod pipeline;

pub use chart::{
    chart_monotonicity, estimate, translation_chart, ChartEntry, OrderViolation, TauEstimate,
    DEFAULT_ITERATIONS,
};
pub use collapse::{collapse_map, induced_map, union_of_intervals, CollapseData};
pub use minimal::{
    classify_minimal, point_orbit, MinimalKind, MinimalOptions, MinimalReport, DEFAULT_POINT_CAP,
};
pub use monotone::{first_equivariance_failure, verify_equivariance, MonotonePL};
pub use pipeline::{
    theorem_a_for_file, theorem_a_report, Classification, ClassificationReport, Evidence,
    TheoremAConfig, DISCLAIMER,
};

use thiserror::Error;

use crate::group::GroupError;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemiconjError {
    #[error("not a monotone proper map: {0}")]
    NotMonotone(String),
    #[error("intervals [{}, {}] and [{}, {}] overlap", first.0, first.1, second.0, second.1)]
    Overlap {
        first: Box<(Rat, Rat)>,
        second: Box<(Rat, Rat)>,
    },
    #[error("interval [{}, {}] is empty or degenerate", .0.0, .0.1)]
    EmptyInterval(Box<(Rat, Rat)>),
    #[error("map does not descend: {0}")]
    NoDescent(String),
    #[error("the action is not free: {word} fixes {fixed_set}")]
    NotFree { word: String, fixed_set: String },
    #[error("reference element {0} is not in the ball")]
    NotInBall(String),
    #[error("reference element does not move the base point up: {0}")]
    NotIncreasing(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}
