//! Certified witnesses for the two-fixed-point case analysis.
//!
//! Given `g` with `Fix(g) = {x, y}` and some `f` with `f(x)` in `(x, y)`, the
//! machine builds an element of `<g, f>` (plus context elements in one case)
//! with at least three fixed points.

mod cases;
mod expr;
mod report;

pub use cases::{
    classify_case, construct_witness, normalize_direction, orient_mover, wandering_check, Mover,
    WitnessError, DEFAULT_EXPONENT_CAP,
};
pub use expr::{Check, Env, Evaluator, Expr, Relation, Term};
pub use report::{CaseTag, Definition, Exponent, PointDef, SeparatingInterval, WitnessReport};

use crate::group::{GroupBall, GroupFile, DEFAULT_ELEMENT_CAP};
use crate::pl::PLMap;

/// Context radius used when a request file does not set one.
pub const DEFAULT_CONTEXT_RADIUS: usize = 2;

/// A witness request: a group file whose generators include `g` and `f`.
/// All named maps generate the context ball.
#[derive(Clone, Debug)]
pub struct WitnessRequest {
    pub g: PLMap,
    pub f: PLMap,
    pub context: GroupFile,
}

impl WitnessRequest {
    pub fn from_file(file: GroupFile) -> Result<WitnessRequest, WitnessError> {
        let get = |name: &str| {
            file.get(name).cloned().ok_or_else(|| {
                WitnessError::Precondition(format!("request does not define `{name}`"))
            })
        };
        Ok(WitnessRequest {
            g: get("g")?,
            f: get("f")?,
            context: file,
        })
    }

    pub fn context_ball(
        &self,
        radius: Option<usize>,
        element_cap: usize,
    ) -> Result<GroupBall, WitnessError> {
        let radius = radius
            .or(self.context.radius)
            .unwrap_or(DEFAULT_CONTEXT_RADIUS);
        GroupBall::build(
            self.context.maps(),
            self.context.names(),
            radius,
            element_cap,
        )
        .map_err(|e| WitnessError::Precondition(e.to_string()))
    }

    pub fn run(
        &self,
        radius: Option<usize>,
        exponent_cap: u64,
    ) -> Result<WitnessReport, WitnessError> {
        let ball = self.context_ball(radius, DEFAULT_ELEMENT_CAP)?;
        construct_witness(&self.g, &self.f, Some(&ball), exponent_cap)
    }
}
