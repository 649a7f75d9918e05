use std::fmt;

use serde::{Deserialize, Serialize};

use super::SemiconjError;
use crate::pl::{PLMap, PiecewiseLinear, RawPiecewise};
use crate::rat::Rat;

/// A non-decreasing proper PL map: slopes between anchors may be zero, the
/// tails are positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPiecewise", into = "RawPiecewise")]
pub struct MonotonePL(PiecewiseLinear);

impl MonotonePL {
    pub fn new(
        anchors: Vec<(Rat, Rat)>,
        left_slope: Rat,
        right_slope: Rat,
    ) -> Result<MonotonePL, SemiconjError> {
        if !left_slope.is_positive() || !right_slope.is_positive() {
            return Err(SemiconjError::NotMonotone(
                "tail slopes must be positive".into(),
            ));
        }
        if let Some(w) = anchors.windows(2).find(|w| w[0].1 > w[1].1) {
            return Err(SemiconjError::NotMonotone(format!(
                "value {} is followed by {}",
                w[0].1, w[1].1
            )));
        }
        let f = PiecewiseLinear::new(anchors, left_slope, right_slope)
            .map_err(|e| SemiconjError::NotMonotone(e.to_string()))?;
        Ok(MonotonePL(f))
    }

    pub fn identity() -> MonotonePL {
        MonotonePL(PLMap::identity().into_function())
    }

    /// Fails for orientation-reversing maps.
    pub fn from_map(g: &PLMap) -> Result<MonotonePL, SemiconjError> {
        if !g.is_orientation_preserving() {
            return Err(SemiconjError::NotMonotone(
                "orientation-reversing map".into(),
            ));
        }
        Ok(MonotonePL(g.function().clone()))
    }

    pub fn function(&self) -> &PiecewiseLinear {
        &self.0
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.eval(x)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &MonotonePL) -> MonotonePL {
        MonotonePL(self.0.compose(&inner.0))
    }

    /// Maximal closed intervals on which the map is constant.
    pub fn plateaus(&self) -> Vec<(Rat, Rat)> {
        let mut out: Vec<(Rat, Rat)> = Vec::new();
        for w in self.0.anchors().windows(2) {
            if w[0].1 == w[1].1 {
                match out.last_mut() {
                    Some(last) if last.1 == w[0].0 => last.1 = w[1].0.clone(),
                    _ => out.push((w[0].0.clone(), w[1].0.clone())),
                }
            }
        }
        out
    }

    /// The map as a homeomorphism, when it has no plateau.
    pub fn to_map(&self) -> Option<PLMap> {
        if !self.plateaus().is_empty() {
            return None;
        }
        PLMap::new(
            self.0.anchors().to_vec(),
            self.0.left_slope().clone(),
            self.0.right_slope().clone(),
        )
        .ok()
    }
}

impl From<MonotonePL> for RawPiecewise {
    fn from(h: MonotonePL) -> RawPiecewise {
        h.0.into()
    }
}

impl TryFrom<RawPiecewise> for MonotonePL {
    type Error = SemiconjError;

    fn try_from(raw: RawPiecewise) -> Result<MonotonePL, SemiconjError> {
        MonotonePL::new(raw.anchors, raw.left_slope, raw.right_slope)
    }
}

impl fmt::Display for MonotonePL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Whether `image ∘ h = h ∘ g` holds exactly for every pair.
pub fn verify_equivariance(h: &MonotonePL, pairs: &[(PLMap, PLMap)]) -> bool {
    first_equivariance_failure(h, pairs).is_none()
}

/// Index of the first pair with `image ∘ h ≠ h ∘ g`.
pub fn first_equivariance_failure(h: &MonotonePL, pairs: &[(PLMap, PLMap)]) -> Option<usize> {
    pairs.iter().position(|(g, image)| {
        image.function().compose(h.function()) != h.function().compose(g.function())
    })
}
