use std::fmt;

use serde::{Deserialize, Serialize};

use super::function::{PiecewiseLinear, RawPiecewise};
use super::{FixedSet, PlError, Sign, TypeSignature};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Preserving,
    Reversing,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Preserving => "orientation-preserving",
            Orientation::Reversing => "orientation-reversing",
        })
    }
}

/// A piecewise-linear homeomorphism of the real line with rational data, kept
/// in canonical form so that `==` is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPiecewise", into = "RawPiecewise")]
pub struct PLMap(PiecewiseLinear);

impl PLMap {
    /// Validates that the data describes a bijection of the line: all piece
    /// slopes non-zero and of one sign.
    pub fn new(
        anchors: Vec<(Rat, Rat)>,
        left_slope: Rat,
        right_slope: Rat,
    ) -> Result<PLMap, PlError> {
        if left_slope.signum() != right_slope.signum() {
            return Err(PlError::Validation(format!(
                "tail slopes {left_slope} and {right_slope} have different signs"
            )));
        }
        let increasing = left_slope.is_positive();
        if let Some(w) = anchors.windows(2).find(|w| {
            if increasing {
                w[0].1 >= w[1].1
            } else {
                w[0].1 <= w[1].1
            }
        }) {
            return Err(PlError::Validation(format!(
                "anchor values must be strictly {} ({} then {})",
                if increasing {
                    "increasing"
                } else {
                    "decreasing"
                },
                w[0].1,
                w[1].1
            )));
        }
        PiecewiseLinear::new(anchors, left_slope, right_slope).map(PLMap)
    }

    pub fn identity() -> PLMap {
        PLMap(PiecewiseLinear::affine(Rat::one(), Rat::zero()).expect("identity"))
    }

    /// `x ↦ a·x + b`, `a ≠ 0`.
    pub fn affine(a: Rat, b: Rat) -> Result<PLMap, PlError> {
        PiecewiseLinear::affine(a, b).map(PLMap)
    }

    /// `x ↦ x + b`.
    pub fn translation(b: Rat) -> PLMap {
        PLMap(PiecewiseLinear::affine(Rat::one(), b).expect("unit slope"))
    }

    pub fn function(&self) -> &PiecewiseLinear {
        &self.0
    }

    pub fn into_function(self) -> PiecewiseLinear {
        self.0
    }

    pub fn anchors(&self) -> &[(Rat, Rat)] {
        self.0.anchors()
    }

    pub fn left_slope(&self) -> &Rat {
        self.0.left_slope()
    }

    pub fn right_slope(&self) -> &Rat {
        self.0.right_slope()
    }

    pub fn orientation(&self) -> Orientation {
        if self.0.left_slope().is_positive() {
            Orientation::Preserving
        } else {
            Orientation::Reversing
        }
    }

    pub fn is_orientation_preserving(&self) -> bool {
        self.orientation() == Orientation::Preserving
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    pub fn as_affine(&self) -> Option<(Rat, Rat)> {
        self.0.as_affine()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.eval(x)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &PLMap) -> PLMap {
        PLMap(self.0.compose(&inner.0))
    }

    pub fn inverse(&self) -> PLMap {
        let f = &self.0;
        let mut anchors: Vec<(Rat, Rat)> = f
            .anchors()
            .iter()
            .map(|(b, v)| (v.clone(), b.clone()))
            .collect();
        let (left, right) = match self.orientation() {
            Orientation::Preserving => (f.left_slope().recip(), f.right_slope().recip()),
            Orientation::Reversing => {
                anchors.reverse();
                (f.right_slope().recip(), f.left_slope().recip())
            }
        };
        PLMap(PiecewiseLinear::new(anchors, left, right).expect("inverse of a homeomorphism"))
    }

    /// The `n`-th iterate; negative powers iterate the inverse.
    pub fn pow(&self, n: i64) -> PLMap {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = PLMap::identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.compose(&base);
            }
        }
        acc
    }

    /// `by ∘ self ∘ by⁻¹`.
    pub fn conjugate_by(&self, by: &PLMap) -> PLMap {
        by.compose(self).compose(&by.inverse())
    }

    /// The commutator `self ∘ other ∘ self⁻¹ ∘ other⁻¹`.
    pub fn commutator(&self, other: &PLMap) -> PLMap {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    pub fn fixed_set(&self) -> FixedSet {
        FixedSet::of(self)
    }

    /// Sign pattern of `self - id` on the complementary intervals of the
    /// fixed-point set.
    pub fn type_signature(&self) -> Result<TypeSignature, PlError> {
        if !self.is_orientation_preserving() {
            return Err(PlError::NotOrientationPreserving);
        }
        if self.is_identity() {
            return Err(PlError::IdentityMap);
        }
        let fix = self.fixed_set();
        if !fix.is_finite() {
            return Err(PlError::InfiniteFixedSet);
        }
        let points = fix.points();
        let samples: Vec<Rat> = match (points.first(), points.last()) {
            (Some(first), Some(last)) => std::iter::once(first - Rat::one())
                .chain(points.windows(2).map(|w| w[0].midpoint(&w[1])))
                .chain(std::iter::once(last + Rat::one()))
                .collect(),
            _ => vec![Rat::zero()],
        };
        let signs = samples
            .iter()
            .map(|s| {
                if self.eval(s) > *s {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        Ok(TypeSignature::new(signs))
    }
}

impl From<PLMap> for RawPiecewise {
    fn from(g: PLMap) -> RawPiecewise {
        g.0.into()
    }
}

impl TryFrom<RawPiecewise> for PLMap {
    type Error = PlError;

    fn try_from(raw: RawPiecewise) -> Result<PLMap, PlError> {
        PLMap::new(raw.anchors, raw.left_slope, raw.right_slope)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn g1() -> PLMap {
        PLMap::new(
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 2), rat(3, 4)),
                (rat(1, 1), rat(1, 1)),
            ],
            rat(1, 2),
            rat(2, 1),
        )
        .unwrap()
    }

    fn aff(a: Rat, b: Rat) -> PLMap {
        PLMap::affine(a, b).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(PLMap::identity().eval(&rat(7, 1)), rat(7, 1));
        assert_eq!(PLMap::translation(rat(1, 1)).eval(&rat(3, 2)), rat(5, 2));
        assert_eq!(g1().eval(&rat(1, 2)), rat(3, 4));
    }

    #[test]
    fn compose_examples() {
        let g = g1();
        assert_eq!(g.compose(&PLMap::identity()), g);
        let two_x = aff(rat(2, 1), rat(0, 1));
        let plus_one = PLMap::translation(rat(1, 1));
        assert_eq!(two_x.compose(&plus_one), aff(rat(2, 1), rat(2, 1)));
        assert_eq!(plus_one.compose(&two_x), aff(rat(2, 1), rat(1, 1)));
        assert!(g.compose(&g.inverse()).is_identity());
    }

    #[test]
    fn inverse_examples() {
        assert!(PLMap::identity().inverse().is_identity());
        assert_eq!(
            aff(rat(2, 1), rat(2, 1)).inverse(),
            aff(rat(1, 2), rat(-1, 1))
        );
        assert_eq!(g1().inverse().inverse(), g1());
        let r = aff(rat(-3, 1), rat(1, 1));
        assert!(r.compose(&r.inverse()).is_identity());
    }

    #[test]
    fn power_examples() {
        assert_eq!(
            PLMap::translation(rat(1, 1)).pow(3),
            PLMap::translation(rat(3, 1))
        );
        assert!(g1().pow(0).is_identity());
        assert_eq!(aff(rat(2, 1), rat(0, 1)).pow(-2), aff(rat(1, 4), rat(0, 1)));
        assert_eq!(
            g1().pow(5),
            g1().compose(&g1())
                .compose(&g1())
                .compose(&g1())
                .compose(&g1())
        );
    }

    #[test]
    fn fixed_set_examples() {
        assert!(PLMap::translation(rat(1, 1)).fixed_set().is_empty());
        assert_eq!(
            aff(rat(2, 1), rat(0, 1)).fixed_set(),
            FixedSet::from_points([rat(0, 1)])
        );
        assert_eq!(
            g1().fixed_set(),
            FixedSet::from_points([rat(0, 1), rat(1, 1)])
        );
        assert_eq!(PLMap::identity().fixed_set(), FixedSet::whole_line());
        // affine map whose fixed point lies left of its reference anchor
        assert_eq!(
            aff(rat(2, 1), rat(2, 1)).fixed_set(),
            FixedSet::from_points([rat(-2, 1)])
        );
    }

    #[test]
    fn type_signature_examples() {
        assert_eq!(
            PLMap::translation(rat(1, 1))
                .type_signature()
                .unwrap()
                .to_string(),
            "(+)"
        );
        assert_eq!(
            aff(rat(2, 1), rat(0, 1))
                .type_signature()
                .unwrap()
                .to_string(),
            "(-,+)"
        );
        assert_eq!(g1().type_signature().unwrap().to_string(), "(+,+,+)");
        assert_eq!(
            g1().inverse().type_signature().unwrap().to_string(),
            "(-,-,-)"
        );
    }

    #[test]
    fn type_signature_errors() {
        assert!(matches!(
            aff(rat(-1, 1), rat(0, 1)).type_signature(),
            Err(PlError::NotOrientationPreserving)
        ));
        assert!(matches!(
            PLMap::identity().type_signature(),
            Err(PlError::IdentityMap)
        ));
        let bump = PLMap::new(
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(2, 1)),
                (rat(2, 1), rat(2, 1) + rat(1, 2)),
            ],
            rat(1, 1),
            rat(1, 1),
        );
        // values (0,0),(1,2),(2,5/2): slope 1 left of 0 fixes (-inf, 0]
        assert!(matches!(
            bump.unwrap().type_signature(),
            Err(PlError::InfiniteFixedSet)
        ));
    }

    #[test]
    fn equality_examples() {
        let g = g1();
        assert_eq!(PLMap::identity(), g.compose(&g.inverse()));
        assert_ne!(PLMap::translation(rat(1, 1)), PLMap::translation(rat(2, 1)));
    }

    #[test]
    fn rejects_non_monotone_data() {
        assert!(PLMap::new(
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(0, 1))],
            rat(1, 1),
            rat(1, 1)
        )
        .is_err());
        assert!(PLMap::new(
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(1, 1))],
            rat(-1, 1),
            rat(1, 1)
        )
        .is_err());
        assert!(PLMap::new(
            vec![(rat(0, 1), rat(0, 1)), (rat(1, 1), rat(1, 1))],
            rat(-1, 1),
            rat(-1, 1)
        )
        .is_err());
    }

    #[test]
    fn json_mirrors_text_fields() {
        let json = serde_json::to_string(&g1()).unwrap();
        assert_eq!(
            json,
            r#"{"left_slope":"1/2","anchors":[["0","0"],["1/2","3/4"],["1","1"]],"right_slope":"2"}"#
        );
        let back: PLMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g1());
        assert!(serde_json::from_str::<PLMap>(
            r#"{"left_slope":"1","anchors":[["0","1"],["1","0"]],"right_slope":"1"}"#
        )
        .is_err());
    }
}
