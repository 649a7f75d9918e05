use serde::{Deserialize, Serialize};

use super::PlError;
use crate::rat::Rat;

/// A continuous piecewise-linear function of the line with rational data.
///
/// The function interpolates linearly between consecutive anchors and extends
/// past the outermost anchors with the two tail slopes. Values are stored in
/// canonical form: no anchor sits between two pieces of equal slope, so two
/// functions are equal iff their representations are identical.
///
/// An affine function `x ↦ ax + b` has no genuine breakpoint; its canonical form
/// is the empty anchor list when `b = 0`, and the single anchor `(0, b)`
/// otherwise.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PiecewiseLinear {
    anchors: Vec<(Rat, Rat)>,
    left_slope: Rat,
    right_slope: Rat,
}

/// One affine piece `x ↦ slope·x + intercept` on the closed domain `[lo, hi]`,
/// where a missing bound stands for the corresponding infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Piece {
    pub lo: Option<Rat>,
    pub hi: Option<Rat>,
    pub slope: Rat,
    pub intercept: Rat,
}

impl Piece {
    pub fn eval(&self, x: &Rat) -> Rat {
        &self.slope * x + &self.intercept
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= x) && self.hi.as_ref().is_none_or(|hi| x <= hi)
    }
}

impl PiecewiseLinear {
    /// Builds a function from anchors and tail slopes and puts it in canonical form.
    ///
    /// Breakpoints must be strictly increasing and tail slopes non-zero. With no
    /// anchors the function is `x ↦ slope·x`, so both tails must agree.
    pub fn new(
        anchors: Vec<(Rat, Rat)>,
        left_slope: Rat,
        right_slope: Rat,
    ) -> Result<PiecewiseLinear, PlError> {
        if left_slope.is_zero() || right_slope.is_zero() {
            return Err(PlError::Validation("tail slopes must be non-zero".into()));
        }
        if let Some(w) = anchors.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(PlError::Validation(format!(
                "breakpoints must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
        if anchors.is_empty() && left_slope != right_slope {
            return Err(PlError::Validation(
                "an empty anchor list requires equal tail slopes".into(),
            ));
        }
        Ok(PiecewiseLinear {
            anchors,
            left_slope,
            right_slope,
        }
        .canonicalize())
    }

    /// `x ↦ a·x + b`.
    pub fn affine(a: Rat, b: Rat) -> Result<PiecewiseLinear, PlError> {
        if a.is_zero() {
            return Err(PlError::Validation("affine slope must be non-zero".into()));
        }
        Ok(Self::canonical_affine(a, b))
    }

    fn canonical_affine(a: Rat, b: Rat) -> PiecewiseLinear {
        let anchors = if b.is_zero() {
            Vec::new()
        } else {
            vec![(Rat::zero(), b)]
        };
        PiecewiseLinear {
            anchors,
            left_slope: a.clone(),
            right_slope: a,
        }
    }

    fn canonicalize(self) -> PiecewiseLinear {
        if self.anchors.is_empty() {
            return self;
        }
        let slopes = self.slopes();
        let kept: Vec<(Rat, Rat)> = self
            .anchors
            .iter()
            .enumerate()
            .filter(|(i, _)| slopes[*i] != slopes[*i + 1])
            .map(|(_, a)| a.clone())
            .collect();
        if kept.is_empty() {
            let (b0, v0) = &self.anchors[0];
            let a = self.left_slope;
            let b = v0 - &a * b0;
            return Self::canonical_affine(a, b);
        }
        PiecewiseLinear {
            anchors: kept,
            ..self
        }
    }

    pub fn anchors(&self) -> &[(Rat, Rat)] {
        &self.anchors
    }

    pub fn left_slope(&self) -> &Rat {
        &self.left_slope
    }

    pub fn right_slope(&self) -> &Rat {
        &self.right_slope
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = &Rat> {
        self.anchors.iter().map(|(b, _)| b)
    }

    /// Slopes of the `anchors.len() + 1` pieces, left to right.
    pub fn slopes(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.anchors.len() + 1);
        out.push(self.left_slope.clone());
        for w in self.anchors.windows(2) {
            out.push((&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0));
        }
        out.push(self.right_slope.clone());
        out
    }

    pub fn pieces(&self) -> Vec<Piece> {
        if self.anchors.is_empty() {
            return vec![Piece {
                lo: None,
                hi: None,
                slope: self.left_slope.clone(),
                intercept: Rat::zero(),
            }];
        }
        let slopes = self.slopes();
        let n = self.anchors.len();
        let mut out = Vec::with_capacity(n + 1);
        for (i, slope) in slopes.into_iter().enumerate() {
            // every piece touches at least one anchor; use it to fix the intercept
            let (b, v) = if i == 0 {
                &self.anchors[0]
            } else {
                &self.anchors[i - 1]
            };
            let intercept = v - &slope * b;
            out.push(Piece {
                lo: (i > 0).then(|| self.anchors[i - 1].0.clone()),
                hi: (i < n).then(|| self.anchors[i].0.clone()),
                slope,
                intercept,
            });
        }
        out
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let n = self.anchors.len();
        if n == 0 {
            return &self.left_slope * x;
        }
        let idx = self.anchors.partition_point(|(b, _)| b <= x);
        if idx == 0 {
            let (b, v) = &self.anchors[0];
            v + &self.left_slope * (x - b)
        } else if idx == n {
            let (b, v) = &self.anchors[n - 1];
            v + &self.right_slope * (x - b)
        } else {
            let (b0, v0) = &self.anchors[idx - 1];
            let (b1, v1) = &self.anchors[idx];
            v0 + (v1 - v0) * (x - b0) / (b1 - b0)
        }
    }

    /// All `x` with `self(x) = y` that are isolated solutions on some piece of
    /// non-zero slope. Pieces of slope zero contribute nothing; their endpoints
    /// are breakpoints already.
    pub fn preimages(&self, y: &Rat) -> Vec<Rat> {
        let mut out: Vec<Rat> = self
            .pieces()
            .into_iter()
            .filter(|p| !p.slope.is_zero())
            .map(|p| ((y - &p.intercept) / &p.slope, p))
            .filter(|(x, p)| p.contains(x))
            .map(|(x, _)| x)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// The composite `self ∘ inner`.
    pub fn compose(&self, inner: &PiecewiseLinear) -> PiecewiseLinear {
        let mut points: Vec<Rat> = inner.breakpoints().cloned().collect();
        for b in self.breakpoints() {
            points.extend(inner.preimages(b));
        }
        points.sort();
        points.dedup();
        if points.is_empty() {
            points.push(Rat::zero());
        }
        let anchors = points
            .into_iter()
            .map(|x| {
                let y = self.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        let outer_at = |inner_tail: &Rat, towards_neg: bool| {
            // inner sends this end of the line to the end given by its tail's sign
            let goes_up = inner_tail.is_positive() != towards_neg;
            if goes_up {
                &self.right_slope
            } else {
                &self.left_slope
            }
        };
        let left = &inner.left_slope * outer_at(&inner.left_slope, true);
        let right = &inner.right_slope * outer_at(&inner.right_slope, false);
        PiecewiseLinear {
            anchors,
            left_slope: left,
            right_slope: right,
        }
        .canonicalize()
    }

    /// `Some((a, b))` when the function is `x ↦ a·x + b`.
    pub fn as_affine(&self) -> Option<(Rat, Rat)> {
        if self.left_slope != self.right_slope || self.anchors.len() > 1 {
            return None;
        }
        let b = self
            .anchors
            .first()
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Rat::zero);
        Some((self.left_slope.clone(), b))
    }

    pub fn is_identity(&self) -> bool {
        self.anchors.is_empty() && self.left_slope.is_one()
    }
}

/// Wire form shared by the JSON encodings of every piecewise-linear type.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RawPiecewise {
    pub left_slope: Rat,
    pub anchors: Vec<(Rat, Rat)>,
    pub right_slope: Rat,
}

impl From<PiecewiseLinear> for RawPiecewise {
    fn from(f: PiecewiseLinear) -> RawPiecewise {
        RawPiecewise {
            left_slope: f.left_slope,
            anchors: f.anchors,
            right_slope: f.right_slope,
        }
    }
}

impl TryFrom<RawPiecewise> for PiecewiseLinear {
    type Error = PlError;

    fn try_from(raw: RawPiecewise) -> Result<PiecewiseLinear, PlError> {
        PiecewiseLinear::new(raw.anchors, raw.left_slope, raw.right_slope)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn g1() -> PiecewiseLinear {
        PiecewiseLinear::new(
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

    #[test]
    fn evaluates_pieces_and_tails() {
        let g = g1();
        assert_eq!(g.eval(&rat(1, 2)), rat(3, 4));
        assert_eq!(g.eval(&rat(-2, 1)), rat(-1, 1));
        assert_eq!(g.eval(&rat(3, 1)), rat(5, 1));
        assert_eq!(g.eval(&rat(3, 4)), rat(7, 8));
    }

    #[test]
    fn drops_collinear_anchors() {
        let f = PiecewiseLinear::new(
            vec![
                (rat(0, 1), rat(0, 1)),
                (rat(1, 1), rat(2, 1)),
                (rat(2, 1), rat(4, 1)),
            ],
            rat(2, 1),
            rat(2, 1),
        )
        .unwrap();
        assert!(f.anchors().is_empty());
        assert_eq!(f.as_affine(), Some((rat(2, 1), rat(0, 1))));

        let shifted =
            PiecewiseLinear::new(vec![(rat(5, 1), rat(6, 1))], rat(1, 1), rat(1, 1)).unwrap();
        assert_eq!(shifted.anchors(), &[(rat(0, 1), rat(1, 1))]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(PiecewiseLinear::new(
            vec![(rat(1, 1), rat(0, 1)), (rat(1, 1), rat(2, 1))],
            rat(1, 1),
            rat(1, 1)
        )
        .is_err());
        assert!(PiecewiseLinear::new(vec![], rat(1, 1), rat(2, 1)).is_err());
        assert!(PiecewiseLinear::new(vec![], rat(0, 1), rat(0, 1)).is_err());
    }

    #[test]
    fn composes_through_breakpoints() {
        let g = g1();
        let shift = PiecewiseLinear::affine(rat(1, 1), rat(1, 2)).unwrap();
        let gf = g.compose(&shift);
        for k in -8..8 {
            let x = rat(k, 4);
            assert_eq!(gf.eval(&x), g.eval(&shift.eval(&x)));
        }
        assert_eq!(
            gf.breakpoints().cloned().collect::<Vec<_>>(),
            vec![rat(-1, 2), rat(0, 1), rat(1, 2)]
        );
    }

    #[test]
    fn compose_with_reversal_swaps_tails() {
        let g = g1();
        let flip = PiecewiseLinear::affine(rat(-1, 1), rat(0, 1)).unwrap();
        let gr = g.compose(&flip);
        assert_eq!(gr.left_slope(), &rat(-2, 1));
        assert_eq!(gr.right_slope(), &rat(-1, 2));
    }

    #[test]
    fn preimages_on_each_piece() {
        let g = g1();
        assert_eq!(g.preimages(&rat(3, 4)), vec![rat(1, 2)]);
        assert_eq!(g.preimages(&rat(-1, 1)), vec![rat(-2, 1)]);
    }
}
