//! Translation numbers of a freely acting group, read off against the orbit
//! grid of a reference element `g0`.
//!
//! If `g0^p(x0) <= w^n(x0) < g0^(p+1)(x0)` then `τ(w)` lies in
//! `[p/n, (p+1)/n]`, with `τ(g0) = 1`. Equality pins `τ(w) = p/n`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::SemiconjError;
use crate::group::{GroupBall, Word};
use crate::pl::PLMap;
use crate::rat::Rat;

pub const DEFAULT_ITERATIONS: usize = 200;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauEstimate {
    pub lo: Rat,
    pub hi: Rat,
    pub iterations: usize,
    pub reference: PLMap,
    pub base_point: Rat,
}

impl TauEstimate {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, t: &Rat) -> bool {
        &self.lo <= t && t <= &self.hi
    }

    pub fn intersects(&self, other: &TauEstimate) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartEntry {
    pub word: Word,
    pub element: PLMap,
    /// `w(x0)`.
    pub image: Rat,
    pub estimate: TauEstimate,
}

/// Position of `y` in the grid `g0^k(x0)`: the `p` with
/// `g0^p(x0) <= y < g0^(p+1)(x0)`, and whether `y` is a grid point.
fn grid_index(g0: &PLMap, g0_inv: &PLMap, x0: &Rat, y: &Rat) -> (i64, bool) {
    let mut p = 0i64;
    let mut at = x0.clone();
    if y >= x0 {
        loop {
            let next = g0.eval(&at);
            if &next > y {
                return (p, &at == y);
            }
            at = next;
            p += 1;
        }
    } else {
        while &at > y {
            at = g0_inv.eval(&at);
            p -= 1;
        }
        (p, &at == y)
    }
}

pub fn estimate(w: &PLMap, g0: &PLMap, x0: &Rat, iterations: usize) -> TauEstimate {
    let n = iterations.max(1);
    let mut y = x0.clone();
    for _ in 0..n {
        y = w.eval(&y);
    }
    let (p, exact) = grid_index(g0, &g0.inverse(), x0, &y);
    let lo = Rat::new(p, n as i64);
    let hi = if exact {
        lo.clone()
    } else {
        Rat::new(p + 1, n as i64)
    };
    TauEstimate {
        lo,
        hi,
        iterations: n,
        reference: g0.clone(),
        base_point: x0.clone(),
    }
}

/// Estimates `τ(w)` for every element of the ball.
pub fn translation_chart(
    ball: &GroupBall,
    g0: &PLMap,
    x0: &Rat,
    iterations: usize,
) -> Result<Vec<ChartEntry>, SemiconjError> {
    if !ball.contains(g0) {
        return Err(SemiconjError::NotInBall(g0.to_string()));
    }
    if let Some(e) = ball.non_trivial().find(|e| !e.map.fixed_set().is_empty()) {
        return Err(SemiconjError::NotFree {
            word: ball.render(&e.word),
            fixed_set: e.map.fixed_set().to_string(),
        });
    }
    if &g0.eval(x0) <= x0 {
        return Err(SemiconjError::NotIncreasing(format!(
            "g0({x0}) = {} is not above x0",
            g0.eval(x0)
        )));
    }
    Ok(ball
        .elements()
        .par_iter()
        .map(|e| ChartEntry {
            word: e.word.clone(),
            element: e.map.clone(),
            image: e.map.eval(x0),
            estimate: estimate(&e.map, g0, x0, iterations),
        })
        .collect())
}

/// A pair of entries whose images and estimates are ordered inconsistently.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrderViolation {
    pub lower: usize,
    pub upper: usize,
}

/// Checks that `w(x0) < w'(x0)` implies `τ(w) <= τ(w')` up to the estimate
/// widths, and that equal images give intersecting estimates.
pub fn chart_monotonicity(chart: &[ChartEntry]) -> Option<OrderViolation> {
    let mut order: Vec<usize> = (0..chart.len()).collect();
    order.sort_by(|&a, &b| chart[a].image.cmp(&chart[b].image));
    // index of the largest `lo` among entries with strictly smaller image
    let mut best_below: Option<usize> = None;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && chart[order[j]].image == chart[order[i]].image {
            j += 1;
        }
        let group = &order[i..j];
        for &k in group {
            if let Some(b) = best_below {
                if chart[b].estimate.lo > chart[k].estimate.hi {
                    return Some(OrderViolation { lower: b, upper: k });
                }
            }
            if let Some(&other) = group
                .iter()
                .find(|&&o| !chart[o].estimate.intersects(&chart[k].estimate))
            {
                return Some(OrderViolation {
                    lower: k.min(other),
                    upper: k.max(other),
                });
            }
        }
        for &k in group {
            if best_below.is_none_or(|b| chart[k].estimate.lo > chart[b].estimate.lo) {
                best_below = Some(k);
            }
        }
        i = j;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_ball;
    use crate::rat::rat;

    fn t(n: i64, d: i64) -> PLMap {
        PLMap::translation(rat(n, d))
    }

    #[test]
    fn integer_translations_are_exact() {
        let ball = build_ball(&[t(1, 1)], 4).unwrap();
        let chart = translation_chart(&ball, &t(1, 1), &rat(0, 1), 100).unwrap();
        for e in &chart {
            let (_, b) = e.element.as_affine().unwrap();
            assert_eq!(
                (e.estimate.lo.clone(), e.estimate.hi.clone()),
                (b.clone(), b)
            );
        }
        assert!(chart_monotonicity(&chart).is_none());
    }

    #[test]
    fn half_integer_bracket() {
        let ball = build_ball(&[t(1, 1), t(3, 2)], 2).unwrap();
        let chart = translation_chart(&ball, &t(1, 1), &rat(0, 1), 100).unwrap();
        let e = chart.iter().find(|e| e.element == t(3, 2)).unwrap();
        assert!(e.estimate.contains(&rat(3, 2)));
        assert!(e.estimate.width() <= rat(1, 50));
        assert!(chart_monotonicity(&chart).is_none());
        // irrational-looking ratios still bracket
        let est = estimate(&t(5, 7), &t(1, 1), &rat(0, 1), 200);
        assert!(est.contains(&rat(5, 7)) && est.width() <= rat(1, 200));
        let est = estimate(&t(-5, 7), &t(1, 1), &rat(0, 1), 200);
        assert!(est.contains(&rat(-5, 7)) && est.width() <= rat(1, 200));
    }

    #[test]
    fn errors() {
        let ball = build_ball(&[PLMap::affine(rat(2, 1), rat(0, 1)).unwrap(), t(1, 1)], 1).unwrap();
        assert!(matches!(
            translation_chart(&ball, &t(1, 1), &rat(0, 1), 10),
            Err(SemiconjError::NotFree { .. })
        ));
        let ball = build_ball(&[t(1, 1)], 1).unwrap();
        assert!(matches!(
            translation_chart(&ball, &t(2, 1), &rat(0, 1), 10),
            Err(SemiconjError::NotInBall(_))
        ));
        assert!(matches!(
            translation_chart(&ball, &t(-1, 1), &rat(0, 1), 10),
            Err(SemiconjError::NotIncreasing(_))
        ));
    }

    #[test]
    fn shuffled_chart_is_flagged() {
        let ball = build_ball(&[t(1, 1), t(3, 2)], 2).unwrap();
        let mut chart = translation_chart(&ball, &t(1, 1), &rat(0, 1), 100).unwrap();
        let estimates: Vec<TauEstimate> = chart.iter().map(|e| e.estimate.clone()).collect();
        let n = chart.len();
        for (i, e) in chart.iter_mut().enumerate() {
            e.estimate = estimates[(i + 1) % n].clone();
        }
        assert!(chart_monotonicity(&chart).is_some());
    }
}
