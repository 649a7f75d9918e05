use serde::{Deserialize, Serialize};

use super::monotone::{verify_equivariance, MonotonePL};
use super::SemiconjError;
use crate::pl::PLMap;
use crate::rat::Rat;

/// Collapses each closed interval `[lo, hi]` to a point.
///
/// The result has slope 1 off the intervals, the first plateau sits at height
/// `lo₁`, and everything to its left is fixed. Touching intervals merge into
/// one plateau; overlapping ones are rejected.
pub fn collapse_map(intervals: &[(Rat, Rat)]) -> Result<MonotonePL, SemiconjError> {
    let mut sorted = intervals.to_vec();
    sorted.sort();
    if let Some((lo, hi)) = sorted.iter().find(|(lo, hi)| lo >= hi) {
        return Err(SemiconjError::EmptyInterval(Box::new((
            lo.clone(),
            hi.clone(),
        ))));
    }
    let mut merged: Vec<(Rat, Rat)> = Vec::new();
    for (lo, hi) in sorted {
        match merged.last_mut() {
            Some(last) if lo < last.1 => {
                return Err(SemiconjError::Overlap {
                    first: Box::new(last.clone()),
                    second: Box::new((lo, hi)),
                });
            }
            Some(last) if lo == last.1 => last.1 = hi,
            _ => merged.push((lo, hi)),
        }
    }
    let mut removed = Rat::zero();
    let mut anchors = Vec::with_capacity(2 * merged.len());
    for (lo, hi) in merged {
        let height = &lo - &removed;
        removed = removed + (&hi - &lo);
        anchors.push((lo, height.clone()));
        anchors.push((hi, height));
    }
    MonotonePL::new(anchors, Rat::one(), Rat::one())
}

/// Merges overlapping or touching closed intervals.
pub fn union_of_intervals(intervals: &[(Rat, Rat)]) -> Vec<(Rat, Rat)> {
    let mut sorted = intervals.to_vec();
    sorted.sort();
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    for (lo, hi) in sorted {
        match out.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// The map `ĝ` with `ĝ ∘ c = c ∘ g`, when `g` respects the plateaus of `c`.
pub fn induced_map(c: &MonotonePL, g: &PLMap) -> Result<PLMap, SemiconjError> {
    let cf = c.function();
    let mut points: Vec<Rat> = cf.breakpoints().cloned().collect();
    points.extend(g.function().breakpoints().cloned());
    let g_inv = g.inverse();
    points.extend(cf.breakpoints().map(|b| g_inv.eval(b)));
    points.sort();
    points.dedup();

    let mut anchors: Vec<(Rat, Rat)> = Vec::new();
    for p in points {
        let (t, v) = (c.eval(&p), c.eval(&g.eval(&p)));
        match anchors.last() {
            Some((t0, v0)) if *t0 == t => {
                if *v0 != v {
                    return Err(SemiconjError::NoDescent(format!(
                        "{g} separates points that are identified at height {t}"
                    )));
                }
            }
            _ => anchors.push((t, v)),
        }
    }
    let hat = PLMap::new(anchors, g.left_slope().clone(), g.right_slope().clone())
        .map_err(|e| SemiconjError::NoDescent(e.to_string()))?;
    if !verify_equivariance(c, &[(g.clone(), hat.clone())]) {
        return Err(SemiconjError::NoDescent(format!(
            "{g} does not descend through the collapse"
        )));
    }
    Ok(hat)
}

/// A collapse of wandering intervals and the generators it induces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CollapseData {
    pub intervals: Vec<(Rat, Rat)>,
    pub map: MonotonePL,
    pub induced: Vec<PLMap>,
}
