use std::fmt;

use serde::{Deserialize, Serialize};

use super::PLMap;
use crate::rat::Rat;

/// One maximal piece of a fixed-point set. Interval bounds are closed; a
/// missing bound means the interval is unbounded on that side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedComponent {
    Point(Rat),
    Interval { lo: Option<Rat>, hi: Option<Rat> },
}

/// Exact solution set of `g(x) = x`: sorted, pairwise disjoint, maximal components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FixedSet {
    components: Vec<FixedComponent>,
}

// Extended reals restricted to what fixed sets need; variant order is the order on the line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Ext {
    NegInf,
    Fin(Rat),
    PosInf,
}

#[derive(Clone, Debug)]
struct Span {
    lo: Ext,
    hi: Ext,
}

impl Span {
    fn of(c: &FixedComponent) -> Span {
        match c {
            FixedComponent::Point(p) => Span {
                lo: Ext::Fin(p.clone()),
                hi: Ext::Fin(p.clone()),
            },
            FixedComponent::Interval { lo, hi } => Span {
                lo: lo.clone().map_or(Ext::NegInf, Ext::Fin),
                hi: hi.clone().map_or(Ext::PosInf, Ext::Fin),
            },
        }
    }

    fn into_component(self) -> FixedComponent {
        match (self.lo, self.hi) {
            (Ext::Fin(a), Ext::Fin(b)) if a == b => FixedComponent::Point(a),
            (lo, hi) => FixedComponent::Interval {
                lo: match lo {
                    Ext::Fin(a) => Some(a),
                    _ => None,
                },
                hi: match hi {
                    Ext::Fin(b) => Some(b),
                    _ => None,
                },
            },
        }
    }
}

impl FixedComponent {
    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            FixedComponent::Point(p) => p == x,
            FixedComponent::Interval { lo, hi } => {
                lo.as_ref().is_none_or(|lo| lo <= x) && hi.as_ref().is_none_or(|hi| x <= hi)
            }
        }
    }

    /// Whether the component meets the open interval `(a, b)`.
    pub fn meets_open(&self, a: &Rat, b: &Rat) -> bool {
        match self {
            FixedComponent::Point(p) => a < p && p < b,
            FixedComponent::Interval { lo, hi } => {
                lo.as_ref().is_none_or(|lo| lo < b) && hi.as_ref().is_none_or(|hi| a < hi)
            }
        }
    }
}

impl FixedSet {
    pub fn empty() -> FixedSet {
        FixedSet::default()
    }

    pub fn whole_line() -> FixedSet {
        FixedSet {
            components: vec![FixedComponent::Interval { lo: None, hi: None }],
        }
    }

    pub fn from_points(points: impl IntoIterator<Item = Rat>) -> FixedSet {
        Self::normalize(points.into_iter().map(FixedComponent::Point).collect())
    }

    /// Sorts and merges arbitrary closed components into maximal disjoint ones.
    pub fn normalize(components: Vec<FixedComponent>) -> FixedSet {
        let mut spans: Vec<Span> = components.iter().map(Span::of).collect();
        spans.sort_by(|a, b| a.lo.cmp(&b.lo).then(a.hi.cmp(&b.hi)));
        let mut merged: Vec<Span> = Vec::with_capacity(spans.len());
        for s in spans {
            match merged.last_mut() {
                Some(last) if s.lo <= last.hi => {
                    if s.hi > last.hi {
                        last.hi = s.hi;
                    }
                }
                _ => merged.push(s),
            }
        }
        FixedSet {
            components: merged.into_iter().map(Span::into_component).collect(),
        }
    }

    pub fn of(g: &PLMap) -> FixedSet {
        let mut comps = Vec::new();
        for piece in g.function().pieces() {
            if piece.slope.is_one() {
                if piece.intercept.is_zero() {
                    comps.push(FixedComponent::Interval {
                        lo: piece.lo,
                        hi: piece.hi,
                    });
                }
            } else {
                let x = &piece.intercept / (Rat::one() - &piece.slope);
                if piece.contains(&x) {
                    comps.push(FixedComponent::Point(x));
                }
            }
        }
        Self::normalize(comps)
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// No interval component.
    pub fn is_finite(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, FixedComponent::Point(_)))
    }

    pub fn has_interval(&self) -> bool {
        !self.is_finite()
    }

    /// The isolated fixed points, in increasing order.
    pub fn points(&self) -> Vec<Rat> {
        self.components
            .iter()
            .filter_map(|c| match c {
                FixedComponent::Point(p) => Some(p.clone()),
                _ => None,
            })
            .collect()
    }

    /// Cardinality when finite.
    pub fn cardinality(&self) -> Option<usize> {
        self.is_finite().then_some(self.components.len())
    }

    /// True when the set has an interval component or more than `n` points.
    pub fn exceeds(&self, n: usize) -> bool {
        self.has_interval() || self.components.len() > n
    }

    pub fn contains(&self, x: &Rat) -> bool {
        self.components.iter().any(|c| c.contains(x))
    }

    pub fn intersection(&self, other: &FixedSet) -> FixedSet {
        let mut out = Vec::new();
        for a in &self.components {
            let sa = Span::of(a);
            for b in &other.components {
                let sb = Span::of(b);
                let lo = std::cmp::max(sa.lo.clone(), sb.lo.clone());
                let hi = std::cmp::min(sa.hi.clone(), sb.hi.clone());
                if lo <= hi {
                    out.push(Span { lo, hi }.into_component());
                }
            }
        }
        Self::normalize(out)
    }

    /// The image `f(Fix)`, which is the fixed set of `f g f⁻¹` when this is `Fix(g)`.
    pub fn image(&self, f: &PLMap) -> FixedSet {
        let preserving = f.is_orientation_preserving();
        let map_end = |e: Ext| match e {
            Ext::Fin(x) => Ext::Fin(f.eval(&x)),
            Ext::NegInf if preserving => Ext::NegInf,
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf if preserving => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
        };
        let comps = self
            .components
            .iter()
            .map(|c| {
                let s = Span::of(c);
                let (a, b) = (map_end(s.lo), map_end(s.hi));
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                Span { lo, hi }.into_component()
            })
            .collect();
        Self::normalize(comps)
    }
}

impl fmt::Display for FixedComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedComponent::Point(p) => write!(f, "{p}"),
            FixedComponent::Interval { lo, hi } => {
                match lo {
                    Some(lo) => write!(f, "[{lo}")?,
                    None => write!(f, "(-inf")?,
                }
                match hi {
                    Some(hi) => write!(f, ",{hi}]"),
                    None => write!(f, ",+inf)"),
                }
            }
        }
    }
}

impl fmt::Display for FixedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "{{")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn merges_touching_components() {
        let s = FixedSet::normalize(vec![
            FixedComponent::Interval {
                lo: Some(rat(1, 1)),
                hi: Some(rat(2, 1)),
            },
            FixedComponent::Point(rat(2, 1)),
            FixedComponent::Point(rat(0, 1)),
            FixedComponent::Interval {
                lo: Some(rat(2, 1)),
                hi: None,
            },
            FixedComponent::Point(rat(0, 1)),
        ]);
        assert_eq!(s.to_string(), "{0, [1,+inf)}");
        assert!(s.has_interval());
        assert!(s.contains(&rat(7, 1)));
        assert!(!s.contains(&rat(1, 2)));
    }

    #[test]
    fn intersection_of_points_and_rays() {
        let a = FixedSet::normalize(vec![
            FixedComponent::Interval {
                lo: None,
                hi: Some(rat(0, 1)),
            },
            FixedComponent::Point(rat(3, 1)),
        ]);
        let b = FixedSet::from_points([rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert_eq!(
            a.intersection(&b),
            FixedSet::from_points([rat(-1, 1), rat(0, 1)])
        );
        assert_eq!(FixedSet::whole_line().intersection(&b), b);
        assert!(FixedSet::empty().intersection(&b).is_empty());
    }

    #[test]
    fn exceeds_counts_points_and_intervals() {
        let two = FixedSet::from_points([rat(0, 1), rat(1, 1)]);
        assert!(!two.exceeds(2));
        assert!(two.exceeds(1));
        assert!(FixedSet::whole_line().exceeds(100));
        assert_eq!(two.cardinality(), Some(2));
    }

    #[test]
    fn empty_set_renders_as_empty_symbol() {
        assert_eq!(FixedSet::empty().to_string(), "∅");
    }
}
