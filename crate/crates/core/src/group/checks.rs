use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ball::{BallElement, GroupBall};
use super::word::Word;
use super::GroupError;
use crate::pl::{FixedComponent, FixedSet, PLMap};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    HoldsOnBall,
    Violated,
}

/// Outcome of checking a property over a finite ball. A violation carries its
/// witness and is conclusive; `HoldsOnBall` is only evidence at `radius`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict<W> {
    pub status: Status,
    pub radius: usize,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn holds(radius: usize) -> Verdict<W> {
        Verdict {
            status: Status::HoldsOnBall,
            radius,
            witness: None,
        }
    }

    pub fn violated(radius: usize, witness: W) -> Verdict<W> {
        Verdict {
            status: Status::Violated,
            radius,
            witness: Some(witness),
        }
    }

    pub fn from_option(radius: usize, witness: Option<W>) -> Verdict<W> {
        match witness {
            Some(w) => Verdict::violated(radius, w),
            None => Verdict::holds(radius),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::HoldsOnBall
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }
}

/// An element whose fixed set breaks the "at most N fixed points" hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub element: PLMap,
    pub word: Word,
    pub fixed_set: FixedSet,
}

pub type PropertyVerdict = Verdict<Violation>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonCommuting {
    pub first: usize,
    pub second: usize,
    pub commutator: PLMap,
}

/// A fixed point of some element that is not fixed by the whole group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrayFixedPoint {
    pub element: PLMap,
    pub word: Word,
    pub component: FixedComponent,
}

/// Scans every non-identity element for more than `n` fixed points or a fixed
/// interval. The reported witness is the first offender in ball order, so it is
/// stable as the radius grows.
pub fn check_max_fixed(ball: &GroupBall, n: usize) -> PropertyVerdict {
    let elements = ball.elements();
    let hit = elements[1..]
        .par_iter()
        .map(|e| (e, e.map.fixed_set()))
        .find_first(|(_, fix)| fix.exceeds(n))
        .map(|(e, fixed_set)| Violation {
            element: e.map.clone(),
            word: e.word.clone(),
            fixed_set,
        });
    Verdict::from_option(ball.radius(), hit)
}

/// Intersection of the fixed sets of `maps`; the whole line when `maps` is empty.
pub fn common_fixed_points(maps: &[PLMap]) -> FixedSet {
    maps.iter().fold(FixedSet::whole_line(), |acc, g| {
        acc.intersection(&g.fixed_set())
    })
}

/// Points fixed by the whole group: those fixed by every generator.
pub fn global_fixed_points(ball: &GroupBall) -> FixedSet {
    common_fixed_points(ball.generators())
}

pub fn orientation_split(ball: &GroupBall) -> (Vec<&BallElement>, Vec<&BallElement>) {
    ball.iter().partition(|e| e.map.is_orientation_preserving())
}

/// First pair of non-commuting generators, if any.
pub fn first_non_commuting(generators: &[PLMap]) -> Option<NonCommuting> {
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let c = generators[i].commutator(&generators[j]);
            if !c.is_identity() {
                return Some(NonCommuting {
                    first: i,
                    second: j,
                    commutator: c,
                });
            }
        }
    }
    None
}

/// Generators pairwise commuting is equivalent to the group being abelian.
pub fn is_abelian_on_ball(ball: &GroupBall) -> Verdict<NonCommuting> {
    Verdict::from_option(ball.radius(), first_non_commuting(ball.generators()))
}

/// For an abelian group: every fixed point of every non-trivial element must be
/// globally fixed.
pub fn abelian_global_fixed_check(
    ball: &GroupBall,
) -> Result<Verdict<StrayFixedPoint>, GroupError> {
    if let Some(nc) = first_non_commuting(ball.generators()) {
        return Err(GroupError::Precondition(format!(
            "generators {} and {} do not commute",
            ball.names()[nc.first],
            ball.names()[nc.second]
        )));
    }
    let global = global_fixed_points(ball);
    let elements = ball.elements();
    let stray = elements[1..].par_iter().find_map_first(|e| {
        e.map.fixed_set().components().iter().find_map(|c| {
            let own = FixedSet::normalize(vec![c.clone()]);
            (own.intersection(&global) != own).then(|| StrayFixedPoint {
                element: e.map.clone(),
                word: e.word.clone(),
                component: c.clone(),
            })
        })
    });
    Ok(Verdict::from_option(ball.radius(), stray))
}

/// First ball element `w` with `w(x)` in the open interval `(lo, hi)`.
pub fn orbit_entry<'a>(
    ball: &'a GroupBall,
    x: &Rat,
    lo: &Rat,
    hi: &Rat,
) -> Result<Option<&'a BallElement>, GroupError> {
    if lo >= hi {
        return Err(GroupError::Precondition(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    Ok(ball.iter().find(|e| {
        let y = e.map.eval(x);
        lo < &y && &y < hi
    }))
}

pub fn orbit_hits_interval(
    ball: &GroupBall,
    x: &Rat,
    lo: &Rat,
    hi: &Rat,
) -> Result<bool, GroupError> {
    orbit_entry(ball, x, lo, hi).map(|e| e.is_some())
}

/// A generating set of the orientation-preserving subgroup `G₊`.
///
/// With no reversing generator this is the preserving generators themselves.
/// Otherwise, taking the first reversing generator `r` as coset
/// representative, the Schreier generators are `s` and `r s r⁻¹` for
/// preserving `s`, and `s r⁻¹` and `r s` for reversing `s`. Identities and
/// repeats are dropped.
pub fn positive_generators(generators: &[PLMap]) -> Vec<PLMap> {
    let r = generators.iter().find(|g| !g.is_orientation_preserving());
    let mut out: Vec<PLMap> = Vec::new();
    let mut push = |m: PLMap| {
        if !m.is_identity() && !out.contains(&m) {
            out.push(m);
        }
    };
    for s in generators {
        match (r, s.is_orientation_preserving()) {
            (None, _) => push(s.clone()),
            (Some(r), true) => {
                push(s.clone());
                push(s.conjugate_by(r));
            }
            (Some(r), false) => {
                push(s.compose(&r.inverse()));
                push(r.compose(s));
            }
        }
    }
    out
}

/// Finite orbits of the group generated by `generators`, computed exactly.
///
/// An orientation-preserving map preserving a finite set fixes it pointwise,
/// so every finite orbit lies in `Fix(G₊)`; its orbit is `{p, r(p)}` for any
/// reversing generator `r`. Returns the orbits of the isolated points of
/// `Fix(G₊)` together with its interval components, each point of which also
/// has a finite orbit.
pub fn finite_orbits(generators: &[PLMap]) -> (Vec<Vec<Rat>>, Vec<FixedComponent>) {
    let fix = common_fixed_points(&positive_generators(generators));
    let reversing = generators.iter().find(|g| !g.is_orientation_preserving());
    let mut orbits: Vec<Vec<Rat>> = Vec::new();
    let mut intervals = Vec::new();
    for c in fix.components() {
        match c {
            FixedComponent::Point(p) => {
                let mut orbit = vec![p.clone()];
                if let Some(r) = reversing {
                    orbit.push(r.eval(p));
                }
                orbit.sort();
                orbit.dedup();
                if !orbits.contains(&orbit) {
                    orbits.push(orbit);
                }
            }
            interval => intervals.push(interval.clone()),
        }
    }
    (orbits, intervals)
}
