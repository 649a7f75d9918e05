//! Heuristic identification of the minimal invariant set.
//!
//! Finite orbits are detected exactly. The other three kinds are guessed from
//! the orbit of one base point, explored point by point to a fixed depth.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::group::{finite_orbits, GroupBall, Word};
use crate::pl::PLMap;
use crate::rat::Rat;

pub const DEFAULT_POINT_CAP: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MinimalKind {
    FiniteOrbit,
    DiscreteSuspected,
    DenseSuspected,
    CantorSuspected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalOptions {
    pub window: (Rat, Rat),
    pub resolution: Rat,
    /// Word length up to which the orbit of the base point is explored.
    pub depth: usize,
    pub point_cap: usize,
    /// Defaults to the left end of the window.
    pub base_point: Option<Rat>,
}

impl MinimalOptions {
    /// Explores to twice the ball radius; single-radius orbits are too coarse
    /// to resolve dense orbits of affine groups at the default resolutions.
    pub fn for_ball(ball: &GroupBall, window: (Rat, Rat), resolution: Rat) -> MinimalOptions {
        MinimalOptions {
            window,
            resolution,
            depth: 2 * ball.radius(),
            point_cap: DEFAULT_POINT_CAP,
            base_point: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalReport {
    pub kind: MinimalKind,
    /// False only for `FiniteOrbit`, which is exact.
    pub heuristic: bool,
    pub finite_orbits: Vec<Vec<Rat>>,
    pub base_point: Rat,
    pub window: (Rat, Rat),
    pub resolution: Rat,
    pub depth: usize,
    /// Whether exploration stopped at the point cap.
    pub truncated: bool,
    pub points_in_window: usize,
    /// Largest gap between consecutive orbit points, the window ends included.
    pub max_gap: Option<Rat>,
    /// The same gap for the orbit explored to half the depth.
    pub max_gap_half_depth: Option<Rat>,
    pub min_gap: Option<Rat>,
    /// A fixed-point-free element whose orbit of the base point contains all
    /// observed orbit points in the window.
    pub free_element: Option<Word>,
}

/// Orbit of `x` under words of length at most `depth`.
pub fn point_orbit(generators: &[PLMap], x: &Rat, depth: usize, cap: usize) -> (Vec<Rat>, bool) {
    let maps: Vec<PLMap> = generators
        .iter()
        .flat_map(|g| [g.clone(), g.inverse()])
        .collect();
    let mut seen: HashSet<Rat> = HashSet::from([x.clone()]);
    let mut frontier = vec![x.clone()];
    let mut truncated = false;
    'outer: for _ in 0..depth {
        let mut next = Vec::new();
        for p in &frontier {
            for g in &maps {
                let q = g.eval(p);
                if seen.insert(q.clone()) {
                    next.push(q);
                    if seen.len() >= cap {
                        truncated = true;
                        break 'outer;
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut out: Vec<Rat> = seen.into_iter().collect();
    out.sort();
    (out, truncated)
}

fn orbit_covers(w: &PLMap, base: &Rat, points: &[Rat], window: &(Rat, Rat)) -> bool {
    let mut covered: HashSet<Rat> = HashSet::new();
    for map in [w.clone(), w.inverse()] {
        let mut p = base.clone();
        // w has no fixed point, so one direction leaves the window monotonically
        for _ in 0..points.len() + 2 {
            if p < window.0 && map.eval(&p) < p || p > window.1 && map.eval(&p) > p {
                break;
            }
            covered.insert(p.clone());
            p = map.eval(&p);
        }
    }
    points.iter().all(|p| covered.contains(p))
}

pub fn classify_minimal(ball: &GroupBall, options: &MinimalOptions) -> MinimalReport {
    let (lo, hi) = options.window.clone();
    let base = options.base_point.clone().unwrap_or_else(|| lo.clone());
    let (orbits, _) = finite_orbits(ball.generators());
    let mut report = MinimalReport {
        kind: MinimalKind::FiniteOrbit,
        heuristic: false,
        finite_orbits: orbits,
        base_point: base.clone(),
        window: options.window.clone(),
        resolution: options.resolution.clone(),
        depth: options.depth,
        truncated: false,
        points_in_window: 0,
        max_gap: None,
        max_gap_half_depth: None,
        min_gap: None,
        free_element: None,
    };
    if !report.finite_orbits.is_empty() {
        return report;
    }
    report.heuristic = true;
    let (orbit, truncated) =
        point_orbit(ball.generators(), &base, options.depth, options.point_cap);
    report.truncated = truncated;
    let inside: Vec<Rat> = orbit.into_iter().filter(|p| &lo <= p && p <= &hi).collect();
    report.points_in_window = inside.len();
    report.max_gap = fenced_max_gap(&inside, &lo, &hi);
    let (half, _) = point_orbit(
        ball.generators(),
        &base,
        options.depth / 2,
        options.point_cap,
    );
    let half: Vec<Rat> = half.into_iter().filter(|p| &lo <= p && p <= &hi).collect();
    report.max_gap_half_depth = fenced_max_gap(&half, &lo, &hi);
    report.min_gap = inside.windows(2).map(|w| &w[1] - &w[0]).min();

    if report
        .max_gap
        .as_ref()
        .is_some_and(|g| g < &options.resolution)
    {
        report.kind = MinimalKind::DenseSuspected;
        return report;
    }
    if report
        .min_gap
        .as_ref()
        .is_none_or(|g| g >= &options.resolution)
    {
        report.free_element = ball
            .non_trivial()
            .find(|e| {
                e.map.is_orientation_preserving()
                    && e.map.fixed_set().is_empty()
                    && orbit_covers(&e.map, &base, &inside, &options.window)
            })
            .map(|e| e.word.clone());
        if report.free_element.is_some() {
            report.kind = MinimalKind::DiscreteSuspected;
            return report;
        }
    }
    // gaps still halving with depth: the orbit is filling the window, not
    // settling onto a set with persistent holes
    let shrinking = match (&report.max_gap, &report.max_gap_half_depth) {
        (Some(full), Some(half)) => full * Rat::int(2) <= *half,
        _ => false,
    };
    report.kind = if shrinking {
        MinimalKind::DenseSuspected
    } else {
        MinimalKind::CantorSuspected
    };
    report
}

fn fenced_max_gap(sorted: &[Rat], lo: &Rat, hi: &Rat) -> Option<Rat> {
    let fenced: Vec<&Rat> = std::iter::once(lo)
        .chain(sorted.iter())
        .chain(std::iter::once(hi))
        .collect();
    fenced.windows(2).map(|w| w[1] - w[0]).max()
}
