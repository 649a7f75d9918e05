#![allow(dead_code)]

use plhomeo::{PLMap, Rat};
use proptest::prelude::*;
use rand::Rng;

pub const BOUND: i64 = 1000;

pub fn map(s: &str) -> PLMap {
    s.parse().unwrap()
}

pub fn g1() -> PLMap {
    map("pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2")
}
pub fn g2() -> PLMap {
    map("pl left_slope=2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2")
}
pub fn g3() -> PLMap {
    map("pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=1/2")
}
pub fn g4() -> PLMap {
    map("pl left_slope=1/2 anchors=(0,0);(1/2,1/4);(1,1) right_slope=2")
}
pub fn affine(a: i64, b: i64) -> PLMap {
    PLMap::affine(Rat::int(a), Rat::int(b)).unwrap()
}

fn positive<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(1..=BOUND), rng.gen_range(1..=BOUND))
}

fn signed<R: Rng>(rng: &mut R) -> Rat {
    Rat::new(rng.gen_range(-BOUND..=BOUND), rng.gen_range(1..=BOUND))
}

/// An orientation-preserving map with at most `max_anchors` anchors.
pub fn random_preserving<R: Rng>(rng: &mut R, max_anchors: usize) -> PLMap {
    let k = rng.gen_range(1..=max_anchors.max(1));
    let mut x = signed(rng);
    let mut y = signed(rng);
    let mut anchors = Vec::with_capacity(k);
    for _ in 0..k {
        anchors.push((x.clone(), y.clone()));
        x = x + positive(rng);
        y = y + positive(rng);
    }
    PLMap::new(anchors, positive(rng), positive(rng)).unwrap()
}

/// Either orientation, each with probability one half.
pub fn random_map<R: Rng>(rng: &mut R, max_anchors: usize) -> PLMap {
    let g = random_preserving(rng, max_anchors);
    if rng.gen_bool(0.5) {
        affine(-1, 0).compose(&g)
    } else {
        g
    }
}

/// A preserving map whose fixed set is finite.
pub fn random_finite_fix<R: Rng>(rng: &mut R, max_anchors: usize) -> PLMap {
    loop {
        let g = random_preserving(rng, max_anchors);
        if g.fixed_set().is_finite() && !g.is_identity() {
            return g;
        }
    }
}

pub fn arb_rat() -> impl Strategy<Value = Rat> {
    (-BOUND..=BOUND, 1..=BOUND).prop_map(|(n, d)| Rat::new(n, d))
}

fn arb_positive() -> impl Strategy<Value = Rat> {
    (1..=BOUND, 1..=BOUND).prop_map(|(n, d)| Rat::new(n, d))
}

pub fn arb_preserving() -> impl Strategy<Value = PLMap> {
    (
        arb_rat(),
        arb_rat(),
        prop::collection::vec((arb_positive(), arb_positive()), 0..6),
        arb_positive(),
        arb_positive(),
    )
        .prop_map(|(x0, y0, steps, left, right)| {
            let mut anchors = vec![(x0, y0)];
            for (dx, dy) in steps {
                let (x, y) = anchors.last().unwrap().clone();
                anchors.push((x + dx, y + dy));
            }
            PLMap::new(anchors, left, right).unwrap()
        })
}

pub fn arb_map() -> impl Strategy<Value = PLMap> {
    (arb_preserving(), any::<bool>())
        .prop_map(|(g, flip)| if flip { affine(-1, 0).compose(&g) } else { g })
}

/// Rational test points: the breakpoints, the fixed points, the midpoints
/// between them, and points beyond both ends.
pub fn probe_points(g: &PLMap) -> Vec<Rat> {
    let mut pts: Vec<Rat> = g.anchors().iter().map(|a| a.0.clone()).collect();
    pts.extend(g.fixed_set().points());
    for c in g.fixed_set().components() {
        if let plhomeo::pl::FixedComponent::Interval { lo, hi } = c {
            pts.extend(lo.iter().cloned());
            pts.extend(hi.iter().cloned());
        }
    }
    pts.sort();
    pts.dedup();
    let mut out = pts.clone();
    for w in pts.windows(2) {
        out.push(w[0].midpoint(&w[1]));
    }
    let lo = pts.first().cloned().unwrap_or_else(Rat::zero);
    let hi = pts.last().cloned().unwrap_or_else(Rat::zero);
    out.push(lo - Rat::one());
    out.push(hi + Rat::one());
    out.sort();
    out.dedup();
    out
}
