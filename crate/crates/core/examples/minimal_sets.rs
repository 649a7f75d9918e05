//! Heuristic shape of the minimal invariant set, sampled from one orbit.

use plhomeo::build_ball;
use plhomeo::semiconj::{classify_minimal, MinimalOptions};
use plhomeo::{PLMap, Rat};

fn main() {
    let g1: PLMap = "pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2"
        .parse()
        .unwrap();
    let groups = [
        ("x+1", vec![PLMap::translation(Rat::one())]),
        (
            "x+1, x+3/2",
            vec![
                PLMap::translation(Rat::one()),
                PLMap::translation(Rat::new(3, 2)),
            ],
        ),
        (
            "2x, x+1",
            vec![
                PLMap::affine(Rat::int(2), Rat::zero()).unwrap(),
                PLMap::translation(Rat::one()),
            ],
        ),
        ("g1", vec![g1]),
    ];
    for (name, gens) in groups {
        let ball = build_ball(&gens, 4).unwrap();
        let opts = MinimalOptions::for_ball(&ball, (Rat::zero(), Rat::int(4)), Rat::new(1, 20));
        let r = classify_minimal(&ball, &opts);
        let gap = |g: &Option<Rat>| g.as_ref().map_or("-".to_string(), |g| g.to_string());
        println!(
            "{name:<12} {:?} (heuristic: {}), {} orbit points in window, gaps {}..{}",
            r.kind,
            r.heuristic,
            r.points_in_window,
            gap(&r.min_gap),
            gap(&r.max_gap)
        );
    }
}
