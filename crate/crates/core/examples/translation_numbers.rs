//! Translation numbers of a freely acting group, estimated exactly against a
//! reference element.

use plhomeo::build_ball;
use plhomeo::semiconj::{chart_monotonicity, estimate, translation_chart};
use plhomeo::{PLMap, Rat};

fn main() {
    // x+1 and a PL map conjugate to x+1/3
    let phi: PLMap = "pl left_slope=1 anchors=(0,0);(1,2) right_slope=1/2"
        .parse()
        .unwrap();
    let t = PLMap::translation(Rat::new(1, 3)).conjugate_by(&phi);
    let g0 = PLMap::translation(Rat::one());
    for n in [10, 50, 200, 1000] {
        let e = estimate(&t, &g0, &Rat::zero(), n);
        println!(
            "n = {n:>4}: tau in [{}, {}], width {}",
            e.lo,
            e.hi,
            e.width()
        );
    }

    let gens = vec![g0.clone(), PLMap::translation(Rat::new(3, 2))];
    let ball = build_ball(&gens, 2).unwrap();
    let chart = translation_chart(&ball, &g0, &Rat::zero(), 200).unwrap();
    for e in &chart {
        println!(
            "  {:<8} w(0) = {:<5} tau in [{}, {}]",
            ball.render(&e.word),
            e.image,
            e.estimate.lo,
            e.estimate.hi
        );
    }
    println!("order-compatible: {}", chart_monotonicity(&chart).is_none());
}
