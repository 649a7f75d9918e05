//! Collapses intervals to points and pushes a map through the collapse.

use plhomeo::semiconj::{collapse_map, induced_map, verify_equivariance};
use plhomeo::{PLMap, Rat};

fn main() {
    let intervals = vec![(Rat::zero(), Rat::one()), (Rat::int(2), Rat::int(3))];
    let c = collapse_map(&intervals).unwrap();
    println!("collapse: {c}");
    println!("plateaus: {:?}", c.plateaus());

    // x+2 permutes the two intervals (and the rest of their orbit is ignored here)
    let g = PLMap::translation(Rat::int(2));
    match induced_map(&c, &g) {
        Ok(h) => println!("induced: {h}"),
        Err(e) => println!("x+2 does not descend: {e}"),
    }

    let g: PLMap = "pl left_slope=1 anchors=(0,0);(1,1);(3/2,3/2) right_slope=1"
        .parse()
        .unwrap();
    let square: PLMap = "pl left_slope=1 anchors=(0,0);(1/2,1/4);(1,1) right_slope=1"
        .parse()
        .unwrap();
    let g = g.compose(&square);
    let h = induced_map(&c, &g).unwrap();
    println!("{g}\n  descends to {h}");
    println!("h c = c g: {}", verify_equivariance(&c, &[(g, h)]));
    println!(
        "overlap: {}",
        collapse_map(&[(Rat::zero(), Rat::int(2)), (Rat::one(), Rat::int(3))]).unwrap_err()
    );
}
