//! Builds elements with three fixed points out of a map with exactly two
//! fixed points and a map moving one of them inside the other's span.

use plhomeo::group::GroupBall;
use plhomeo::witness::{classify_case, construct_witness, DEFAULT_EXPONENT_CAP};
use plhomeo::PLMap;

fn map(s: &str) -> PLMap {
    s.parse().unwrap()
}

fn main() {
    let g1 = map("pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2");
    let g4 = map("pl left_slope=1/2 anchors=(0,0);(1/2,1/4);(1,1) right_slope=2");
    let shift = map("affine a=1 b=1/2");
    let squeeze = map("pl left_slope=1 anchors=(0,1/2);(1,3/4) right_slope=1");

    let report = construct_witness(&g1, &shift, None, DEFAULT_EXPONENT_CAP).unwrap();
    print!("{report}");
    println!();

    // the (+,-,+) case needs translations on both sides of the span
    let names = ["g", "f", "u", "v"].map(String::from).to_vec();
    let context = GroupBall::build(
        vec![
            g4.clone(),
            squeeze.clone(),
            map("affine a=1 b=-2"),
            map("affine a=1 b=2"),
        ],
        names,
        1,
        1000,
    )
    .unwrap();
    println!("case {}", classify_case(&g4, &squeeze).unwrap());
    let report = construct_witness(&g4, &squeeze, Some(&context), DEFAULT_EXPONENT_CAP).unwrap();
    for d in &report.definitions {
        println!("  {} = {}", d.name, d.expr);
    }
    println!(
        "fixed points of {}: {}",
        report.witness_expr, report.fixed_points
    );
    println!("re-verified from the inputs alone: {:?}", report.verify());

    let fixes_y = map("pl left_slope=1 anchors=(0,1/2);(1,1) right_slope=1");
    println!(
        "\n{}",
        construct_witness(&g1, &fixes_y, None, DEFAULT_EXPONENT_CAP).unwrap_err()
    );
}
