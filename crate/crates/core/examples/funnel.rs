//! Every point of the line is pushed into one fundamental interval by
//! iterating the maximum of the generators and their inverses.

use plhomeo::group::funnel_interval;
use plhomeo::{PLMap, Rat};

fn main() {
    let gens: Vec<PLMap> = ["affine a=2 b=0", "affine a=1 b=1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let funnel = funnel_interval(&gens, 1).unwrap();
    println!(
        "F(0) = {}, window ({}, {})",
        funnel.f_at_zero, funnel.interval.0, funnel.interval.1
    );
    for x in [
        Rat::int(-100),
        Rat::new(-7, 3),
        Rat::new(1, 2),
        Rat::int(37),
        Rat::new(9999, 100),
    ] {
        let l = funnel.land(&x, 10_000).unwrap();
        let chain: Vec<String> = l.chain.iter().map(|r| r.to_string()).collect();
        println!(
            "{x:>8}: F^{} lands at {}   [{}]",
            l.exponent,
            l.landing,
            chain.join(" < ")
        );
    }
}
