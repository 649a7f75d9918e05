//! Orientation, exact fixed sets and type signatures of a few maps, and how
//! the type behaves under inversion, powers and conjugation.

use plhomeo::{PLMap, Rat};

fn main() {
    let maps = [
        ("x+1", "affine a=1 b=1"),
        ("2x", "affine a=2 b=0"),
        (
            "g1",
            "pl left_slope=1/2 anchors=(0,0);(1/2,3/4);(1,1) right_slope=2",
        ),
        (
            "g4",
            "pl left_slope=1/2 anchors=(0,0);(1/2,1/4);(1,1) right_slope=2",
        ),
        (
            "bump",
            "pl left_slope=1 anchors=(0,0);(1,1/2);(2,2) right_slope=1",
        ),
        ("-x", "affine a=-1 b=0"),
    ];
    for (name, text) in maps {
        let g: PLMap = text.parse().unwrap();
        let ty = match g.type_signature() {
            Ok(t) => t.to_string(),
            Err(e) => format!("undefined ({e})"),
        };
        println!(
            "{name:>5}: {}, Fix = {}, type {ty}",
            g.orientation(),
            g.fixed_set()
        );
    }

    let g: PLMap = maps[3].1.parse().unwrap();
    let phi: PLMap = "pl left_slope=1 anchors=(0,0);(1,2) right_slope=1/2"
        .parse()
        .unwrap();
    let conj = g.conjugate_by(&phi);
    println!();
    println!(
        "g4^-1        type {}",
        g.inverse().type_signature().unwrap()
    );
    println!("g4^3         type {}", g.pow(3).type_signature().unwrap());
    println!(
        "phi g4 phi^-1 type {}, Fix = {}",
        conj.type_signature().unwrap(),
        conj.fixed_set()
    );
    println!("  canonical form: {conj}");
    println!("  value at 1/3: {}", conj.eval(&Rat::new(1, 3)));
}
