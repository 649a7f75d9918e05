//! Enumerates a ball in the Cayley graph and checks the fixed-point bound on it.

use plhomeo::group::{check_max_fixed, is_abelian_on_ball, GroupBall};
use plhomeo::PLMap;

fn main() {
    let gens: Vec<PLMap> = ["affine a=2 b=0", "affine a=1 b=1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let names = vec!["a".to_string(), "b".to_string()];
    for radius in 0..=4 {
        let ball = GroupBall::build(gens.clone(), names.clone(), radius, 1_000_000).unwrap();
        println!("radius {radius}: {} elements", ball.len());
    }
    let ball = GroupBall::build(gens, names, 3, 1_000_000).unwrap();
    for e in ball.iter().take(12) {
        println!("  {:<10} {}", ball.render(&e.word), e.map);
    }
    for n in [0, 1] {
        let v = check_max_fixed(&ball, n);
        match &v.witness {
            None => println!(
                "at most {n} fixed points: holds on the radius-{} ball",
                v.radius
            ),
            Some(w) => println!(
                "at most {n} fixed points: violated by {} with Fix = {}",
                ball.render(&w.word),
                w.fixed_set
            ),
        }
    }
    let ab = is_abelian_on_ball(&ball);
    if let Some(c) = ab.witness {
        println!(
            "generators {} and {} do not commute: [.,.] = {}",
            c.first, c.second, c.commutator
        );
    }
}
