mod common;

use common::*;
use plhomeo::group::{build_ball, Word};
use plhomeo::pl::{FixedComponent, Sign};
use plhomeo::semiconj::{collapse_map, estimate, verify_equivariance, MonotonePL};
use plhomeo::{PLMap, Rat, TypeSignature};
use proptest::prelude::*;

fn reversed_flipped(t: &TypeSignature) -> TypeSignature {
    TypeSignature::new(t.signs().iter().rev().map(|s| s.flip()).collect())
}

fn finite_fix() -> impl Strategy<Value = PLMap> {
    arb_preserving().prop_filter("finite non-empty-type fixed set", |g| {
        g.fixed_set().is_finite() && !g.is_identity()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn text_round_trip(g in arb_map()) {
        let back: PLMap = g.to_string().parse().unwrap();
        prop_assert_eq!(&back, &g);
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<PLMap>(&json).unwrap(), g);
    }

    #[test]
    fn composition_is_associative(a in arb_map(), b in arb_map(), c in arb_map()) {
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
    }

    #[test]
    fn composition_matches_pointwise(a in arb_map(), b in arb_map(), x in arb_rat()) {
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn inverse_round_trip(g in arb_map(), x in arb_rat()) {
        let inv = g.inverse();
        prop_assert!(g.compose(&inv).is_identity());
        prop_assert!(inv.compose(&g).is_identity());
        prop_assert_eq!(inv.eval(&g.eval(&x)), x);
        prop_assert_eq!(inv.inverse(), g);
    }

    #[test]
    fn powers_add(g in arb_preserving(), m in -3i64..4, n in -3i64..4) {
        prop_assert_eq!(g.pow(m).compose(&g.pow(n)), g.pow(m + n));
    }

    #[test]
    fn fixed_set_agrees_with_probes(g in arb_map()) {
        let fix = g.fixed_set();
        for x in probe_points(&g) {
            prop_assert_eq!(g.eval(&x) == x, fix.contains(&x), "x = {}", x);
        }
        // between consecutive probes the sign of g - id cannot change unseen
        let pts = probe_points(&g);
        for w in pts.windows(2) {
            let m = w[0].midpoint(&w[1]);
            if g.eval(&m) != m {
                prop_assert!(!fix.components().iter().any(|c| c.meets_open(&w[0], &w[1])
                    && !matches!(c, FixedComponent::Point(p) if p == &w[0] || p == &w[1])));
            }
        }
    }

    #[test]
    fn conjugation_transports_fixed_sets(g in arb_map(), f in arb_map()) {
        prop_assert_eq!(g.conjugate_by(&f).fixed_set(), g.fixed_set().image(&f));
    }

    #[test]
    fn type_is_a_conjugacy_invariant(g in finite_fix(), f in arb_preserving()) {
        let t = g.type_signature().unwrap();
        prop_assert_eq!(g.conjugate_by(&f).type_signature().unwrap(), t.clone());
        let r = affine(-1, 0).compose(&f);
        prop_assert_eq!(g.conjugate_by(&r).type_signature().unwrap(), reversed_flipped(&t));
    }

    #[test]
    fn type_is_a_power_invariant(g in finite_fix(), k in 1i64..5) {
        let t = g.type_signature().unwrap();
        prop_assert_eq!(g.pow(k).type_signature().unwrap(), t.clone());
        prop_assert_eq!(g.pow(-k).type_signature().unwrap(), t.flipped());
        prop_assert_eq!(t.signs().len(), g.fixed_set().cardinality().unwrap() + 1);
    }

    #[test]
    fn type_signs_match_samples(g in finite_fix()) {
        let t = g.type_signature().unwrap();
        let pts = g.fixed_set().points();
        let mut samples = Vec::new();
        match (pts.first(), pts.last()) {
            (Some(a), Some(b)) => {
                samples.push(a - Rat::one());
                samples.extend(pts.windows(2).map(|w| w[0].midpoint(&w[1])));
                samples.push(b + Rat::one());
            }
            _ => samples.push(Rat::zero()),
        }
        for (s, x) in t.signs().iter().zip(&samples) {
            let up = g.eval(x) > *x;
            prop_assert_eq!(*s == Sign::Plus, up);
        }
    }

    #[test]
    fn collapse_is_monotone_with_the_given_plateaus(
        gaps in prop::collection::vec((1i64..50, 1i64..50), 1..5),
        x in arb_rat(),
        y in arb_rat(),
    ) {
        let mut intervals = Vec::new();
        let mut at = Rat::int(-100);
        for (gap, len) in gaps {
            let lo = &at + Rat::new(gap, 7);
            let hi = &lo + Rat::new(len, 5);
            at = hi.clone();
            intervals.push((lo, hi));
        }
        let c = collapse_map(&intervals).unwrap();
        prop_assert_eq!(c.plateaus(), intervals.clone());
        if x <= y {
            prop_assert!(c.eval(&x) <= c.eval(&y));
        }
        for (lo, hi) in &intervals {
            prop_assert_eq!(c.eval(lo), c.eval(&lo.midpoint(hi)));
            prop_assert_eq!(c.eval(lo), c.eval(hi));
        }
        let inside = intervals.iter().any(|(lo, hi)| lo <= &x && &x <= hi)
            || intervals.iter().any(|(lo, hi)| lo <= &y && &y <= hi);
        if x < y && !inside && !intervals.iter().any(|(lo, hi)| x <= *lo && *hi <= y) {
            prop_assert_eq!(c.eval(&y) - c.eval(&x), &y - &x);
        }
    }

    #[test]
    fn equivariance_transports_along_homeomorphisms(g in arb_preserving(), phi in arb_preserving(), d in 1i64..9) {
        let h = MonotonePL::from_map(&phi).unwrap();
        let image = g.conjugate_by(&phi);
        prop_assert!(verify_equivariance(&h, &[(g.clone(), image.clone())]));
        let wrong = PLMap::translation(Rat::new(d, 3)).compose(&image);
        prop_assert!(!verify_equivariance(&h, &[(g, wrong)]));
    }

    #[test]
    fn translation_estimates_nest(a in 1i64..40, b in -40i64..40, q in 1i64..12, n in 1usize..60) {
        // w = x + b/q relative to g0 = x + a/q has exact translation number b/a
        let g0 = PLMap::translation(Rat::new(a, q));
        let w = PLMap::translation(Rat::new(b, q));
        let tau = Rat::new(b, a);
        let coarse = estimate(&w, &g0, &Rat::zero(), n);
        let fine = estimate(&w, &g0, &Rat::zero(), 2 * n);
        prop_assert!(coarse.contains(&tau) && fine.contains(&tau));
        prop_assert!(fine.width() <= coarse.width());
        prop_assert!(coarse.intersects(&fine));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ball_words_evaluate_to_their_elements(a in arb_preserving(), b in arb_preserving()) {
        let ball = build_ball(&[a.clone(), b.clone()], 2).unwrap();
        for e in ball.iter() {
            prop_assert_eq!(&e.word.evaluate(ball.generators()), &e.map);
            prop_assert_eq!(e.word.inverse().evaluate(ball.generators()), e.map.inverse());
        }
        prop_assert!(ball.iter().next().unwrap().word == Word::identity());
    }
}
