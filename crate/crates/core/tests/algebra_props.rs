mod common;

use common::*;
use proptest::prelude::*;
use pwavg::rat::{int, rat};
use pwavg::{Error, PiecewisePoly, Poly, Rat, Side, StepDensity};

fn no_identical_neighbours(f: &PiecewisePoly) -> bool {
    f.pieces().windows(2).all(|w| w[0] != w[1])
}

/// Piecewise quadratics that may jump, from integer data.
fn jumpy_function() -> impl Strategy<Value = PiecewisePoly> {
    (
        prop::collection::btree_set(-30i64..=30, 0..=5),
        prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 6),
    )
        .prop_map(|(bps, coeffs)| {
            let bps: Vec<Rat> = bps.into_iter().map(|b| rat(b, 6)).collect();
            let pieces = coeffs[..bps.len() + 1]
                .iter()
                .map(|c| Poly::new(c.iter().map(|&v| rat(v, 2)).collect()))
                .collect();
            PiecewisePoly::new(bps, pieces).unwrap()
        })
}

fn sample_points() -> Vec<Rat> {
    (-40..=40).map(|k| rat(2 * k + 1, 14)).collect()
}

proptest! {
    #[test]
    fn every_operation_returns_canonical_form(f in jumpy_function(), g in pl_function(4), c in small_rat(-3, 3, 5)) {
        prop_assert!(no_identical_neighbours(&f));
        prop_assert!(no_identical_neighbours(&PiecewisePoly::combine(&int(1), &f, &c, &g).unwrap()));
        prop_assert!(no_identical_neighbours(&f.antiderivative(&int(0)).unwrap()));
        prop_assert!(no_identical_neighbours(&g.derivative().unwrap()));
        prop_assert!(no_identical_neighbours(&f.shift(&c)));
        prop_assert!(no_identical_neighbours(&g.scale(&c)));
    }

    #[test]
    fn antiderivative_differentiates_back(f in jumpy_function(), base in small_rat(-4, 4, 3)) {
        let big_f = f.antiderivative(&base).unwrap();
        prop_assert!(big_f.continuity_class() >= 0);
        prop_assert_eq!(big_f.value(&base).unwrap(), int(0));
        let back = big_f.derivative().unwrap();
        for x in sample_points() {
            if f.breakpoints().contains(&x) {
                continue;
            }
            prop_assert_eq!(back.value(&x).unwrap(), f.value(&x).unwrap());
        }
    }

    #[test]
    fn combine_is_bilinear(
        f in jumpy_function(),
        g in jumpy_function(),
        a in small_rat(-3, 3, 4),
        b in small_rat(-3, 3, 4),
    ) {
        let h = PiecewisePoly::combine(&a, &f, &b, &g).unwrap();
        for x in sample_points() {
            for side in [Side::Left, Side::Right] {
                let expect = &a * f.eval(&x, side).unwrap() + &b * g.eval(&x, side).unwrap();
                prop_assert_eq!(h.eval(&x, side).unwrap(), expect);
            }
        }
    }

    #[test]
    fn combine_keeps_continuity_class(f in pl_function(4), g in pl_function(4), a in small_rat(-3, 3, 4)) {
        let h = PiecewisePoly::combine(&a, &f, &int(1), &g).unwrap();
        prop_assert!(h.continuity_class() >= f.continuity_class().min(g.continuity_class()));
    }

    #[test]
    fn density_rejects_any_mass_but_one(
        knots in prop::collection::btree_set(-11i64..=11, 0..=4),
        weights in prop::collection::vec(0i64..=4, 5),
        eps in 1i64..=1000,
    ) {
        let knots: Vec<i64> = knots.into_iter().collect();
        if let Some(d) = density_from(&knots, &weights) {
            let mut values = d.values().to_vec();
            values[0] += rat(eps, 1_000_000_007);
            let err = StepDensity::new(d.knots().to_vec(), values).unwrap_err();
            prop_assert!(matches!(err, Error::InvalidDensity(_)));
            prop_assert!(StepDensity::new(d.knots().to_vec(), d.values().to_vec()).is_ok());
        }
    }
}
