#![allow(dead_code)]

use proptest::prelude::*;
use pwavg::rat::{int, rat};
use pwavg::{PiecewisePoly, Poly, Rat, StepDensity};
use rand::Rng;

/// Continuous piecewise-linear function from integer data: breakpoints
/// `b / 12`, slopes `s / 4`, value `v / 4` at the first breakpoint.
pub fn pl_from(bps: &[i64], slopes: &[i64], v0: i64) -> PiecewisePoly {
    PiecewisePoly::continuous_linear(
        bps.iter().map(|&b| rat(b, 12)).collect(),
        slopes[..bps.len() + 1].iter().map(|&s| rat(s, 4)).collect(),
        rat(v0, 4),
    )
    .unwrap()
}

pub fn pl_function(max_bps: usize) -> impl Strategy<Value = PiecewisePoly> {
    (
        prop::collection::btree_set(-60i64..=60, 0..=max_bps),
        prop::collection::vec(-40i64..=40, max_bps + 1),
        -40i64..=40,
    )
        .prop_map(|(bps, slopes, v0)| pl_from(&bps.into_iter().collect::<Vec<_>>(), &slopes, v0))
}

pub fn density_from(knots: &[i64], weights: &[i64]) -> Option<StepDensity> {
    let mut ks = vec![int(-1)];
    ks.extend(knots.iter().map(|&k| rat(k, 12)));
    ks.push(int(1));
    let ws: Vec<Rat> = weights[..knots.len() + 1].iter().map(|&w| int(w)).collect();
    StepDensity::normalized(ks, ws).ok()
}

/// Step densities with up to five pieces, knots on the grid `k / 12`,
/// zero pieces allowed.
pub fn density() -> impl Strategy<Value = StepDensity> {
    (prop::collection::btree_set(-11i64..=11, 0..=4), prop::collection::vec(0i64..=4, 5))
        .prop_filter_map("massless", |(k, w)| density_from(&k.into_iter().collect::<Vec<_>>(), &w))
}

/// Densities without zero pieces.
pub fn positive_density() -> impl Strategy<Value = StepDensity> {
    (prop::collection::btree_set(-11i64..=11, 0..=4), prop::collection::vec(1i64..=4, 5))
        .prop_filter_map("massless", |(k, w)| density_from(&k.into_iter().collect::<Vec<_>>(), &w))
}

pub fn alpha() -> impl Strategy<Value = Rat> {
    (1i64..=99).prop_map(|k| rat(k, 100))
}

pub fn small_rat(lo: i64, hi: i64, den: i64) -> impl Strategy<Value = Rat> {
    (lo * den..=hi * den).prop_map(move |n| rat(n, den))
}

// ---- seeded generators for the acceptance suite ----

pub fn rand_rat<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rat {
    rat(rng.gen_range(lo * den..=hi * den), den)
}

/// Up to `max_pieces` pieces; knots are distinct multiples of `1/60`.
pub fn rand_density<R: Rng>(rng: &mut R, max_pieces: usize) -> StepDensity {
    loop {
        let pieces = rng.gen_range(1..=max_pieces);
        let mut knots: Vec<i64> = Vec::new();
        while knots.len() < pieces - 1 {
            let k = rng.gen_range(-59..=59);
            if !knots.contains(&k) {
                knots.push(k);
            }
        }
        knots.sort();
        let mut ks = vec![int(-1)];
        ks.extend(knots.iter().map(|&k| rat(k, 60)));
        ks.push(int(1));
        let ws: Vec<Rat> = (0..pieces).map(|_| int(rng.gen_range(0..=5))).collect();
        if let Ok(d) = StepDensity::normalized(ks, ws) {
            return d;
        }
    }
}

/// Continuous piecewise-linear `f` with at most `max_bps` breakpoints in
/// `[-5, 5]`, slopes and starting value in `[-10, 10]`.
pub fn rand_pl<R: Rng>(rng: &mut R, max_bps: usize) -> PiecewisePoly {
    let n = rng.gen_range(0..=max_bps);
    let mut bps: Vec<Rat> = Vec::new();
    while bps.len() < n {
        let b = rand_rat(rng, -5, 5, 20);
        if !bps.contains(&b) {
            bps.push(b);
        }
    }
    bps.sort();
    let slopes = (0..=n).map(|_| rand_rat(rng, -10, 10, 10)).collect();
    PiecewisePoly::continuous_linear(bps, slopes, rand_rat(rng, -10, 10, 10)).unwrap()
}

pub fn rand_alpha<R: Rng>(rng: &mut R) -> Rat {
    rat(rng.gen_range(1..1000), 1000)
}

/// `outer(inner(x))` for piecewise-linear `inner` and piecewise-polynomial
/// `outer`, both on the whole line.
pub fn compose(outer: &PiecewisePoly, inner: &PiecewisePoly) -> PiecewisePoly {
    assert!(inner.max_degree() <= 1);
    let mut cuts: Vec<Rat> = inner.breakpoints().to_vec();
    for (lo, hi, p) in inner.intervals() {
        let slope = p.coeff(1);
        if slope == int(0) {
            continue;
        }
        for s in outer.breakpoints() {
            let x = (s - p.coeff(0)) / &slope;
            let x_ext = pwavg::ExtReal::Finite(x.clone());
            if lo < x_ext && x_ext < hi {
                cuts.push(x);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut pieces = Vec::with_capacity(cuts.len() + 1);
    for k in 0..=cuts.len() {
        let sample = match (k.checked_sub(1).map(|j| &cuts[j]), cuts.get(k)) {
            (None, None) => int(0),
            (None, Some(b)) => b - int(1),
            (Some(a), None) => a + int(1),
            (Some(a), Some(b)) => (a + b) / int(2),
        };
        let inner_piece = inner.piece_at(&sample);
        let outer_piece = outer.piece_at(&inner_piece.eval(&sample));
        pieces.push(outer_piece.compose(inner_piece));
    }
    PiecewisePoly::new(cuts, pieces).unwrap()
}

pub fn linear(intercept: Rat, slope: Rat) -> PiecewisePoly {
    PiecewisePoly::polynomial(Poly::linear(intercept, slope))
}

/// Continuous piecewise-linear function whose every breakpoint is a strict
/// extremum (slopes alternate in sign), with 1 to `max_extrema` extrema.
/// Extreme values are pairwise further apart than `2 S alpha_max`, where
/// `S` is the largest slope, so small averaging widths cannot reorder them.
pub fn rand_w_shape<R: Rng>(rng: &mut R, max_extrema: usize) -> PiecewisePoly {
    loop {
        let n = rng.gen_range(1..=max_extrema);
        let mut bps = vec![rand_rat(rng, -3, -1, 10)];
        for _ in 1..n {
            let gap = rat(rng.gen_range(5..=20), 10);
            let next = bps.last().unwrap() + gap;
            bps.push(next);
        }
        let first_up = rng.gen_bool(0.5);
        let slopes: Vec<Rat> = (0..=n)
            .map(|i| {
                let m = rat(rng.gen_range(1..=8), 2);
                if (i % 2 == 0) == first_up { m } else { -m }
            })
            .collect();
        let f = PiecewisePoly::continuous_linear(bps.clone(), slopes.clone(), rand_rat(rng, -5, 5, 10)).unwrap();

        let amax = bps.windows(2).map(|w| (&w[1] - &w[0]) / int(4)).min().unwrap_or(int(1)).min(int(1));
        let s = slopes.iter().map(|m| if *m < int(0) { -m } else { m.clone() }).max().unwrap();
        let margin = int(2) * s * amax;
        let values: Vec<Rat> = bps.iter().map(|b| f.value(b).unwrap()).collect();
        let separated = values
            .iter()
            .enumerate()
            .all(|(i, a)| values[i + 1..].iter().all(|b| (a - b) > margin || (b - a) > margin));
        if separated {
            return f;
        }
    }
}
