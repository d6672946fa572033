//! Numeric evaluation of `f_alpha(x)` by Gauss-Legendre quadrature.
//!
//! This path shares nothing with the closed form beyond locating the
//! polynomial piece in force: `[-1, 1]` is cut at the density knots and at
//! every `t` where `x + alpha t` crosses a breakpoint of `f`, and each
//! sub-interval is integrated with a rule exact for the piece degree.

use std::f64::consts::PI;

use num_traits::{One, Zero};

use super::check_inputs;
use crate::density::StepDensity;
use crate::error::{Error, Result};
use crate::piecewise::{Domain, PiecewisePoly};
use crate::rat::{format_rat, to_f64, Rat};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// exact for polynomials of degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp;
        loop {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z_prev = z;
            z = z_prev - p1 / dp;
            if (z - z_prev).abs() < 1e-15 {
                break;
            }
        }
        // recompute the derivative at the converged node
        let (mut p1, mut p2) = (1.0, 0.0);
        for j in 1..=n {
            let p3 = p2;
            p2 = p1;
            p1 = ((2 * j - 1) as f64 * z * p2 - (j - 1) as f64 * p3) / j as f64;
        }
        dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `integral_{-1}^{1} f(x + alpha t) p(t) dt` in binary64.
pub fn quadrature_oracle(f: &PiecewisePoly, d: &StepDensity, alpha: &Rat, x: &Rat) -> Result<f64> {
    check_inputs(f, alpha)?;
    if let Domain::Interval(a, b) = f.domain() {
        if x < &(a + alpha) || x > &(b - alpha) {
            return Err(Error::OutOfDomain(format_rat(x)));
        }
    }
    let one = Rat::one();
    let mut cuts: Vec<Rat> = d.knots().to_vec();
    for s in f.breakpoints() {
        let t = (s - x) / alpha;
        if -&one < t && t < one {
            cuts.push(t);
        }
    }
    cuts.sort();
    cuts.dedup();

    let half = Rat::new(1.into(), 2.into());
    let (xf, af) = (to_f64(x), to_f64(alpha));
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let mid = (&w[0] + &w[1]) * &half;
        let p = density_at(d, &mid);
        if p.is_zero() {
            continue;
        }
        let piece = f.piece_at(&(x + alpha * &mid));
        let (nodes, weights) = gauss_legendre(piece.degree() / 2 + 1);
        let (lo, hi) = (to_f64(&w[0]), to_f64(&w[1]));
        let (c, r) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        let sum: f64 = nodes
            .iter()
            .zip(&weights)
            .map(|(z, wt)| wt * piece.eval_f64(xf + af * (c + r * z)))
            .sum();
        total += to_f64(&p) * r * sum;
    }
    Ok(total)
}

fn density_at(d: &StepDensity, t: &Rat) -> Rat {
    let k = d.knots()[1..].partition_point(|knot| knot <= t);
    d.values()[k.min(d.values().len() - 1)].clone()
}
