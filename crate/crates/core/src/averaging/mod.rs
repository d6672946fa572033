//! Closed-form averaging of piecewise polynomials against step densities.
//!
//! With `F` an antiderivative of `f`,
//!
//! ```text
//! f_alpha(x) = sum_i p_i * integral_{t_i}^{t_{i+1}} f(x + alpha t) dt
//!            = (1/alpha) sum_i p_i (F(x + alpha t_{i+1}) - F(x + alpha t_i))
//! ```
//!
//! Regrouping by knot, `f_alpha = sum_k w_k F(. + alpha t_k)` with
//! `w_k = (p_{k-1} - p_k) / alpha` and `p_{-1} = p_{n+1} = 0`. The same
//! weights applied to `f` give `f_alpha'`.

mod quadrature;

pub use quadrature::{gauss_legendre, quadrature_oracle};

use num_traits::{Signed, Zero};

use crate::density::StepDensity;
use crate::error::{Error, Result};
use crate::piecewise::{Domain, PiecewisePoly};
use crate::poly::Poly;
use crate::rat::{format_rat, Rat};
use crate::stability::x_chain;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AveragingResult {
    pub f_alpha: PiecewisePoly,
    pub alpha: Rat,
    pub source_breakpoints: Vec<Rat>,
    pub density_knots: Vec<Rat>,
}

impl AveragingResult {
    /// `order`-th derivative of `f_alpha`, by repeated piecewise
    /// differentiation.
    pub fn derivative(&self, order: usize) -> Result<PiecewisePoly> {
        let mut g = self.f_alpha.clone();
        for _ in 0..order {
            g = g.derivative()?;
        }
        Ok(g)
    }
}

pub(crate) fn check_inputs(f: &PiecewisePoly, alpha: &Rat) -> Result<()> {
    if !alpha.is_positive() {
        return Err(Error::AlphaNonPositive);
    }
    if f.continuity_class() < 0 {
        return Err(Error::NotContinuous);
    }
    if let Domain::Interval(a, b) = f.domain() {
        let width = b - a;
        if alpha * Rat::from_integer(2.into()) >= width {
            return Err(Error::DomainTooNarrow { width: format_rat(&width), alpha: format_rat(alpha) });
        }
    }
    Ok(())
}

/// `(t_k, w_k)` for every knot.
fn knot_weights(d: &StepDensity, alpha: &Rat) -> Vec<(Rat, Rat)> {
    let vals = d.values();
    d.knots()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            let before = if k == 0 { Rat::zero() } else { vals[k - 1].clone() };
            let after = vals.get(k).cloned().unwrap_or_else(Rat::zero);
            (t.clone(), (before - after) / alpha)
        })
        .collect()
}

fn shifted_sum(g: &PiecewisePoly, d: &StepDensity, alpha: &Rat) -> Result<PiecewisePoly> {
    let mut acc: Option<PiecewisePoly> = None;
    for (t, w) in knot_weights(d, alpha) {
        let term = g.shift(&(alpha * &t));
        acc = Some(match acc {
            None => term.scale(&w),
            Some(a) => PiecewisePoly::combine(&Rat::from_integer(1.into()), &a, &w, &term)?,
        });
    }
    Ok(acc.expect("a density has at least two knots"))
}

/// Exact `f_alpha`. On a bounded domain `[a, b]` the result lives on
/// `[a + alpha, b - alpha]`.
pub fn average(f: &PiecewisePoly, d: &StepDensity, alpha: &Rat) -> Result<AveragingResult> {
    check_inputs(f, alpha)?;
    let base = match f.domain() {
        Domain::Line => Rat::zero(),
        Domain::Interval(a, _) => a.clone(),
    };
    let antiderivative = f.antiderivative(&base)?;
    Ok(AveragingResult {
        f_alpha: shifted_sum(&antiderivative, d, alpha)?,
        alpha: alpha.clone(),
        source_breakpoints: f.breakpoints().to_vec(),
        density_knots: d.knots().to_vec(),
    })
}

/// Exact `f_alpha'`, computed as
/// `(1/alpha) sum_i p_i (f(x + alpha t_{i+1}) - f(x + alpha t_i))`.
pub fn average_derivative(f: &PiecewisePoly, d: &StepDensity, alpha: &Rat) -> Result<PiecewisePoly> {
    check_inputs(f, alpha)?;
    shifted_sum(f, d, alpha)
}

/// Derivative of the averaged V-function `{L x; R x}`, written out from the
/// X chain: `L` left of `-alpha`, `R` right of `alpha`, and on
/// `(-alpha t_{i+1}, -alpha t_i)` the affine interpolation from `X_{i+1}`
/// to `X_i`.
pub fn vee_profile(left: &Rat, right: &Rat, d: &StepDensity, alpha: &Rat) -> Result<PiecewisePoly> {
    if !alpha.is_positive() {
        return Err(Error::AlphaNonPositive);
    }
    let chain = x_chain(left, right, d);
    let t = d.knots();
    let n1 = t.len() - 1; // n + 1
    let breakpoints: Vec<Rat> = (0..=n1).rev().map(|i| -(alpha * &t[i])).collect();
    let mut pieces = Vec::with_capacity(n1 + 2);
    pieces.push(Poly::constant(left.clone()));
    for i in (0..n1).rev() {
        // X_{i+1} + (x + alpha t_{i+1}) / (alpha d_i) * (X_i - X_{i+1})
        let slope = (&chain[i] - &chain[i + 1]) / (alpha * (&t[i + 1] - &t[i]));
        let intercept = &chain[i + 1] + &slope * alpha * &t[i + 1];
        pieces.push(Poly::linear(intercept, slope));
    }
    pieces.push(Poly::constant(right.clone()));
    PiecewisePoly::new(breakpoints, pieces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::piecewise::Side;
    use crate::rat::{int, rat};

    fn gap_density() -> StepDensity {
        StepDensity::normalized(vec![int(-1), rat(-1, 2), int(0), int(1)], vec![int(1), int(0), rat(1, 4)]).unwrap()
    }

    fn abs() -> PiecewisePoly {
        PiecewisePoly::vee(int(-1), int(1))
    }

    #[test]
    fn constants_are_fixed() {
        let c = PiecewisePoly::constant(rat(-7, 3));
        for d in [gap_density(), StepDensity::uniform()] {
            assert_eq!(average(&c, &d, &rat(3, 7)).unwrap().f_alpha, c);
        }
    }

    #[test]
    fn identity_shifts_by_first_moment() {
        let x = PiecewisePoly::polynomial(Poly::linear(int(0), int(1)));
        let fa = average(&x, &gap_density(), &rat(2, 5)).unwrap();
        // first moment of the density is -1/3
        assert_eq!(fa.f_alpha, PiecewisePoly::polynomial(Poly::linear(rat(-2, 15), int(1))));
        let fa = average(&x, &StepDensity::uniform(), &rat(2, 5)).unwrap();
        assert_eq!(fa.f_alpha, x);
    }

    #[test]
    fn abs_closed_form() {
        for alpha in [rat(1, 4), rat(1, 2), int(3)] {
            let fa = average(&abs(), &StepDensity::uniform(), &alpha).unwrap().f_alpha;
            assert_eq!(fa.breakpoints(), &[-&alpha, alpha.clone()]);
            let two_alpha = &alpha * int(2);
            let mid = Poly::new(vec![&alpha * &alpha / &two_alpha, int(0), int(1) / &two_alpha]);
            assert_eq!(fa.pieces()[1], mid);
            assert_eq!(fa.pieces()[0], Poly::linear(int(0), int(-1)));
            assert_eq!(fa.pieces()[2], Poly::linear(int(0), int(1)));
        }
    }

    #[test]
    fn rejects_bad_alpha_and_narrow_domains() {
        assert_eq!(average(&abs(), &StepDensity::uniform(), &int(0)), Err(Error::AlphaNonPositive));
        assert_eq!(average(&abs(), &StepDensity::uniform(), &int(-1)), Err(Error::AlphaNonPositive));
        let f = abs().restrict(&int(-1), &int(1)).unwrap();
        assert!(matches!(average(&f, &StepDensity::uniform(), &int(1)), Err(Error::DomainTooNarrow { .. })));
        let fa = average(&f, &StepDensity::uniform(), &rat(1, 2)).unwrap().f_alpha;
        assert_eq!(fa.domain(), &Domain::Interval(rat(-1, 2), rat(1, 2)));
    }

    #[test]
    fn rejects_jumps() {
        let step = PiecewisePoly::new(vec![int(0)], vec![Poly::constant(int(0)), Poly::constant(int(1))]).unwrap();
        assert_eq!(average(&step, &StepDensity::uniform(), &int(1)), Err(Error::NotContinuous));
    }

    #[test]
    fn derivative_of_linear_is_its_slope() {
        let f = PiecewisePoly::polynomial(Poly::linear(int(4), rat(-3, 2)));
        let d = average_derivative(&f, &gap_density(), &rat(1, 3)).unwrap();
        assert_eq!(d, PiecewisePoly::constant(rat(-3, 2)));
    }

    #[test]
    fn zero_piece_derivative_vanishes_on_plateau() {
        let f = PiecewisePoly::vee(int(-1), int(2));
        for alpha in [rat(1, 10), rat(1, 4), rat(2, 5), int(5)] {
            let d = average_derivative(&f, &gap_density(), &alpha).unwrap();
            let plateau = d.restrict(&int(0), &(&alpha / int(2))).unwrap();
            assert_eq!(plateau, PiecewisePoly::constant(int(0)).restrict(&int(0), &(&alpha / int(2))).unwrap());
            assert_eq!(d.value(&(-&alpha - int(1))).unwrap(), int(-1));
            assert_eq!(d.value(&(&alpha + int(1))).unwrap(), int(2));
        }
    }

    #[test]
    fn derivative_routes_agree() {
        let f = PiecewisePoly::vee(int(-1), int(2));
        let alpha = rat(2, 5);
        let fa = average(&f, &gap_density(), &alpha).unwrap();
        assert_eq!(fa.derivative(1).unwrap(), average_derivative(&f, &gap_density(), &alpha).unwrap());
        assert_eq!(fa.f_alpha.continuity_class(), 1);
    }

    #[test]
    fn vee_profile_examples() {
        let c = vee_profile(&int(3), &int(3), &gap_density(), &rat(1, 2)).unwrap();
        assert_eq!(c, PiecewisePoly::constant(int(3)));

        let ramp = vee_profile(&int(-1), &int(1), &StepDensity::uniform(), &int(1)).unwrap();
        assert_eq!(ramp.pieces()[1], Poly::linear(int(0), int(1)));
        assert_eq!(ramp.breakpoints(), &[int(-1), int(1)]);
        assert_eq!(ramp, average_derivative(&abs(), &StepDensity::uniform(), &int(1)).unwrap());

        let alpha = rat(3, 7);
        let p = vee_profile(&int(-1), &int(2), &gap_density(), &alpha).unwrap();
        assert_eq!(p.eval(&int(0), Side::Right).unwrap(), int(0));
        assert_eq!(p.eval(&(&alpha / int(2)), Side::Left).unwrap(), int(0));
        assert_eq!(p.value(&(&alpha / int(4))).unwrap(), int(0));
    }
}
