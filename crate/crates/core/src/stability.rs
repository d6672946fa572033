//! Decidable stability criteria for extrema of piecewise-linear functions
//! under averaging by a step density.
//!
//! A strict minimum with one-sided slopes `L < 0 < R` is modelled by the
//! V-function `{L x; R x}`. Averaging it produces a derivative that climbs
//! from `L` to `R` through the values of the X chain
//! `X_i = L mu[t_0, t_i] + R mu[t_i, t_{n+1}]`; the germ is stable when no two
//! consecutive chain values vanish, since otherwise the averaged function is
//! flat on a whole interval.

use num_traits::{One, Signed, Zero};

use crate::density::StepDensity;
use crate::error::{Error, Result};
use crate::piecewise::{PiecewisePoly, Side};
use crate::rat::{ExtReal, Rat};
use crate::topology::{critical_sequence, CriticalSequence};

/// One-sided derivative limits at `position`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GermSlopes {
    pub position: Rat,
    pub left: Rat,
    pub right: Rat,
}

impl GermSlopes {
    pub fn new(position: Rat, left: Rat, right: Rat) -> Self {
        GermSlopes { position, left, right }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StabilityStatus {
    Stable,
    UnstableCriterion,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilityVerdict {
    pub germ: GermSlopes,
    /// `X_0, ..., X_{n+1}` of the germ as given, so `X_0 = R` and `X_{n+1} = L`.
    pub x_chain: Vec<Rat>,
    pub curvature_c: Rat,
    pub status: StabilityStatus,
    /// First `i` with `X_i = X_{i+1} = 0`.
    pub witness: Option<usize>,
}

pub fn one_sided_slopes(f: &PiecewisePoly, x0: &Rat) -> Result<GermSlopes> {
    let d = f.derivative()?;
    Ok(GermSlopes {
        position: x0.clone(),
        left: d.eval(x0, Side::Left)?,
        right: d.eval(x0, Side::Right)?,
    })
}

/// `X_i` for `i = 0, ..., n + 1`.
pub fn x_sequence(g: &GermSlopes, d: &StepDensity) -> Vec<Rat> {
    x_chain(&g.left, &g.right, d)
}

pub(crate) fn x_chain(left: &Rat, right: &Rat, d: &StepDensity) -> Vec<Rat> {
    // below = mu[t_0, t_i]; above = 1 - below = mu[t_i, t_{n+1}]
    let mut below = Rat::zero();
    let mut chain = Vec::with_capacity(d.knots().len());
    chain.push(right.clone());
    for (w, p) in d.knots().windows(2).zip(d.values()) {
        below += (&w[1] - &w[0]) * p;
        chain.push(left * &below + right * (Rat::one() - &below));
    }
    chain
}

/// `min_i (X_i - X_{i+1}) / (t_{i+1} - t_i)`, taken on the minimum-oriented
/// germ (both slopes negated when `L > R`).
pub fn curvature_constant(g: &GermSlopes, d: &StepDensity) -> Rat {
    let (left, right) = if g.left > g.right { (-&g.left, -&g.right) } else { (g.left.clone(), g.right.clone()) };
    let chain = x_chain(&left, &right, d);
    chain
        .windows(2)
        .zip(d.knots().windows(2))
        .map(|(x, t)| (&x[0] - &x[1]) / (&t[1] - &t[0]))
        .min()
        .expect("a density has at least one piece")
}

/// The stability criterion for one germ.
///
/// Minima need `L < 0 < R`; maxima (`L > 0 > R`) are handled by negating
/// the function, which negates the chain and keeps its zeros. Any other
/// slope pattern is not a strict extremum germ and gets
/// [`StabilityStatus::NotApplicable`].
pub fn lr_stable(g: &GermSlopes, d: &StepDensity) -> StabilityVerdict {
    let x_chain = x_sequence(g, d);
    let curvature_c = curvature_constant(g, d);
    let strict_min = g.left.is_negative() && g.right.is_positive();
    let strict_max = g.left.is_positive() && g.right.is_negative();
    let (status, witness) = if !(strict_min || strict_max) {
        (StabilityStatus::NotApplicable, None)
    } else {
        match x_chain.windows(2).position(|w| w[0].is_zero() && w[1].is_zero()) {
            Some(i) => (StabilityStatus::UnstableCriterion, Some(i)),
            None => (StabilityStatus::Stable, None),
        }
    };
    StabilityVerdict { germ: g.clone(), x_chain, curvature_c, status, witness }
}

/// Checks the perturbation hypothesis at `x0`: with `f` the V-model built
/// from the one-sided slopes of `g`, `h' = g' - f'` has both one-sided
/// limits equal to zero at `x0`.
pub fn certify_perturbation(g: &PiecewisePoly, x0: &Rat) -> Result<bool> {
    let slopes = one_sided_slopes(g, x0)?;
    let model = PiecewisePoly::vee(slopes.left, slopes.right).shift(&-x0);
    let h = PiecewisePoly::combine(&Rat::one(), g, &-Rat::one(), &model)?;
    let dh = h.derivative()?;
    Ok(dh.eval(x0, Side::Left)?.is_zero() && dh.eval(x0, Side::Right)?.is_zero())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlobalReport {
    pub extrema: CriticalSequence,
    pub verdicts: Vec<StabilityVerdict>,
    /// Extreme values are mutually distinct.
    pub values_distinct: bool,
    /// No extreme value equals a limit at either end.
    pub values_differ_from_limits: bool,
    pub stable: bool,
}

impl GlobalReport {
    pub fn generic(&self) -> bool {
        self.values_distinct && self.values_differ_from_limits
    }
}

/// One verdict per local extremum of a continuous piecewise-linear `f`.
/// Genericity failures are reported through the flags, not as errors.
pub fn global_stability_report(f: &PiecewisePoly, d: &StepDensity) -> Result<GlobalReport> {
    if f.max_degree() > 1 {
        return Err(Error::DegreeTooHigh { degree: f.max_degree(), max: 1 });
    }
    let extrema = critical_sequence(f, None)?;
    let verdicts = extrema
        .extrema
        .iter()
        .map(|e| one_sided_slopes(f, &e.position).map(|g| lr_stable(&g, d)))
        .collect::<Result<Vec<_>>>()?;
    let values_distinct = extrema.values_distinct();
    let values_differ_from_limits = extrema.extrema.iter().all(|e| {
        let v = ExtReal::Finite(e.value.clone());
        v != extrema.left_limit && v != extrema.right_limit
    });
    let stable = values_distinct
        && values_differ_from_limits
        && verdicts.iter().all(|v| v.status == StabilityStatus::Stable);
    Ok(GlobalReport { extrema, verdicts, values_distinct, values_differ_from_limits, stable })
}
