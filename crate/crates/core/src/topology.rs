//! Topological fingerprints of one-dimensional functions.
//!
//! For a continuous piecewise-monotone function, the ordered list of strict
//! local extrema, the trends at both ends and the rank order of the extreme
//! values against the boundary limits determine the function up to
//! orientation-preserving reparametrisation of domain and range. Comparing
//! those fingerprints decides topological equivalence without constructing
//! the homeomorphisms.
//!
//! Pieces of degree at most two are supported, so every extremum sits at a
//! breakpoint or at a rational vertex and all decisions are exact.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::piecewise::{sign, PiecewisePoly, Side};
use crate::rat::{ExtReal, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trend {
    Increasing,
    Decreasing,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Extremum {
    pub position: Rat,
    pub value: Rat,
    pub kind: ExtremumKind,
}

/// Ordered strict local extrema plus boundary behaviour.
///
/// Kinds alternate, positions increase, and the left trend is decreasing
/// exactly when the first extremum is a minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CriticalSequence {
    pub extrema: Vec<Extremum>,
    pub left_trend: Trend,
    pub right_trend: Trend,
    pub left_limit: ExtReal,
    pub right_limit: ExtReal,
}

impl CriticalSequence {
    pub fn kinds(&self) -> Vec<ExtremumKind> {
        self.extrema.iter().map(|e| e.kind).collect()
    }

    /// Extreme values are pairwise distinct.
    pub fn values_distinct(&self) -> bool {
        let mut vals: Vec<&Rat> = self.extrema.iter().map(|e| &e.value).collect();
        vals.sort();
        vals.windows(2).all(|w| w[0] != w[1])
    }

    /// `(left_limit, values..., right_limit)` on the extended line.
    fn profile(&self) -> Vec<ExtReal> {
        let mut v = Vec::with_capacity(self.extrema.len() + 2);
        v.push(self.left_limit.clone());
        v.extend(self.extrema.iter().map(|e| ExtReal::Finite(e.value.clone())));
        v.push(self.right_limit.clone());
        v
    }
}

const MAX_EXTREMA_DEGREE: usize = 2;
const MAX_CONVEXITY_DEGREE: usize = 3;

struct Run {
    lo: ExtReal,
    hi: ExtReal,
    sign: i8,
}

/// Strict local extrema of `f`, optionally restricted to `[a, b]`.
///
/// An interval on which `f` is constant is reported as
/// [`Error::PlateauDetected`] with its maximal extent.
pub fn critical_sequence(f: &PiecewisePoly, interval: Option<(&Rat, &Rat)>) -> Result<CriticalSequence> {
    let g = match interval {
        Some((a, b)) => f.restrict(a, b)?,
        None => f.clone(),
    };
    if g.continuity_class() < 0 {
        return Err(Error::NotContinuous);
    }
    if g.max_degree() > MAX_EXTREMA_DEGREE {
        return Err(Error::DegreeTooHigh { degree: g.max_degree(), max: MAX_EXTREMA_DEGREE });
    }

    let mut runs: Vec<Run> = Vec::new();
    for (lo, hi, p) in g.intervals() {
        let d = p.derivative();
        let mut cuts = vec![lo.clone()];
        if d.degree() == 1 {
            let root = ExtReal::Finite(-d.coeff(0) / d.coeff(1));
            if lo < root && root < hi {
                cuts.push(root);
            }
        }
        cuts.push(hi.clone());
        for w in cuts.windows(2) {
            let s = sign(&d.eval(&interior_point(&w[0], &w[1])));
            match runs.last_mut() {
                Some(run) if run.sign == s => run.hi = w[1].clone(),
                _ => runs.push(Run { lo: w[0].clone(), hi: w[1].clone(), sign: s }),
            }
        }
    }

    if let Some(flat) = runs.iter().find(|r| r.sign == 0) {
        return Err(Error::PlateauDetected { start: flat.lo.clone(), end: flat.hi.clone() });
    }

    let mut extrema = Vec::with_capacity(runs.len().saturating_sub(1));
    for w in runs.windows(2) {
        let position = w[0].hi.finite().expect("interior run boundary is finite").clone();
        let value = g.eval(&position, Side::Point)?;
        let kind = if w[0].sign < 0 { ExtremumKind::Min } else { ExtremumKind::Max };
        extrema.push(Extremum { position, value, kind });
    }
    let trend = |s: i8| if s > 0 { Trend::Increasing } else { Trend::Decreasing };
    Ok(CriticalSequence {
        extrema,
        left_trend: trend(runs[0].sign),
        right_trend: trend(runs[runs.len() - 1].sign),
        left_limit: g.lower_limit(),
        right_limit: g.upper_limit(),
    })
}

fn interior_point(lo: &ExtReal, hi: &ExtReal) -> Rat {
    match (lo, hi) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => (a + b) / Rat::from_integer(2.into()),
        (ExtReal::NegInf, ExtReal::Finite(b)) => b - Rat::one(),
        (ExtReal::Finite(a), ExtReal::PosInf) => a + Rat::one(),
        _ => Rat::zero(),
    }
}

/// Order-isomorphism of fingerprints: same kind sequence, same trends, and
/// the same rank pattern of `(left_limit, values..., right_limit)`.
pub fn topologically_equivalent(a: &CriticalSequence, b: &CriticalSequence) -> Result<bool> {
    if !a.values_distinct() || !b.values_distinct() {
        return Err(Error::NonGeneric);
    }
    if a.kinds() != b.kinds() || a.left_trend != b.left_trend || a.right_trend != b.right_trend {
        return Ok(false);
    }
    let (pa, pb) = (a.profile(), b.profile());
    for i in 0..pa.len() {
        for j in i + 1..pa.len() {
            if pa[i].cmp(&pa[j]) != pb[i].cmp(&pb[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `f'` strictly increases on `[a, b]` minus the breakpoints, which
/// makes `f` strictly convex there.
///
/// Each derivative piece must be strictly increasing on its closed
/// sub-interval, and the derivative may only jump upwards.
pub fn is_strictly_convex(f: &PiecewisePoly, a: &Rat, b: &Rat) -> Result<bool> {
    let g = f.restrict(a, b)?;
    if g.continuity_class() < 0 {
        return Err(Error::NotContinuous);
    }
    if g.max_degree() > MAX_CONVEXITY_DEGREE {
        return Err(Error::DegreeTooHigh { degree: g.max_degree(), max: MAX_CONVEXITY_DEGREE });
    }
    let d = g.derivative()?;
    for (lo, hi, p) in d.intervals() {
        let curvature = p.derivative();
        let (lo, hi) = (lo.finite().unwrap(), hi.finite().unwrap());
        // curvature has degree <= 1, so its minimum sits at an endpoint
        if curvature.is_zero() || sign(&curvature.eval(lo)) < 0 || sign(&curvature.eval(hi)) < 0 {
            return Ok(false);
        }
    }
    for t in d.breakpoints() {
        if d.eval(t, Side::Left)?.cmp(&d.eval(t, Side::Right)?) == Ordering::Greater {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Position of the only extremum on `[a, b]` if it is a minimum with `f`
/// falling into it from the left and rising from it to the right.
pub fn unique_minimum(f: &PiecewisePoly, a: &Rat, b: &Rat) -> Result<Option<Rat>> {
    let cs = critical_sequence(f, Some((a, b)))?;
    match cs.extrema.as_slice() {
        [only]
            if only.kind == ExtremumKind::Min
                && cs.left_trend == Trend::Decreasing
                && cs.right_trend == Trend::Increasing =>
        {
            Ok(Some(only.position.clone()))
        }
        _ => Ok(None),
    }
}
