//! Piecewise-polynomial functions on the real line or a closed interval.
//!
//! A function is stored as strictly increasing breakpoints `b_0 < ... < b_{m-1}`
//! and `m + 1` polynomial pieces. Piece `k` is in force on `(b_{k-1}, b_k)`,
//! with the first and last pieces extending to the ends of the domain. On a
//! bounded domain `[lo, hi]` every stored breakpoint lies strictly inside.
//!
//! Every constructor and operation returns the canonical representation:
//! adjacent pieces are never the same polynomial. Since a function determines
//! its pieces on each open interval, two canonical values are equal exactly
//! when they describe the same function.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{format_rat, ExtReal, Rat};

/// Continuity class of a function without breakpoints.
pub const SMOOTH: i32 = i32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Domain {
    Line,
    Interval(Rat, Rat),
}

impl Domain {
    pub fn contains(&self, x: &Rat) -> bool {
        match self {
            Domain::Line => true,
            Domain::Interval(a, b) => a <= x && x <= b,
        }
    }

    pub fn lower(&self) -> ExtReal {
        match self {
            Domain::Line => ExtReal::NegInf,
            Domain::Interval(a, _) => ExtReal::Finite(a.clone()),
        }
    }

    pub fn upper(&self) -> ExtReal {
        match self {
            Domain::Line => ExtReal::PosInf,
            Domain::Interval(_, b) => ExtReal::Finite(b.clone()),
        }
    }

    pub fn intersect(&self, other: &Domain) -> Result<Domain> {
        let (lo, hi) = match (self, other) {
            (Domain::Line, d) | (d, Domain::Line) => return Ok(d.clone()),
            (Domain::Interval(a1, b1), Domain::Interval(a2, b2)) => (a1.max(a2).clone(), b1.min(b2).clone()),
        };
        if lo < hi {
            Ok(Domain::Interval(lo, hi))
        } else {
            Err(Error::EmptyDomainIntersection)
        }
    }

    fn shifted(&self, c: &Rat) -> Domain {
        match self {
            Domain::Line => Domain::Line,
            Domain::Interval(a, b) => Domain::Interval(a - c, b - c),
        }
    }
}

/// Which value to read at a point: a one-sided limit or the common value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiecewisePoly {
    breakpoints: Vec<Rat>,
    pieces: Vec<Poly>,
    domain: Domain,
    continuity: i32,
}

impl PiecewisePoly {
    /// A function on the whole line.
    pub fn new(breakpoints: Vec<Rat>, pieces: Vec<Poly>) -> Result<Self> {
        Self::with_domain(breakpoints, pieces, Domain::Line)
    }

    /// Breakpoints outside the open domain are allowed here and dropped
    /// together with the pieces that no longer meet the domain.
    pub fn with_domain(breakpoints: Vec<Rat>, pieces: Vec<Poly>, domain: Domain) -> Result<Self> {
        if pieces.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidFunction(format!(
                "{} breakpoints need {} pieces, got {}",
                breakpoints.len(),
                breakpoints.len() + 1,
                pieces.len()
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidFunction("breakpoints must be strictly increasing".into()));
        }
        if let Domain::Interval(a, b) = &domain {
            if a >= b {
                return Err(Error::InvalidFunction(format!(
                    "empty interval [{}, {}]",
                    format_rat(a),
                    format_rat(b)
                )));
            }
        }
        Ok(Self::canonical(breakpoints, pieces, domain))
    }

    pub fn polynomial(p: Poly) -> Self {
        Self::canonical(Vec::new(), vec![p], Domain::Line)
    }

    pub fn constant(c: Rat) -> Self {
        Self::polynomial(Poly::constant(c))
    }

    /// The continuous function with `slopes[k]` on piece `k`, passing through
    /// `value_at_first` at the first breakpoint (or at 0 with no breakpoints).
    pub fn continuous_linear(breakpoints: Vec<Rat>, slopes: Vec<Rat>, value_at_first: Rat) -> Result<Self> {
        if slopes.len() != breakpoints.len() + 1 {
            return Err(Error::InvalidFunction("need one slope per piece".into()));
        }
        let anchor = breakpoints.first().cloned().unwrap_or_else(Rat::zero);
        let mut pieces = Vec::with_capacity(slopes.len());
        // piece through (anchor, value) with the given slope
        let through = |x0: &Rat, y0: &Rat, s: &Rat| Poly::linear(y0 - s * x0, s.clone());
        pieces.push(through(&anchor, &value_at_first, &slopes[0]));
        for (k, s) in slopes.iter().enumerate().skip(1) {
            let x0 = &breakpoints[k - 1];
            let y0 = pieces[k - 1].eval(x0);
            pieces.push(through(x0, &y0, s));
        }
        Self::new(breakpoints, pieces)
    }

    /// `x -> L x` for `x <= 0`, `x -> R x` for `x > 0`.
    pub fn vee(left_slope: Rat, right_slope: Rat) -> Self {
        Self::canonical(
            vec![Rat::zero()],
            vec![Poly::linear(Rat::zero(), left_slope), Poly::linear(Rat::zero(), right_slope)],
            Domain::Line,
        )
    }

    fn canonical(mut breakpoints: Vec<Rat>, mut pieces: Vec<Poly>, domain: Domain) -> Self {
        if let Domain::Interval(a, b) = &domain {
            let first = breakpoints.iter().filter(|t| *t <= a).count();
            let last = breakpoints.iter().filter(|t| *t < b).count();
            pieces = pieces.drain(first..=last).collect();
            breakpoints = breakpoints.drain(first..last).collect();
        }
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut ps: Vec<Poly> = Vec::with_capacity(pieces.len());
        let mut pieces = pieces.into_iter();
        ps.push(pieces.next().expect("at least one piece"));
        for (t, p) in breakpoints.into_iter().zip(pieces) {
            if ps.last() != Some(&p) {
                bps.push(t);
                ps.push(p);
            }
        }
        let continuity = bps
            .iter()
            .enumerate()
            .map(|(k, t)| junction_order(&ps[k], &ps[k + 1], t))
            .min()
            .unwrap_or(SMOOTH);
        PiecewisePoly { breakpoints: bps, pieces: ps, domain, continuity }
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Largest `k` such that derivatives of order `0..=k` agree across every
    /// breakpoint; `-1` if the function jumps and [`SMOOTH`] without
    /// breakpoints.
    pub fn continuity_class(&self) -> i32 {
        self.continuity
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.iter().map(Poly::degree).max().unwrap_or(0)
    }

    /// `(lower end, upper end, piece)` for every piece, clipped to the domain.
    pub fn intervals(&self) -> impl Iterator<Item = (ExtReal, ExtReal, &Poly)> + '_ {
        let n = self.pieces.len();
        self.pieces.iter().enumerate().map(move |(k, p)| {
            let lo = if k == 0 { self.domain.lower() } else { ExtReal::Finite(self.breakpoints[k - 1].clone()) };
            let hi = if k + 1 == n { self.domain.upper() } else { ExtReal::Finite(self.breakpoints[k].clone()) };
            (lo, hi, p)
        })
    }

    /// Index of the piece that governs values just left of `x`.
    fn left_index(&self, x: &Rat) -> usize {
        self.breakpoints.partition_point(|t| t < x)
    }

    /// Index of the piece that governs values just right of `x`.
    fn right_index(&self, x: &Rat) -> usize {
        self.breakpoints.partition_point(|t| t <= x)
    }

    /// The piece in force on an open neighbourhood of `x`, if `x` is not a
    /// breakpoint, else the piece to its right.
    pub fn piece_at(&self, x: &Rat) -> &Poly {
        &self.pieces[self.right_index(x)]
    }

    pub fn eval(&self, x: &Rat, side: Side) -> Result<Rat> {
        if !self.domain.contains(x) {
            return Err(Error::OutOfDomain(format_rat(x)));
        }
        if let Domain::Interval(a, b) = &self.domain {
            if (side == Side::Left && x == a) || (side == Side::Right && x == b) {
                return Err(Error::OutOfDomain(format_rat(x)));
            }
        }
        match side {
            Side::Left => Ok(self.pieces[self.left_index(x)].eval(x)),
            Side::Right => Ok(self.pieces[self.right_index(x)].eval(x)),
            Side::Point => {
                let l = self.pieces[self.left_index(x)].eval(x);
                let r = self.pieces[self.right_index(x)].eval(x);
                if l == r {
                    Ok(l)
                } else {
                    Err(Error::AmbiguousAtJump(format_rat(x)))
                }
            }
        }
    }

    /// Shorthand for `eval(x, Side::Point)`.
    pub fn value(&self, x: &Rat) -> Result<Rat> {
        self.eval(x, Side::Point)
    }

    /// `a f + b g` on the intersection of the domains.
    pub fn combine(a: &Rat, f: &PiecewisePoly, b: &Rat, g: &PiecewisePoly) -> Result<PiecewisePoly> {
        let domain = f.domain.intersect(&g.domain)?;
        let mut merged: Vec<Rat> = Vec::with_capacity(f.breakpoints.len() + g.breakpoints.len());
        let (mut i, mut j) = (0, 0);
        while i < f.breakpoints.len() || j < g.breakpoints.len() {
            let next = match (f.breakpoints.get(i), g.breakpoints.get(j)) {
                (Some(x), Some(y)) if x == y => {
                    i += 1;
                    j += 1;
                    x
                }
                (Some(x), Some(y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(x), None) => {
                    i += 1;
                    x
                }
                (_, Some(y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            merged.push(next.clone());
        }
        let mut pieces = Vec::with_capacity(merged.len() + 1);
        for k in 0..=merged.len() {
            let (fi, gi) = match k.checked_sub(1).map(|k| &merged[k]) {
                None => (0, 0),
                Some(left_end) => (f.right_index(left_end), g.right_index(left_end)),
            };
            pieces.push(&f.pieces[fi].scale(a) + &g.pieces[gi].scale(b));
        }
        Ok(Self::canonical(merged, pieces, domain))
    }

    pub fn scale(&self, s: &Rat) -> PiecewisePoly {
        Self::canonical(
            self.breakpoints.clone(),
            self.pieces.iter().map(|p| p.scale(s)).collect(),
            self.domain.clone(),
        )
    }

    pub fn neg(&self) -> PiecewisePoly {
        self.scale(&-Rat::one())
    }

    /// `x -> self(x + c)`
    pub fn shift(&self, c: &Rat) -> PiecewisePoly {
        Self::canonical(
            self.breakpoints.iter().map(|t| t - c).collect(),
            self.pieces.iter().map(|p| p.shift(c)).collect(),
            self.domain.shifted(c),
        )
    }

    /// Restriction to `[a, b]` intersected with the current domain.
    pub fn restrict(&self, a: &Rat, b: &Rat) -> Result<PiecewisePoly> {
        if a >= b {
            return Err(Error::EmptyDomainIntersection);
        }
        let domain = self.domain.intersect(&Domain::Interval(a.clone(), b.clone()))?;
        Ok(Self::canonical(self.breakpoints.clone(), self.pieces.clone(), domain))
    }

    /// Piecewise derivative. One-sided limits at the breakpoints are read
    /// back with [`Side::Left`] and [`Side::Right`].
    pub fn derivative(&self) -> Result<PiecewisePoly> {
        if self.continuity < 0 {
            return Err(Error::NotContinuous);
        }
        Ok(Self::canonical(
            self.breakpoints.clone(),
            self.pieces.iter().map(Poly::derivative).collect(),
            self.domain.clone(),
        ))
    }

    /// The continuous antiderivative vanishing at `base`. Jumps in `self` are
    /// allowed and become kinks.
    pub fn antiderivative(&self, base: &Rat) -> Result<PiecewisePoly> {
        if !self.domain.contains(base) {
            return Err(Error::OutOfDomain(format_rat(base)));
        }
        let mut pieces: Vec<Poly> = Vec::with_capacity(self.pieces.len());
        pieces.push(self.pieces[0].antiderivative());
        for (k, t) in self.breakpoints.iter().enumerate() {
            let next = self.pieces[k + 1].antiderivative();
            let gap = pieces[k].eval(t) - next.eval(t);
            pieces.push(&next + &Poly::constant(gap));
        }
        let unanchored = Self::canonical(self.breakpoints.clone(), pieces, self.domain.clone());
        let offset = unanchored.value(base)?;
        Ok(Self::canonical(
            unanchored.breakpoints,
            unanchored.pieces.iter().map(|p| p - &Poly::constant(offset.clone())).collect(),
            unanchored.domain,
        ))
    }

    /// Limit as `x -> -inf` (whole line) or the value at the lower end.
    pub fn lower_limit(&self) -> ExtReal {
        match &self.domain {
            Domain::Interval(a, _) => ExtReal::Finite(self.pieces[0].eval(a)),
            Domain::Line => poly_limit(&self.pieces[0], true),
        }
    }

    /// Limit as `x -> +inf` (whole line) or the value at the upper end.
    pub fn upper_limit(&self) -> ExtReal {
        let last = self.pieces.last().expect("nonempty");
        match &self.domain {
            Domain::Interval(_, b) => ExtReal::Finite(last.eval(b)),
            Domain::Line => poly_limit(last, false),
        }
    }
}

fn poly_limit(p: &Poly, at_neg_inf: bool) -> ExtReal {
    if p.degree() == 0 {
        return ExtReal::Finite(p.coeff(0));
    }
    let mut sign = p.leading();
    if at_neg_inf && p.degree() % 2 == 1 {
        sign = -sign;
    }
    ExtReal::infinity_with_sign(&sign)
}

/// Highest derivative order on which `left` and `right` agree at `t`
/// (`-1` when the values already differ).
fn junction_order(left: &Poly, right: &Poly, t: &Rat) -> i32 {
    let diff = (right - left).shift(t);
    let vanishing = diff.coeffs().iter().take_while(|c| c.is_zero()).count();
    vanishing as i32 - 1
}

impl fmt::Display for PiecewisePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals()
            .map(|(lo, hi, p)| format!("[{lo}, {hi}]: {p}"))
            .collect();
        write!(f, "{{{}}}", parts.join("; "))
    }
}

/// Sign of a nonzero rational as -1 / 0 / 1.
pub(crate) fn sign(r: &Rat) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn lin(b: i64, m: i64) -> Poly {
        Poly::linear(int(b), int(m))
    }

    fn tent() -> PiecewisePoly {
        PiecewisePoly::vee(int(-1), int(2))
    }

    fn abs() -> PiecewisePoly {
        PiecewisePoly::vee(int(-1), int(1))
    }

    #[test]
    fn eval_on_both_sides_of_the_kink() {
        let f = tent();
        assert_eq!(f.value(&int(-2)).unwrap(), int(2));
        assert_eq!(f.value(&int(0)).unwrap(), int(0));
        assert_eq!(f.value(&int(3)).unwrap(), int(6));
    }

    #[test]
    fn point_eval_at_a_jump_is_ambiguous() {
        let step = PiecewisePoly::new(vec![int(0)], vec![Poly::constant(int(-1)), Poly::constant(int(2))]).unwrap();
        assert_eq!(step.continuity_class(), -1);
        assert!(matches!(step.value(&int(0)), Err(Error::AmbiguousAtJump(_))));
        assert_eq!(step.eval(&int(0), Side::Left).unwrap(), int(-1));
        assert_eq!(step.eval(&int(0), Side::Right).unwrap(), int(2));
    }

    #[test]
    fn out_of_domain() {
        let f = abs().restrict(&int(-1), &int(1)).unwrap();
        assert!(matches!(f.value(&int(2)), Err(Error::OutOfDomain(_))));
        assert!(f.eval(&int(-1), Side::Left).is_err());
        assert_eq!(f.eval(&int(-1), Side::Right).unwrap(), int(1));
        assert!(matches!(f.antiderivative(&int(5)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn combine_cancels_and_merges() {
        let z = PiecewisePoly::combine(&int(1), &abs(), &int(-1), &abs()).unwrap();
        assert!(z.breakpoints().is_empty());
        assert_eq!(z.pieces(), &[Poly::zero()]);
        assert_eq!(z.continuity_class(), SMOOTH);
    }

    #[test]
    fn combine_subtracts_piecewise() {
        let x = PiecewisePoly::polynomial(lin(0, 1));
        let h = PiecewisePoly::combine(&int(1), &tent(), &int(-1), &x).unwrap();
        assert_eq!(h, PiecewisePoly::new(vec![int(0)], vec![lin(0, -2), lin(0, 1)]).unwrap());
    }

    #[test]
    fn combine_scales() {
        let g = tent();
        let h = PiecewisePoly::combine(&int(2), &PiecewisePoly::constant(int(3)), &int(0), &g).unwrap();
        assert_eq!(h, PiecewisePoly::constant(int(6)));
    }

    #[test]
    fn combine_rejects_disjoint_domains() {
        let a = abs().restrict(&int(0), &int(1)).unwrap();
        let b = abs().restrict(&int(2), &int(3)).unwrap();
        assert_eq!(PiecewisePoly::combine(&int(1), &a, &int(1), &b), Err(Error::EmptyDomainIntersection));
    }

    #[test]
    fn derivative_of_kinks() {
        let d = abs().derivative().unwrap();
        assert_eq!(d.eval(&int(0), Side::Left).unwrap(), int(-1));
        assert_eq!(d.eval(&int(0), Side::Right).unwrap(), int(1));
        assert_eq!(d.continuity_class(), -1);

        let sq = PiecewisePoly::polynomial(Poly::new(vec![int(0), int(0), int(1)]));
        assert_eq!(sq.derivative().unwrap(), PiecewisePoly::polynomial(lin(0, 2)));

        let d = tent().derivative().unwrap();
        assert_eq!(d.eval(&int(0), Side::Left).unwrap(), int(-1));
        assert_eq!(d.eval(&int(0), Side::Right).unwrap(), int(2));
    }

    #[test]
    fn derivative_needs_continuity() {
        let step = PiecewisePoly::new(vec![int(0)], vec![Poly::constant(int(0)), Poly::constant(int(1))]).unwrap();
        assert_eq!(step.derivative(), Err(Error::NotContinuous));
    }

    #[test]
    fn antiderivative_examples() {
        let one = PiecewisePoly::constant(int(1));
        assert_eq!(one.antiderivative(&int(0)).unwrap(), PiecewisePoly::polynomial(lin(0, 1)));

        let slopes = PiecewisePoly::new(vec![int(0)], vec![Poly::constant(int(-1)), Poly::constant(int(2))]).unwrap();
        assert_eq!(slopes.antiderivative(&int(0)).unwrap(), tent());
    }

    #[test]
    fn continuity_class_counts_matching_derivatives() {
        // x^2 for x<0, x^2 + x^3 for x>0: C^2 at 0
        let f = PiecewisePoly::new(
            vec![int(0)],
            vec![Poly::new(vec![int(0), int(0), int(1)]), Poly::new(vec![int(0), int(0), int(1), int(1)])],
        )
        .unwrap();
        assert_eq!(f.continuity_class(), 2);
        assert_eq!(abs().continuity_class(), 0);
    }

    #[test]
    fn restriction_drops_outside_pieces() {
        let f = PiecewisePoly::continuous_linear(vec![int(-2), int(0), int(2)], vec![int(1), int(-1), int(1), int(-1)], int(0))
            .unwrap();
        let r = f.restrict(&int(-1), &int(1)).unwrap();
        assert_eq!(r.breakpoints(), &[int(0)]);
        assert_eq!(r.pieces().len(), 2);
        assert_eq!(r.domain(), &Domain::Interval(int(-1), int(1)));
        assert_eq!(r.lower_limit(), ExtReal::Finite(int(-1)));
    }

    #[test]
    fn limits_at_infinity() {
        assert_eq!(abs().lower_limit(), ExtReal::PosInf);
        assert_eq!(abs().upper_limit(), ExtReal::PosInf);
        let up = PiecewisePoly::polynomial(lin(3, 2));
        assert_eq!(up.lower_limit(), ExtReal::NegInf);
        let c = PiecewisePoly::constant(rat(1, 2));
        assert_eq!(c.upper_limit(), ExtReal::Finite(rat(1, 2)));
    }

    #[test]
    fn shift_moves_breakpoints() {
        let f = tent().shift(&int(1));
        assert_eq!(f.breakpoints(), &[int(-1)]);
        assert_eq!(f.value(&int(1)).unwrap(), int(4));
    }

    #[test]
    fn rejects_malformed() {
        assert!(PiecewisePoly::new(vec![int(1), int(0)], vec![Poly::zero(); 3]).is_err());
        assert!(PiecewisePoly::new(vec![int(1)], vec![Poly::zero()]).is_err());
        assert!(PiecewisePoly::with_domain(vec![], vec![Poly::zero()], Domain::Interval(int(1), int(1))).is_err());
    }
}
