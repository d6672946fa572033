//! Piecewise-constant probability densities on `[-1, 1]`.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::piecewise::{Domain, PiecewisePoly};
use crate::poly::Poly;
use crate::rat::{format_rat, Rat};

/// Knots `-1 = t_0 < t_1 < ... < t_{n+1} = 1` and values `p_0, ..., p_n`,
/// with `p_i` in force on `[t_i, t_{i+1}]`. The total mass is exactly one and
/// neighbouring values always differ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepDensity {
    knots: Vec<Rat>,
    values: Vec<Rat>,
}

impl StepDensity {
    pub fn new(knots: Vec<Rat>, values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() || knots.len() != values.len() + 1 {
            return Err(Error::InvalidDensity(format!(
                "{} values need {} knots, got {}",
                values.len(),
                values.len() + 1,
                knots.len()
            )));
        }
        if knots[0] != -Rat::one() || knots[knots.len() - 1] != Rat::one() {
            return Err(Error::InvalidDensity("knots must start at -1 and end at 1".into()));
        }
        if knots.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDensity("knots must be strictly increasing".into()));
        }
        if let Some(v) = values.iter().find(|v| v.is_negative()) {
            return Err(Error::InvalidDensity(format!("negative value {}", format_rat(v))));
        }
        let mass: Rat = knots.windows(2).zip(&values).map(|(w, p)| (&w[1] - &w[0]) * p).sum();
        if !mass.is_one() {
            return Err(Error::InvalidDensity(format!("total mass is {}, not 1", format_rat(&mass))));
        }

        let mut ks = vec![knots[0].clone()];
        let mut vs: Vec<Rat> = Vec::with_capacity(values.len());
        for (k, v) in knots.into_iter().skip(1).zip(values) {
            if vs.last() == Some(&v) {
                *ks.last_mut().unwrap() = k;
            } else {
                vs.push(v);
                ks.push(k);
            }
        }
        Ok(StepDensity { knots: ks, values: vs })
    }

    /// Rescales nonnegative `weights` to unit total mass.
    pub fn normalized(knots: Vec<Rat>, weights: Vec<Rat>) -> Result<Self> {
        if knots.len() != weights.len() + 1 {
            return Self::new(knots, weights);
        }
        let mass: Rat = knots.windows(2).zip(&weights).map(|(w, p)| (&w[1] - &w[0]) * p).sum();
        if !mass.is_positive() {
            return Err(Error::InvalidDensity("weights carry no mass".into()));
        }
        Self::new(knots, weights.into_iter().map(|w| w / &mass).collect())
    }

    /// `p = 1/2` on all of `[-1, 1]`.
    pub fn uniform() -> Self {
        StepDensity { knots: vec![-Rat::one(), Rat::one()], values: vec![Rat::new(1.into(), 2.into())] }
    }

    pub fn knots(&self) -> &[Rat] {
        &self.knots
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Number of interior knots (`n`); there are `n + 1` pieces.
    pub fn interior_knots(&self) -> usize {
        self.values.len() - 1
    }

    /// Exact `mu[a, b]`.
    pub fn measure(&self, a: &Rat, b: &Rat) -> Result<Rat> {
        let lo = -Rat::one();
        let hi = Rat::one();
        if a < &lo || b > &hi || a > b {
            return Err(Error::OutOfSupport(format_rat(a), format_rat(b)));
        }
        let mut total = Rat::zero();
        for (w, p) in self.knots.windows(2).zip(&self.values) {
            let l = a.max(&w[0]);
            let r = b.min(&w[1]);
            if l < r {
                total += (r - l) * p;
            }
        }
        Ok(total)
    }

    /// `t -> p(-t)`
    pub fn mirrored(&self) -> StepDensity {
        StepDensity {
            knots: self.knots.iter().rev().map(|t| -t).collect(),
            values: self.values.iter().rev().cloned().collect(),
        }
    }

    /// The density as a (discontinuous) piecewise-constant function on `[-1, 1]`.
    pub fn to_piecewise(&self) -> PiecewisePoly {
        let n = self.knots.len();
        PiecewisePoly::with_domain(
            self.knots[1..n - 1].to_vec(),
            self.values.iter().cloned().map(Poly::constant).collect(),
            Domain::Interval(-Rat::one(), Rat::one()),
        )
        .expect("density knots are strictly increasing")
    }
}
