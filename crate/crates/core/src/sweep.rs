//! Empirical check of the stability verdicts over a grid of averaging widths.
//!
//! For every width the averaged function is fingerprinted and compared with
//! the source; each source extremum is matched to the unique extremum of
//! `f_alpha` within `2 alpha` of it, which must itself lie within `alpha`.

use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::averaging::{average, AveragingResult};
use crate::density::StepDensity;
use crate::error::{Error, Result};
use crate::piecewise::{Domain, PiecewisePoly};
use crate::rat::{format_rat, int, rat, ExtReal, Rat};
use crate::stability::{global_stability_report, GlobalReport, StabilityStatus};
use crate::topology::{critical_sequence, topologically_equivalent, CriticalSequence, ExtremumKind};

pub const DEFAULT_GRID_STEPS: usize = 12;

/// A source extremum matched to its image under averaging.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermWindow {
    pub source: Rat,
    pub kind: ExtremumKind,
    /// `(x_i - alpha, x_i + alpha)`
    pub source_window: (Rat, Rat),
    /// `(x_i - 2 alpha, x_i + 2 alpha)`, in which `located` is the only extremum.
    pub search_window: (Rat, Rat),
    pub located: Rat,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationReason {
    Plateau { start: ExtReal, end: ExtReal },
    ExtremaCount(usize),
    OutsideWindow(Rat),
    KindMismatch,
    Failed(Error),
}

#[derive(Debug, Clone, PartialEq)]
pub enum WindowOutcome {
    Window(GermWindow),
    Violation { source: Rat, reason: ViolationReason },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fingerprint {
    Sequence(CriticalSequence),
    Plateau { start: ExtReal, end: ExtReal },
    Failed(Error),
}

/// Where an unstable germ predicts `f_alpha` to be flat, and whether it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlateauCheck {
    pub position: Rat,
    pub witness: usize,
    pub start: Rat,
    pub end: Rat,
    pub observed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlphaRecord {
    pub alpha: Rat,
    pub fingerprint: Fingerprint,
    pub equivalent_to_source: bool,
    pub germ_windows: Vec<WindowOutcome>,
    pub plateau_checks: Vec<PlateauCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub alpha_max: Rat,
    pub alphas: Vec<Rat>,
    pub source: CriticalSequence,
    pub per_alpha: Vec<AlphaRecord>,
    pub predicted: GlobalReport,
    pub agreement: bool,
}

/// Largest width the sweep will use: a quarter of the smallest gap between
/// consecutive extrema, and a quarter of the distance from the outer
/// extrema to the ends of a bounded domain. Defaults to 1 on the line and a
/// quarter of the width on an interval.
pub fn alpha_max(f: &PiecewisePoly) -> Result<Rat> {
    let cs = critical_sequence(f, None)?;
    let quarter = rat(1, 4);
    let positions: Vec<&Rat> = cs.extrema.iter().map(|e| &e.position).collect();
    let mut best = match f.domain() {
        Domain::Line => Rat::one(),
        Domain::Interval(a, b) => (b - a) * &quarter,
    };
    for w in positions.windows(2) {
        best = best.min((w[1] - w[0]) * &quarter);
    }
    if let (Domain::Interval(a, b), Some(first), Some(last)) = (f.domain(), positions.first(), positions.last()) {
        best = best.min((*first - a) * &quarter).min((b - *last) * &quarter);
    }
    Ok(best)
}

/// `alpha_max (2/3)^k` for `k = steps, ..., 1`, in increasing order.
pub fn default_alpha_grid(alpha_max: &Rat, steps: usize) -> Vec<Rat> {
    let ratio = rat(2, 3);
    let mut grid = Vec::with_capacity(steps);
    let mut a = alpha_max.clone();
    for _ in 0..steps {
        a = &a * &ratio;
        grid.push(a.clone());
    }
    grid.reverse();
    grid
}

/// Matches each source extremum with the extrema of `f_alpha` near it.
pub fn germ_windows(f: &PiecewisePoly, fa: &AveragingResult, extrema: &CriticalSequence) -> Result<Vec<WindowOutcome>> {
    let amax = alpha_max(f)?;
    if fa.alpha >= amax {
        return Err(Error::InvalidAlphas(format!(
            "alpha {} is not below alpha_max {}",
            format_rat(&fa.alpha),
            format_rat(&amax)
        )));
    }
    Ok(windows_for(fa, extrema))
}

fn windows_for(fa: &AveragingResult, extrema: &CriticalSequence) -> Vec<WindowOutcome> {
    let alpha = &fa.alpha;
    let two_alpha = alpha * int(2);
    extrema
        .extrema
        .iter()
        .map(|e| {
            let x = &e.position;
            let search = (x - &two_alpha, x + &two_alpha);
            let violation = |reason| WindowOutcome::Violation { source: x.clone(), reason };
            let local = match critical_sequence(&fa.f_alpha, Some((&search.0, &search.1))) {
                Ok(cs) => cs,
                Err(Error::PlateauDetected { start, end }) => {
                    return violation(ViolationReason::Plateau { start, end });
                }
                Err(err) => return violation(ViolationReason::Failed(err)),
            };
            let [found] = local.extrema.as_slice() else {
                return violation(ViolationReason::ExtremaCount(local.extrema.len()));
            };
            if (&found.position - x).abs() > *alpha {
                return violation(ViolationReason::OutsideWindow(found.position.clone()));
            }
            if found.kind != e.kind {
                return violation(ViolationReason::KindMismatch);
            }
            WindowOutcome::Window(GermWindow {
                source: x.clone(),
                kind: e.kind,
                source_window: (x - alpha, x + alpha),
                search_window: search,
                located: found.position.clone(),
            })
        })
        .collect()
}

fn check_alphas(alphas: &[Rat], amax: &Rat) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidAlphas("no widths given".into()));
    }
    if alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidAlphas("widths must be strictly increasing".into()));
    }
    if let Some(a) = alphas.iter().find(|a| !a.is_positive() || *a >= amax) {
        return Err(Error::InvalidAlphas(format!(
            "width {} is outside (0, {})",
            format_rat(a),
            format_rat(amax)
        )));
    }
    Ok(())
}

fn plateau_is_flat(fa: &AveragingResult, start: &Rat, end: &Rat) -> bool {
    let Ok(d) = fa.derivative(1) else { return false };
    match d.restrict(start, end) {
        Ok(r) => r.pieces().iter().all(|p| p.is_zero()),
        Err(_) => false,
    }
}

fn sweep_one(
    f: &PiecewisePoly,
    d: &StepDensity,
    alpha: &Rat,
    source: &CriticalSequence,
    predicted: &GlobalReport,
) -> AlphaRecord {
    let fa = match average(f, d, alpha) {
        Ok(fa) => fa,
        Err(err) => {
            return AlphaRecord {
                alpha: alpha.clone(),
                fingerprint: Fingerprint::Failed(err),
                equivalent_to_source: false,
                germ_windows: Vec::new(),
                plateau_checks: Vec::new(),
            }
        }
    };
    let fingerprint = match critical_sequence(&fa.f_alpha, None) {
        Ok(cs) => Fingerprint::Sequence(cs),
        Err(Error::PlateauDetected { start, end }) => Fingerprint::Plateau { start, end },
        Err(err) => Fingerprint::Failed(err),
    };
    let equivalent_to_source = match &fingerprint {
        Fingerprint::Sequence(cs) => topologically_equivalent(source, cs).unwrap_or(false),
        _ => false,
    };
    let knots = d.knots();
    let plateau_checks = predicted
        .verdicts
        .iter()
        .filter(|v| v.status == StabilityStatus::UnstableCriterion)
        .filter_map(|v| {
            let i = v.witness?;
            let x0 = &v.germ.position;
            let start = x0 - alpha * &knots[i + 1];
            let end = x0 - alpha * &knots[i];
            let observed = plateau_is_flat(&fa, &start, &end);
            Some(PlateauCheck { position: x0.clone(), witness: i, start, end, observed })
        })
        .collect();
    AlphaRecord {
        alpha: alpha.clone(),
        germ_windows: windows_for(&fa, source),
        fingerprint,
        equivalent_to_source,
        plateau_checks,
    }
}

/// Sweep over `alphas` on the current thread.
pub fn run_sweep(f: &PiecewisePoly, d: &StepDensity, alphas: &[Rat]) -> Result<SweepReport> {
    run_sweep_with_jobs(f, d, alphas, 1)
}

/// Sweep with up to `jobs` worker threads. The report does not depend on
/// `jobs`.
pub fn run_sweep_with_jobs(f: &PiecewisePoly, d: &StepDensity, alphas: &[Rat], jobs: usize) -> Result<SweepReport> {
    let source = critical_sequence(f, None)?;
    let amax = alpha_max(f)?;
    check_alphas(alphas, &amax)?;
    let predicted = global_stability_report(f, d)?;

    let per_alpha: Vec<AlphaRecord> = if jobs <= 1 {
        alphas.iter().map(|a| sweep_one(f, d, a, &source, &predicted)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidAlphas(format!("cannot start worker pool: {e}")))?;
        pool.install(|| alphas.par_iter().map(|a| sweep_one(f, d, a, &source, &predicted)).collect())
    };

    let all_equivalent = per_alpha.iter().all(|r| r.equivalent_to_source);
    let plateaus_seen = per_alpha.iter().all(|r| r.plateau_checks.iter().all(|p| p.observed));
    let agreement = (!predicted.stable || all_equivalent) && plateaus_seen;
    Ok(SweepReport { alpha_max: amax, alphas: alphas.to_vec(), source, per_alpha, predicted, agreement })
}

/// Count of windows that are violations, for quick summaries.
pub fn violation_count(record: &AlphaRecord) -> usize {
    record.germ_windows.iter().filter(|w| matches!(w, WindowOutcome::Violation { .. })).count()
}
