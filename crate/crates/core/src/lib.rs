//! Exact averaging of piecewise-polynomial functions against piecewise-constant
//! probability densities on `[-1, 1]`, and decidable stability criteria for
//! the local extrema of the averaged functions.
//!
//! All state is exact: scalars are arbitrary-precision rationals and every
//! zero test is decided exactly. Binary floating point appears only in the
//! quadrature oracle used to cross-check the closed forms.

// Errors carry exact endpoints; boxing them would only add noise at every match.
#![allow(clippy::result_large_err)]

pub mod averaging;
pub mod density;
pub mod error;
pub mod piecewise;
pub mod poly;
pub mod rat;
pub mod stability;
pub mod sweep;
pub mod topology;

pub use averaging::{average, average_derivative, quadrature_oracle, vee_profile, AveragingResult};
pub use density::StepDensity;
pub use error::{Error, Result};
pub use piecewise::{Domain, PiecewisePoly, Side, SMOOTH};
pub use poly::Poly;
pub use rat::{format_rat, parse_rat, ExtReal, Rat};
pub use stability::{
    curvature_constant, global_stability_report, lr_stable, one_sided_slopes, x_sequence, GermSlopes,
    GlobalReport, StabilityStatus, StabilityVerdict,
};
pub use sweep::{alpha_max, default_alpha_grid, germ_windows, run_sweep, run_sweep_with_jobs, SweepReport};
pub use topology::{
    critical_sequence, is_strictly_convex, topologically_equivalent, unique_minimum, CriticalSequence, Extremum,
    ExtremumKind, Trend,
};
