//! Library side of the `pwavg` command: problem parsing, dispatch and report
//! assembly. The binary only handles arguments and files.

pub mod input;
pub mod report;

use pwavg::rat::{int, rat, to_f64};
use pwavg::{
    alpha_max, average, default_alpha_grid, format_rat, global_stability_report, quadrature_oracle,
    run_sweep_with_jobs, Domain, Error, PiecewisePoly, Rat,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use input::{Needs, ProblemSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_ORACLE_MISMATCH: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: String,
    pub message: String,
}

impl CliError {
    pub fn invalid(kind: &str, message: String) -> Self {
        CliError { code: EXIT_INVALID, kind: kind.into(), message }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": report::VERSION,
            "error": { "kind": self.kind, "message": self.message },
            "exit_code": self.code,
        })
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let (code, kind) = match &err {
            Error::DegreeTooHigh { .. } => (EXIT_DEGENERATE, "degree_too_high"),
            Error::PlateauDetected { .. } => (EXIT_DEGENERATE, "plateau_detected"),
            Error::NonGeneric => (EXIT_DEGENERATE, "non_generic"),
            Error::OutOfDomain(_) => (EXIT_INVALID, "out_of_domain"),
            Error::AmbiguousAtJump(_) => (EXIT_INVALID, "ambiguous_at_jump"),
            Error::EmptyDomainIntersection => (EXIT_INVALID, "empty_domain_intersection"),
            Error::InvalidFunction(_) => (EXIT_INVALID, "invalid_function"),
            Error::InvalidDensity(_) => (EXIT_INVALID, "invalid_density"),
            Error::OutOfSupport(..) => (EXIT_INVALID, "out_of_support"),
            Error::AlphaNonPositive => (EXIT_INVALID, "alpha_non_positive"),
            Error::DomainTooNarrow { .. } => (EXIT_INVALID, "domain_too_narrow"),
            Error::NotContinuous => (EXIT_INVALID, "not_continuous"),
            Error::InvalidAlphas(_) => (EXIT_INVALID, "invalid_alphas"),
            Error::Parse(_) => (EXIT_INVALID, "parse"),
        };
        CliError { code, kind: kind.into(), message: err.to_string() }
    }
}

/// A finished command: the report, its exit status, and an optional plot table.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub document: Value,
    pub exit: i32,
    pub plot: Option<String>,
}

impl Outcome {
    fn ok(command: &str, body: Value) -> Self {
        Outcome { document: report::document(command, body), exit: EXIT_OK, plot: None }
    }
}

/// Serialized report text, newline-terminated.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are plain JSON");
    s.push('\n');
    s
}

pub fn cmd_average(text: &str, plot_points: Option<usize>) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::parse(text)?;
    spec.check_fields(Needs::Alpha)?;
    let f = spec.function()?;
    let d = spec.density()?;
    let alpha = spec.alpha().expect("checked above");
    let res = average(&f, &d, &alpha)?;
    let body = json!({
        "alpha": report::r(&alpha),
        "function": report::function(&f),
        "f_alpha": report::function(&res.f_alpha),
    });
    let mut out = Outcome::ok("average", body);
    if let Some(n) = plot_points {
        out.plot = Some(plot_table(&f, &res.f_alpha, &alpha, n)?);
    }
    Ok(out)
}

/// Range shown in plots and sampled by the oracle: the averaged domain on an
/// interval, otherwise the breakpoint hull padded by one on each side.
fn sample_range(f: &PiecewisePoly, alpha: &Rat) -> (Rat, Rat) {
    match f.domain() {
        Domain::Interval(a, b) => (a + alpha, b - alpha),
        Domain::Line => {
            let bps = f.breakpoints();
            match (bps.first(), bps.last()) {
                (Some(lo), Some(hi)) => (lo - int(1), hi + int(1)),
                _ => (int(-1), int(1)),
            }
        }
    }
}

fn plot_table(f: &PiecewisePoly, fa: &PiecewisePoly, alpha: &Rat, n: usize) -> Result<String, CliError> {
    if n < 2 {
        return Err(CliError::invalid("invalid_grid", "a plot needs at least 2 points".into()));
    }
    let (lo, hi) = sample_range(f, alpha);
    let mut csv = String::from("x,f,f_alpha\n");
    for k in 0..n {
        let x = &lo + (&hi - &lo) * rat(k as i64, n as i64 - 1);
        let fx = to_f64(&f.value(&x)?);
        let fax = to_f64(&fa.value(&x)?);
        csv.push_str(&format!("{},{},{}\n", to_f64(&x), fx, fax));
    }
    Ok(csv)
}

pub fn cmd_stability(text: &str) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::parse(text)?;
    spec.check_fields(Needs::Nothing)?;
    let f = spec.function()?;
    let d = spec.density()?;
    let g = global_stability_report(&f, &d)?;
    Ok(Outcome::ok("stability", report::stability(&g)))
}

/// `alphas` from the command line win over the document; with neither, the
/// default grid of `grid` widths is used.
pub fn cmd_sweep(text: &str, alphas: Option<Vec<Rat>>, grid: usize, jobs: usize) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::parse(text)?;
    spec.check_fields(Needs::Alphas)?;
    let f = spec.function()?;
    let d = spec.density()?;
    let alphas = match alphas.or_else(|| spec.alphas()) {
        Some(a) => a,
        None => {
            if grid == 0 {
                return Err(CliError::invalid("invalid_grid", "the default grid needs at least one width".into()));
            }
            default_alpha_grid(&alpha_max(&f)?, grid)
        }
    };
    let rep = run_sweep_with_jobs(&f, &d, &alphas, jobs.max(1))?;
    Ok(Outcome::ok("sweep", report::sweep(&rep)))
}

/// Draws `samples` pairs `(x, alpha)` on a 1/1000 lattice and compares the
/// exact value with quadrature. Passes when every relative deviation is
/// strictly below `tol`.
pub fn cmd_oracle(text: &str, samples: usize, seed: u64, tol: f64) -> Result<Outcome, CliError> {
    let spec = ProblemSpec::parse(text)?;
    spec.check_fields(Needs::OptionalAlpha)?;
    if samples == 0 {
        return Err(CliError::invalid("invalid_samples", "need at least one sample".into()));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(CliError::invalid("invalid_tol", format!("tolerance {tol} must be finite and nonnegative")));
    }
    let f = spec.function()?;
    let d = spec.density()?;
    let mut alpha_hi = spec.alpha().unwrap_or_else(|| int(1));
    if let Domain::Interval(a, b) = f.domain() {
        alpha_hi = alpha_hi.min((b - a) * rat(2, 5));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: Option<(f64, Value)> = None;
    for _ in 0..samples {
        let alpha = &alpha_hi * rat(rng.gen_range(1..=1000), 1000);
        let (lo, hi) = sample_range(&f, &alpha);
        let x = &lo + (&hi - &lo) * rat(rng.gen_range(0..=1000), 1000);
        let fa = average(&f, &d, &alpha)?.f_alpha;
        let exact = fa.value(&x)?;
        let e = to_f64(&exact);
        let q = quadrature_oracle(&f, &d, &alpha, &x)?;
        let dev = (e - q).abs() / e.abs().max(1.0);
        if worst.as_ref().is_none_or(|(w, _)| dev > *w) {
            let at = json!({
                "x": format_rat(&x),
                "alpha": format_rat(&alpha),
                "exact": format_rat(&exact),
                "exact_f64": e,
                "quadrature": q,
            });
            worst = Some((dev, at));
        }
    }
    let (max_dev, at) = worst.expect("samples >= 1");
    let pass = max_dev < tol;
    let body = json!({
        "samples": samples,
        "seed": seed,
        "tol": tol,
        "max_relative_deviation": max_dev,
        "worst": at,
        "pass": pass,
    });
    let mut out = Outcome::ok("oracle-check", body);
    if !pass {
        out.exit = EXIT_ORACLE_MISMATCH;
    }
    Ok(out)
}
