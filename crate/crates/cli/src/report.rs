//! JSON rendering of engine results. Exact values are rational strings.

use pwavg::stability::StabilityStatus;
use pwavg::sweep::{AlphaRecord, Fingerprint, PlateauCheck, ViolationReason, WindowOutcome};
use pwavg::topology::{ExtremumKind, Trend};
use pwavg::{format_rat, CriticalSequence, Domain, ExtReal, GlobalReport, PiecewisePoly, Rat, SweepReport, SMOOTH};
use serde_json::{json, Value};

pub const VERSION: &str = concat!("pwavg ", env!("CARGO_PKG_VERSION"));

pub fn r(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn rs(xs: &[Rat]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

pub fn ext(x: &ExtReal) -> Value {
    Value::String(x.to_string())
}

fn kind(k: ExtremumKind) -> &'static str {
    match k {
        ExtremumKind::Min => "min",
        ExtremumKind::Max => "max",
    }
}

fn trend(t: Trend) -> &'static str {
    match t {
        Trend::Increasing => "increasing",
        Trend::Decreasing => "decreasing",
    }
}

/// Same layout as the `function` input, plus domain and continuity class.
pub fn function(f: &PiecewisePoly) -> Value {
    let class = match f.continuity_class() {
        SMOOTH => Value::String("smooth".into()),
        k => json!(k),
    };
    let domain = match f.domain() {
        Domain::Line => Value::Null,
        Domain::Interval(a, b) => json!([r(a), r(b)]),
    };
    json!({
        "breakpoints": rs(f.breakpoints()),
        "pieces": f.pieces().iter().map(|p| json!({ "coeffs": rs(p.coeffs()) })).collect::<Vec<_>>(),
        "domain": domain,
        "continuity_class": class,
    })
}

pub fn critical(cs: &CriticalSequence) -> Value {
    json!({
        "extrema": cs.extrema.iter().map(|e| json!({
            "position": r(&e.position),
            "value": r(&e.value),
            "kind": kind(e.kind),
        })).collect::<Vec<_>>(),
        "left_trend": trend(cs.left_trend),
        "right_trend": trend(cs.right_trend),
        "left_limit": ext(&cs.left_limit),
        "right_limit": ext(&cs.right_limit),
    })
}

fn status(s: StabilityStatus) -> &'static str {
    match s {
        StabilityStatus::Stable => "stable",
        StabilityStatus::UnstableCriterion => "unstable",
        StabilityStatus::NotApplicable => "not_applicable",
    }
}

pub fn stability(g: &GlobalReport) -> Value {
    let extrema: Vec<Value> = g
        .extrema
        .extrema
        .iter()
        .zip(&g.verdicts)
        .map(|(e, v)| {
            json!({
                "position": r(&e.position),
                "value": r(&e.value),
                "kind": kind(e.kind),
                "left_slope": r(&v.germ.left),
                "right_slope": r(&v.germ.right),
                "x_chain": rs(&v.x_chain),
                "curvature_c": r(&v.curvature_c),
                "status": status(v.status),
                "witness": v.witness,
            })
        })
        .collect();
    json!({
        "extrema": extrema,
        "left_limit": ext(&g.extrema.left_limit),
        "right_limit": ext(&g.extrema.right_limit),
        "values_distinct": g.values_distinct,
        "values_differ_from_limits": g.values_differ_from_limits,
        "generic": g.generic(),
        "stable": g.stable,
    })
}

fn fingerprint(fp: &Fingerprint) -> Value {
    match fp {
        Fingerprint::Sequence(cs) => json!({ "sequence": critical(cs) }),
        Fingerprint::Plateau { start, end } => json!({ "plateau": [ext(start), ext(end)] }),
        Fingerprint::Failed(err) => json!({ "failed": err.to_string() }),
    }
}

fn window(w: &WindowOutcome) -> Value {
    match w {
        WindowOutcome::Window(w) => json!({
            "source": r(&w.source),
            "kind": kind(w.kind),
            "source_window": [r(&w.source_window.0), r(&w.source_window.1)],
            "search_window": [r(&w.search_window.0), r(&w.search_window.1)],
            "located": r(&w.located),
        }),
        WindowOutcome::Violation { source, reason } => {
            let reason = match reason {
                ViolationReason::Plateau { start, end } => json!({ "plateau": [ext(start), ext(end)] }),
                ViolationReason::ExtremaCount(n) => json!({ "extrema_count": n }),
                ViolationReason::OutsideWindow(x) => json!({ "outside_window": r(x) }),
                ViolationReason::KindMismatch => json!("kind_mismatch"),
                ViolationReason::Failed(err) => json!({ "failed": err.to_string() }),
            };
            json!({ "source": r(source), "violation": reason })
        }
    }
}

fn plateau_check(p: &PlateauCheck) -> Value {
    json!({
        "position": r(&p.position),
        "witness": p.witness,
        "interval": [r(&p.start), r(&p.end)],
        "observed": p.observed,
    })
}

fn alpha_record(rec: &AlphaRecord) -> Value {
    json!({
        "alpha": r(&rec.alpha),
        "fingerprint": fingerprint(&rec.fingerprint),
        "equivalent_to_source": rec.equivalent_to_source,
        "germ_windows": rec.germ_windows.iter().map(window).collect::<Vec<_>>(),
        "plateau_checks": rec.plateau_checks.iter().map(plateau_check).collect::<Vec<_>>(),
    })
}

pub fn sweep(rep: &SweepReport) -> Value {
    json!({
        "alpha_max": r(&rep.alpha_max),
        "alphas": rs(&rep.alphas),
        "source": critical(&rep.source),
        "predicted": stability(&rep.predicted),
        "per_alpha": rep.per_alpha.iter().map(alpha_record).collect::<Vec<_>>(),
        "agreement": rep.agreement,
    })
}

/// Wraps a body with the version header and the subcommand name.
pub fn document(command: &str, body: Value) -> Value {
    json!({ "version": VERSION, "command": command, "report": body })
}
