//! Problem documents.
//!
//! Every scalar is an exact rational string (`"p"`, `"p/q"` or a decimal such
//! as `"0.25"`); JSON numbers are refused so no binary float reaches the
//! engine.

use std::fmt;

use pwavg::{parse_rat, Domain, PiecewisePoly, Poly, Rat, StepDensity};
use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::CliError;

/// A rational read from a JSON string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact(pub Rat);

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an exact rational string such as \"3/4\"")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Exact, E> {
                parse_rat(s).map(Exact).map_err(E::custom)
            }
        }

        de.deserialize_str(ExactVisitor)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceSpec {
    pub coeffs: Vec<Exact>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub breakpoints: Vec<Exact>,
    pub pieces: Vec<PieceSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensitySpec {
    pub knots: Vec<Exact>,
    pub values: Vec<Exact>,
    /// Rescale `values` to unit mass instead of insisting on it.
    #[serde(default)]
    pub normalize: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub function: FunctionSpec,
    pub density: DensitySpec,
    pub alpha: Option<Exact>,
    pub alphas: Option<Vec<Exact>>,
    pub interval: Option<(Exact, Exact)>,
}

/// Which optional fields a subcommand takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Needs {
    Alpha,
    Nothing,
    Alphas,
    /// `alpha` bounds the sampled widths when present.
    OptionalAlpha,
}

fn rats(v: Vec<Exact>) -> Vec<Rat> {
    v.into_iter().map(|e| e.0).collect()
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::invalid("parse", e.to_string()))
    }

    pub fn check_fields(&self, needs: Needs) -> Result<(), CliError> {
        let unexpected = |field: &str| Err(CliError::invalid("unexpected_field", format!("`{field}` is not used here")));
        match needs {
            Needs::Alpha => {
                if self.alpha.is_none() {
                    return Err(CliError::invalid("missing_field", "`alpha` is required".into()));
                }
                if self.alphas.is_some() {
                    return unexpected("alphas");
                }
            }
            Needs::Nothing => {
                if self.alpha.is_some() {
                    return unexpected("alpha");
                }
                if self.alphas.is_some() {
                    return unexpected("alphas");
                }
            }
            Needs::Alphas => {
                if self.alpha.is_some() {
                    return unexpected("alpha");
                }
            }
            Needs::OptionalAlpha => {
                if self.alphas.is_some() {
                    return unexpected("alphas");
                }
            }
        }
        Ok(())
    }

    pub fn function(&self) -> Result<PiecewisePoly, CliError> {
        let bps: Vec<Rat> = self.function.breakpoints.iter().map(|e| e.0.clone()).collect();
        let pieces: Vec<Poly> =
            self.function.pieces.iter().map(|p| Poly::new(p.coeffs.iter().map(|e| e.0.clone()).collect())).collect();
        let domain = match &self.interval {
            None => Domain::Line,
            Some((a, b)) => {
                if a.0 >= b.0 {
                    return Err(CliError::invalid("invalid_interval", "interval needs a < b".into()));
                }
                Domain::Interval(a.0.clone(), b.0.clone())
            }
        };
        Ok(PiecewisePoly::with_domain(bps, pieces, domain)?)
    }

    pub fn density(&self) -> Result<StepDensity, CliError> {
        let knots = self.density.knots.iter().map(|e| e.0.clone()).collect();
        let values = self.density.values.iter().map(|e| e.0.clone()).collect();
        Ok(if self.density.normalize {
            StepDensity::normalized(knots, values)?
        } else {
            StepDensity::new(knots, values)?
        })
    }

    pub fn alpha(&self) -> Option<Rat> {
        self.alpha.as_ref().map(|e| e.0.clone())
    }

    pub fn alphas(&self) -> Option<Vec<Rat>> {
        self.alphas.clone().map(rats)
    }
}

/// Comma-separated exact widths from the command line.
pub fn parse_alpha_list(s: &str) -> Result<Vec<Rat>, CliError> {
    s.split(',')
        .map(|part| parse_rat(part.trim()).map_err(|e| CliError::invalid("parse", e.to_string())))
        .collect()
}
