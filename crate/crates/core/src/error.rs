use thiserror::Error;

use crate::surface::TopologyViolation;

/// Errors raised by the geometric constructions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("angles sum to {sum}, which is not below pi: not a hyperbolic triangle")]
    NotHyperbolic { sum: f64 },

    #[error("not realizable: {0}")]
    NonRealizable(String),

    /// Input sits within the realizability threshold of a degenerate configuration.
    #[error("marginal configuration: {0}")]
    Marginal(String),

    #[error("surface is not hyperbolic: Gauss-Bonnet area {area} is not positive")]
    Inadmissible { area: f64 },

    #[error("invalid pants decomposition: {}", format_violations(.0))]
    Topology(Vec<TopologyViolation>),

    #[error("invalid curve word: {0}")]
    Word(String),

    #[error("holonomy is {kind}, the word has no closed geodesic representative")]
    NonGeodesic { kind: String },

    #[error("lamination references unknown curve `{0}`")]
    UnknownCurve(String),

    #[error("optimizer did not converge after {iterations} iterations (residual {residual:e})")]
    Convergence { residual: f64, iterations: usize },

    #[error("invalid bending data: {}", .0.join("; "))]
    Bending(Vec<String>),
}

fn format_violations(v: &[TopologyViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
