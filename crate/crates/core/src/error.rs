//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point coordinate is not finite: {0}")]
    NonFinitePoint(f64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty sample set")]
    EmptySampleSet,

    #[error("sequence too short: need at least {need}, got {got}")]
    SequenceTooShort { need: usize, got: usize },

    #[error("region {0} yielded no sample points")]
    EmptyRegion(String),

    #[error("weights must be nonnegative and sum to 1 (got {0:?})")]
    BadWeights([f64; 3]),

    #[error("no admissible configurations for epsilon={epsilon} (filter empty on {rejected} draws)")]
    NoAdmissibleConfigurations { epsilon: f64, rejected: usize },

    #[error("all samples degenerate (every denominator below tolerance)")]
    AllSamplesDegenerate,

    #[error("no inverse solver available for map {map} into region {region}")]
    InverseUnavailable { map: String, region: String },

    #[error("inverse solve failed for {map} into {region} at step {step}: {detail}")]
    InverseSolveFailed {
        map: String,
        region: String,
        step: usize,
        detail: String,
    },

    #[error("solved point {value} at step {step} violates membership of region {region}")]
    RegionViolation {
        region: String,
        value: f64,
        step: usize,
    },

    #[error("orbit too short: need {need} points, got {got}")]
    OrbitTooShort { need: usize, got: usize },

    #[error("max steps exceeded after {steps} steps (final gap {final_gap:.3e})")]
    MaxStepsExceeded { steps: usize, final_gap: f64 },

    #[error("iteration stalled after {steps} steps (final gap {final_gap:.3e})")]
    Stalled { steps: usize, final_gap: f64 },

    #[error("syntax error at byte {offset}: found {found}, expected {}", expected.join(" | "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("division by (near-)zero denominator {0:e}")]
    DivisionByZero(f64),

    #[error("unbound region label {0} in piecewise expression")]
    UnboundRegionLabel(String),

    #[error("scenario parse error at line {line}: {detail}")]
    ScenarioParse { line: usize, detail: String },

    #[error("scenario validation error: {0}")]
    ScenarioValidation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
