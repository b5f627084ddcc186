use thiserror::Error;

/// Errors raised by the solver, bound evaluators and verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("coincident points: |z - w| = {distance:e} is below the log-singularity guard")]
    CoincidentPoints { distance: f64 },

    #[error("point with modulus {modulus} is outside the admissible region ({context})")]
    OutsideDisk { modulus: f64, context: &'static str },

    #[error("finite-difference stencil leaves the disk: |z| + h = {reach}")]
    StencilOutOfDomain { reach: f64 },

    #[error("singular center with modulus {modulus} is not inside the disk")]
    CenterOutsideDisk { modulus: f64 },

    #[error("{name} is undefined at {value} (domain {domain})")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature validation failed on probe `{probe}`: error {error:e} exceeds tolerance {tol:e}")]
    QuadratureValidation {
        probe: &'static str,
        error: f64,
        tol: f64,
    },

    #[error("requested {requested} harmonic coefficients but only {samples} boundary samples are available")]
    InsufficientSamples { requested: usize, samples: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("no sign change of phi on [{lo}, {hi}]")]
    BracketFailure { lo: f64, hi: f64 },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("scenario `{scenario}` expected {expected} for the {bound} bound, but {observed}")]
    HypothesisMismatch {
        scenario: String,
        bound: String,
        expected: String,
        observed: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
