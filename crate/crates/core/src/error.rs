use thiserror::Error;

/// Which mass component failed a positivity check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassComponent {
    M1,
    M3,
    M,
}

impl std::fmt::Display for MassComponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MassComponent::M1 => "m1",
            MassComponent::M3 => "m3",
            MassComponent::M => "m",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KiteError {
    #[error("invalid masses: {0}")]
    InvalidMasses(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("non-positive geometry: a = {a}, a + b = {a_plus_b}")]
    NonPositiveGeometry { a: f64, a_plus_b: f64 },

    #[error("degenerate distances: s12 + s23 - s13 - s24 = {denominator:e}")]
    DegenerateDistances { denominator: f64 },

    #[error("mass map undefined at the 1+3-gon (0/0)")]
    UndefinedAtGon,

    #[error("non-positive mass {component} = {value:e}")]
    NonPositiveMass { component: MassComponent, value: f64 },

    #[error("invalid slope k = {0}; need k < -2/3")]
    InvalidSlope(f64),

    #[error("collision: mutual distance {0:e}")]
    Collision(f64),

    #[error("no Newton start converged")]
    ConvergenceFailure,

    #[error("degenerate reduced basis: |u2| = {0:e}")]
    DegenerateBasis(f64),

    #[error("configuration is not central: relative residual {0:e}")]
    NotCentral(f64),

    #[error("eigenvalue computation failed: {0}")]
    EigenFailure(String),

    #[error("QR iteration did not converge after {0} iterations")]
    NoConvergence(usize),

    #[error("predicate does not change between {lo} and {hi}")]
    NoBracket { lo: f64, hi: f64 },

    #[error("stability bracket failed at xhat = {xhat}: {reason}")]
    BracketFailure { xhat: f64, reason: String },

    #[error("no sign change of F near the 1+3-gon")]
    SeedFailure,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, KiteError>;
