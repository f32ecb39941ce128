use thiserror::Error;

/// Errors produced by state validation, channel construction and quadrature.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {0:.3e})")]
    NotHermitian(f64),

    #[error("trace is {0} instead of 1")]
    TraceNotOne(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:.3e})")]
    NotPositive(f64),

    #[error("Bloch vector has norm {0} > 1; not a valid state")]
    BlochNormExceeded(f64),

    #[error("Kraus operators are not trace preserving (max deviation {0:.3e})")]
    KrausNotTracePreserving(f64),

    #[error("probabilities must be non-negative and sum to 1 (got sum {sum}, min {min})")]
    InvalidProbabilities { sum: f64, min: f64 },

    #[error("scaling parameter {0} is outside [-1, 1]")]
    LambdaOutOfRange(f64),

    #[error("affine channel output leaves the Bloch ball (norm {0}); channel is not CP on this input")]
    NonCpEvidence(f64),

    #[error("grid too coarse: need at least {min_alpha} angular and {min_beta} polar nodes, got {got_alpha}x{got_beta}")]
    GridTooCoarse {
        min_alpha: usize,
        min_beta: usize,
        got_alpha: usize,
        got_beta: usize,
    },

    #[error("quadrature rule must have at least one node")]
    EmptyRule,

    #[error("quadrature self-test failed: {0}")]
    QuadratureSelfTest(String),

    #[error("integrand does not decay at the integration boundary (tail {tail:.3e} > {threshold:.3e})")]
    InsufficientDecay { tail: f64, threshold: f64 },

    #[error("|t| = {t} exceeds the Nyquist-safe bound {bound} for this grid")]
    TOutOfRange { t: f64, bound: f64 },

    #[error("invalid state parameter: {0}")]
    InvalidStateParameter(String),

    #[error("channel parameter constraint violated: {0}")]
    ChannelParameter(String),

    #[error("phase grid must have a multiple of 4 nodes for the quarter-turn shift, got {0}")]
    PhaseGridMisaligned(usize),

    #[error("boundary mass {mass:.3e} exceeds {threshold:.3e}; grid does not cover the support")]
    BoundaryMass { mass: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
