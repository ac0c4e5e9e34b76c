use thiserror::Error;

/// Crate-wide error type. Variants map onto the failure modes of the
/// individual pipeline stages; the CLI translates them into exit codes.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("exponent at byte {offset} depends on t; only constant exponents are supported")]
    VariableExponent { offset: usize },

    #[error("domain error evaluating `{node}` at t = {t}: {reason}")]
    EvalDomain { node: String, t: f64, reason: String },

    #[error("unknown builtin potential `{0}`")]
    UnknownBuiltin(String),

    #[error("bad potential parameter: {0}")]
    BadParameter(String),

    #[error("potential fails single-well validation: {0}")]
    Validation(String),

    #[error("energy must be positive, got {0}")]
    EnergyNotPositive(f64),

    #[error("bracket expansion failed for {what} (cap reached at {cap})")]
    Bracket { what: &'static str, cap: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("root solve did not converge: {0}")]
    RootSolve(String),

    #[error("eps = {eps} is outside the supported range ({reason})")]
    EpsOutOfRange { eps: f64, reason: &'static str },

    #[error("ODE step budget exhausted: needed more than {budget} steps ({context})")]
    StepBudget { budget: u64, context: String },

    #[error("t = {t} is too close to a turning point (distance {gap:.3e} < patch width {min_gap:.3e})")]
    TooCloseToTurning { t: f64, gap: f64, min_gap: f64 },

    #[error("unsupported expansion order N = {0}; only N <= 2 is implemented")]
    UnsupportedOrder(u32),

    #[error("n = {0} exceeds the supported range for Hermite data (n <= 60)")]
    HermiteRange(u32),

    #[error("interval [{from}, {to}] leaves the classically allowed region [{t_minus}, {t_plus}]")]
    OutsideAllowed {
        from: f64,
        to: f64,
        t_minus: f64,
        t_plus: f64,
    },

    #[error("grid too coarse: h = {h:.3e} exceeds the resolution guard {limit:.3e} (= eps/8)")]
    GridTooCoarse { h: f64, limit: f64 },

    #[error("study grid invalid: {0}")]
    BadStudyGrid(String),

    #[error("{0}")]
    Usage(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
