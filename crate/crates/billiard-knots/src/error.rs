use thiserror::Error;

/// Errors produced by diagram construction and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// Every phase leads to a singular projection. This happens exactly
    /// when the height frequency shares a factor with the string count.
    #[error("no phase resolves all crossings for s={s}, height frequency {m}")]
    NoValidPhase { s: u32, m: u32 },

    #[error("phase {0} is singular: some crossing has zero height difference")]
    SingularPhase(String),

    #[error("degenerate projection: {0}")]
    DegenerateProjection(String),

    #[error("diagram is not a single closed component: {0}")]
    UnsupportedLink(String),

    /// The limit diagram keeps singular crossings for every phase;
    /// occurs only when gcd(s, m) > 1.
    #[error("limit diagram is singular for s={s}, m={m} (shared factor {g})")]
    LimitSingular { s: u32, m: u32, g: u32 },

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
