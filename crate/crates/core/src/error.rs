use thiserror::Error;

/// Errors raised by the numerical modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid quantum numbers (n={n}, l={l}): need l <= n and n - l even")]
    InvalidQuantumNumbers { n: u32, l: u32 },

    #[error("level order inverts at shell n={shell} (n_max={n_max}); truncation at (n_max, n_max) is not valid")]
    InversionBeforeNmax { shell: u32, n_max: u32 },

    #[error("level ({n}, {l}) has E_q={energy} >= 1/(2 epsilon)={turning}; the VFO energy is no longer monotone there")]
    NonMonotoneVfo {
        n: u32,
        l: u32,
        energy: f64,
        turning: f64,
    },

    #[error("particle cut {n_cut} exceeds the {capacity} states held by the level scheme")]
    CutExceedsScheme { n_cut: usize, capacity: usize },

    #[error("least-squares problem is rank deficient: {independent} independent samples for {unknowns} unknowns")]
    RankDeficient { independent: usize, unknowns: usize },

    #[error("shell-energy envelope has no interior minimum")]
    TooFewExtrema,

    #[error("index range {from}..={to} is outside the magic table (1..={len})")]
    RangeOutOfTable { from: usize, to: usize, len: usize },

    #[error("nothing to emit")]
    EmptyInput,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::InvalidQuantumNumbers { .. } => "InvalidQuantumNumbers",
            Error::InversionBeforeNmax { .. } => "InversionBeforeNmax",
            Error::NonMonotoneVfo { .. } => "NonMonotoneVfo",
            Error::CutExceedsScheme { .. } => "CutExceedsScheme",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::TooFewExtrema => "TooFewExtrema",
            Error::RangeOutOfTable { .. } => "RangeOutOfTable",
            Error::EmptyInput => "EmptyInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
