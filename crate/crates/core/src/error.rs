use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unknown scenario field `{0}`")]
    UnknownField(String),

    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: String,
        value: String,
        reason: String,
    },

    #[error("scenario invariant violated: {0}")]
    Invariant(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid quadrature request: {0}")]
    Quadrature(String),

    #[error("Nyquist violation: {panels} panels over the chirp, at least {required} required")]
    Nyquist { panels: usize, required: usize },

    #[error("FWHM undefined: {0}")]
    Fwhm(String),

    #[error("profile is identically zero")]
    ZeroProfile,

    #[error("profile grids differ")]
    GridMismatch,

    #[error("focal-plane window captures only {captured:.4} of the idler energy")]
    FocalCapture { captured: f64 },

    #[error("Fraunhofer method needs Fresnel number < 0.1, got {fresnel_number:.4}")]
    NotFraunhofer { fresnel_number: f64 },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("malformed line {line}: {text}")]
    Parse { line: usize, text: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
