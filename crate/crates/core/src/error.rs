use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Numeric payloads are stored as `f64` regardless of the scalar type the
/// failing computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("missing {kind} symbol for admissible labels {labels}")]
    MissingSymbol { kind: &'static str, labels: String },

    #[error("unknown charge label `{0}`")]
    UnknownLabel(String),

    #[error("charge index {index} out of range for model with {rank} labels")]
    LabelOutOfRange { index: usize, rank: usize },

    #[error("channel `{channel}` is not an admissible fusion outcome of `{a}` x `{b}`")]
    InvalidChannel { channel: String, a: String, b: String },

    #[error("charge `{0}` is not Abelian")]
    NotAbelian(String),

    #[error("fusion space is empty for charge `{0}`")]
    EmptyBasis(String),

    #[error("operator is not Hermitian (max |H - H^dagger| = {residual:e})")]
    NonHermitian { residual: f64 },

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("ground-state degeneracy changed from {expected} to {found} at t = {time}")]
    DegeneracyChange {
        time: f64,
        expected: usize,
        found: usize,
    },

    #[error("excitation gap {gap:e} at t = {time} fell below threshold {threshold:e}")]
    GapCollapse { time: f64, gap: f64, threshold: f64 },

    #[error("time step too large: {0}")]
    StepTooLarge(String),

    #[error("leakage {leakage:e} out of the ground space exceeds threshold {threshold:e}")]
    ExcessLeakage { leakage: f64, threshold: f64 },

    #[error("Hilbert-space dimension {dim} exceeds the dense cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("index {index} out of range (valid: {valid})")]
    IndexOutOfRange { index: usize, valid: String },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("model file line {line}: {message}")]
    ModelFormat { line: usize, message: String },
}

impl Error {
    /// Stable variant name, used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::MissingSymbol { .. } => "MissingSymbol",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::LabelOutOfRange { .. } => "LabelOutOfRange",
            Error::InvalidChannel { .. } => "InvalidChannel",
            Error::NotAbelian(_) => "NotAbelian",
            Error::EmptyBasis(_) => "EmptyBasis",
            Error::NonHermitian { .. } => "NonHermitian",
            Error::InvalidSchedule(_) => "InvalidSchedule",
            Error::DegeneracyChange { .. } => "DegeneracyChange",
            Error::GapCollapse { .. } => "GapCollapse",
            Error::StepTooLarge(_) => "StepTooLarge",
            Error::ExcessLeakage { .. } => "ExcessLeakage",
            Error::DimensionCap { .. } => "DimensionCap",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::InsufficientData(_) => "InsufficientData",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::ModelFormat { .. } => "ModelFormat",
        }
    }
}
