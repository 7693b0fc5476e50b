use thiserror::Error;

pub type Result<T> = std::result::Result<T, ScanError>;

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    /// Every momentum node, or the requested point, sits on a gap closing.
    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),
    #[error("verification residual {residual:e} exceeds {tolerance:e}")]
    Verification { residual: f64, tolerance: f64 },
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] quench_qgt_core::Error),
}

impl ScanError {
    /// Process exit status for the CLI.
    pub fn exit_code(&self) -> i32 {
        use quench_qgt_core::Error as E;
        match self {
            ScanError::ConfigInvalid(_) => 2,
            ScanError::DegenerateGrid(_) => 3,
            ScanError::Verification { .. } => 4,
            ScanError::Io(_) | ScanError::Malformed(_) => 5,
            ScanError::Core(e) => match e {
                E::GapClosed { .. } | E::DegenerateStencil { .. } | E::AtCriticalPoint => 3,
                E::InvalidParameter { .. } | E::StepOutOfRange { .. } | E::StencilCrossesQuench { .. } => 2,
            },
        }
    }
}

impl From<csv::Error> for ScanError {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            match e.into_kind() {
                csv::ErrorKind::Io(io) => ScanError::Io(io),
                other => ScanError::Malformed(format!("{other:?}")),
            }
        } else {
            ScanError::Malformed(e.to_string())
        }
    }
}

impl From<serde_json::Error> for ScanError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            ScanError::Io(e.into())
        } else {
            ScanError::Malformed(e.to_string())
        }
    }
}
