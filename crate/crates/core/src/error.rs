use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A model or protocol parameter is outside its domain.
    InvalidParameter { name: &'static str, value: f64 },
    /// `R̃(k)` fell below [`GAP_TOLERANCE`](crate::GAP_TOLERANCE): the bands touch
    /// and the eigenbasis is not defined.
    GapClosed { m: f64, k: f64 },
    /// A finite-difference stencil reaches into the exclusion zone around a
    /// gap-closing momentum.
    DegenerateStencil { k: f64 },
    /// A finite-difference step is outside `[1e-7, 1e-2]`.
    StepOutOfRange { step: f64 },
    /// Time stencil would reach back across the quench at `t = 0`.
    StencilCrossesQuench { t: f64 },
    /// Sign analysis requested exactly at `m_i = 1`.
    AtCriticalPoint,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid parameter {name} = {value}")
            }
            Error::GapClosed { m, k } => write!(f, "gap closed at m = {m}, k = {k}"),
            Error::DegenerateStencil { k } => {
                write!(f, "finite-difference stencil at k = {k} touches a gap-closing point")
            }
            Error::StepOutOfRange { step } => {
                write!(f, "finite-difference step {step} outside [1e-7, 1e-2]")
            }
            Error::StencilCrossesQuench { t } => {
                write!(f, "time stencil at t = {t} crosses the quench at t = 0")
            }
            Error::AtCriticalPoint => f.write_str("boundary sign undefined at m_i = 1"),
        }
    }
}

impl core::error::Error for Error {}
