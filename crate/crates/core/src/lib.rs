//! Post-quench quantum geometric tensor (QGT) of the SSH chain.
//!
//! A state prepared in the ground band of `H(m_i)` is evolved under `H(m_f)`.
//! For each crystal momentum `k` the evolved spinor `|ψ_k(t)⟩` traces a curve
//! on the Bloch sphere. This crate computes the QGT of that family over the
//! `(k, t)` plane in two independent ways:
//!
//! - [`analytic`]: closed forms built from the Berry connections of both
//!   Hamiltonians, the overlap amplitudes and the post-quench band velocities.
//! - [`numeric`]: central finite differences of the raw evolved state,
//!   assembled straight from `Q_μν = ⟨∂_μψ|∂_νψ⟩ − ⟨∂_μψ|ψ⟩⟨ψ|∂_νψ⟩`, plus
//!   operator-variance routes (position/velocity/energy).
//!
//! The crate is `no_std` and allocation free. IO, scans and export live in the
//! `quench-qgt` companion crate.
//!
//! Units: lattice constant 1, ħ = 1. Energies carry the scale `J₂`; times are
//! in units of `1/J₂` when `J₂ = 1`.
#![no_std]
#![forbid(unsafe_code)]

pub mod analytic;
pub mod error;
pub mod grid;
pub mod model;
pub mod numeric;
pub mod quench;
pub mod spinor;

pub use analytic::{
    berry_curvature_kt, boundary_sign_diagnostic, coefficients, g_kk, g_tt, q_kt, qgt_value,
    time_averaged_im_qkt, BoundarySignReport, MetricBreakdown, QgtCoefficients, QgtValue, Sign,
};
pub use error::{Error, Result};
pub use model::{
    berry_connection, bloch_hamiltonian, bloch_vector, eigensystem, group_velocity,
    reduce_momentum, r_tilde, Band, BlochVector, EigenSystem, ModelParams, GAP_TOLERANCE,
};
pub use numeric::{
    covariance_x_h, heisenberg_metric, no_quench_constancy, numeric_q_kk, numeric_qgt,
    numeric_qgt_of, variance_velocity, ConstancyReport, CovarianceXH, FdConfig, HeisenbergMetric,
    QgtMatrix,
};
pub use quench::{
    energy_variance, evolved_state, excitation_probability, overlap_coeffs, volatility_timescale,
    EvolvedState, OverlapCoeffs, QuenchProtocol, Timescale,
};
pub use spinor::{Matrix2, Spinor};

pub use num_complex::Complex64 as C64;
