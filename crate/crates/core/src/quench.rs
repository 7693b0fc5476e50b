//! Sudden quench `m_i → m_f` at `t = 0`.
//!
//! The state is prepared in `|u_i⁻(k)⟩` and for `t > 0` evolves under `H_f`
//! only. Decomposing in the post-quench eigenbasis,
//! `|u_i⁻⟩ = α|u_f⁻⟩ + β|u_f⁺⟩`, the evolved state is
//! `|ψ_k(t)⟩ = α e^{+iR_f t}|u_f⁻⟩ + β e^{−iR_f t}|u_f⁺⟩` with `R_f = J₂ R̃_f`.

use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{checked_r_tilde, eigensystem, reduce_momentum, EigenSystem, ModelParams};
use crate::spinor::Spinor;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchProtocol {
    pub m_i: f64,
    pub m_f: f64,
    pub j2: f64,
}

impl QuenchProtocol {
    pub fn new(m_i: f64, m_f: f64, j2: f64) -> Result<Self> {
        let initial = ModelParams::new(m_i, j2)?;
        let fin = ModelParams::new(m_f, j2).map_err(|e| match e {
            Error::InvalidParameter { name: "m", value } => {
                Error::InvalidParameter { name: "m_f", value }
            }
            other => other,
        })?;
        Ok(Self { m_i: initial.m, m_f: fin.m, j2 })
    }

    /// The same Hamiltonian before and after `t = 0`.
    pub fn no_quench(params: ModelParams) -> Self {
        Self { m_i: params.m, m_f: params.m, j2: params.j2 }
    }

    pub fn initial(&self) -> ModelParams {
        ModelParams { m: self.m_i, j2: self.j2 }
    }

    pub fn post(&self) -> ModelParams {
        ModelParams { m: self.m_f, j2: self.j2 }
    }

    pub fn is_trivial(&self) -> bool {
        self.m_i == self.m_f
    }

    /// True when either Hamiltonian closes its gap at `k = π`.
    pub fn touches_gap(&self) -> bool {
        self.initial().is_gapless() || self.post().is_gapless()
    }
}

/// Amplitudes of `|u_i⁻⟩` on the post-quench ground (`alpha`) and excited
/// (`beta`) bands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapCoeffs {
    pub alpha: C64,
    pub beta: C64,
}

impl OverlapCoeffs {
    pub fn ground_weight(&self) -> f64 {
        self.alpha.norm_sqr()
    }

    pub fn excited_weight(&self) -> f64 {
        self.beta.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedState {
    pub k: f64,
    pub t: f64,
    pub spinor: Spinor,
}

/// `α, β = [R̃_i R̃_f ± (m_i + e^{−ik})(m_f + e^{ik})] / (2 R̃_i R̃_f)`.
pub fn overlap_coeffs(proto: &QuenchProtocol, k: f64) -> Result<OverlapCoeffs> {
    let k = reduce_momentum(k);
    let ri = checked_r_tilde(&proto.initial(), k)?;
    let rf = checked_r_tilde(&proto.post(), k)?;
    let (s, c) = k.sin_cos();
    let cross = C64::new(proto.m_i + c, -s) * C64::new(proto.m_f + c, s);
    let denom = 2.0 * ri * rf;
    Ok(OverlapCoeffs {
        alpha: (C64::new(ri * rf, 0.0) + cross) / denom,
        beta: (C64::new(ri * rf, 0.0) - cross) / denom,
    })
}

pub(crate) fn evolve_in_basis(
    coeffs: &OverlapCoeffs,
    post: &EigenSystem,
    t: f64,
) -> Spinor {
    let phase = C64::from_polar(1.0, post.e_plus * t);
    post.u_minus.scale(coeffs.alpha * phase) + post.u_plus.scale(coeffs.beta * phase.conj())
}

pub fn evolved_state(proto: &QuenchProtocol, k: f64, t: f64) -> Result<EvolvedState> {
    let coeffs = overlap_coeffs(proto, k)?;
    let post = eigensystem(&proto.post(), k)?;
    Ok(EvolvedState { k, t, spinor: evolve_in_basis(&coeffs, &post, t) })
}

/// `ΔE² = ⟨H_f²⟩ − ⟨H_f⟩²`, time independent. Evaluated as
/// `J₂² (m_i − m_f)² sin²k / R̃_i²`; in debug builds it is cross-checked
/// against `4 J₂² R̃_f² |α|²|β|²` whenever the post-quench gap is open.
pub fn energy_variance(proto: &QuenchProtocol, k: f64) -> Result<f64> {
    let k = reduce_momentum(k);
    let ri = checked_r_tilde(&proto.initial(), k)?;
    let dm = proto.m_i - proto.m_f;
    let s = k.sin();
    let var = proto.j2 * proto.j2 * dm * dm * s * s / (ri * ri);
    #[cfg(debug_assertions)]
    if let Ok(ov) = overlap_coeffs(proto, k) {
        let rf = crate::model::r_tilde(&proto.post(), k);
        let alt = 4.0 * proto.j2 * proto.j2 * rf * rf * ov.ground_weight() * ov.excited_weight();
        debug_assert!((alt - var).abs() <= 1e-10 * (1.0 + var), "{alt} vs {var}");
    }
    Ok(var)
}

/// `|β|²`, the weight transferred to the post-quench excited band.
pub fn excitation_probability(proto: &QuenchProtocol, k: f64) -> Result<f64> {
    Ok(overlap_coeffs(proto, k)?.excited_weight())
}

/// Mandelstam–Tamm scale `τ_k = 1/ΔE`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Timescale {
    Finite(f64),
    /// Zero energy variance: the mode never changes.
    Infinite,
}

impl Timescale {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Timescale::Infinite)
    }

    /// Flatten to `f64`, with `+∞` for [`Timescale::Infinite`].
    pub fn as_f64(&self) -> f64 {
        match *self {
            Timescale::Finite(tau) => tau,
            Timescale::Infinite => f64::INFINITY,
        }
    }
}

/// Where the pre-quench gap is closed the variance diverges and the
/// timescale is reported as `Finite(0.0)`.
pub fn volatility_timescale(proto: &QuenchProtocol, k: f64) -> Timescale {
    match energy_variance(proto, k) {
        Ok(var) if var > 0.0 => Timescale::Finite(1.0 / var.sqrt()),
        Ok(_) => Timescale::Infinite,
        Err(_) => Timescale::Finite(0.0),
    }
}
