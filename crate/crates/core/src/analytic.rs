//! Closed-form post-quench QGT of the SSH chain.
//!
//! Everything is assembled from a ledger of six scalars at fixed `k`
//! ([`QgtCoefficients`]):
//!
//! | symbol | value |
//! |--------|-------|
//! | `𝒜_λ`  | `(m_λ cos k + 1) / (2 R̃_λ²)`, ground-band Berry connection of `H(m_λ)` |
//! | `ℬ`    | `−𝒜_f (m_i m_f + (m_i + m_f) cos k + 1) / (R̃_i R̃_f)` |
//! | `𝒞`    | `J₂ m_f (m_i − m_f) sin²k / (R̃_i R̃_f²)` |
//! | `𝒟`    | `−√ΔE² · sign((m_i − m_f) sin k)` |
//! | `g_kk^i` | `(m_i cos k + 1)² / (4 R̃_i⁴)` |
//!
//! and then
//!
//! ```text
//! g_kk(t)  = g0(t) + g1(t)·t + g2·t²
//! g0(t)    = g_kk^i + 4(ℬ² − 𝒜_i𝒜_f) sin²(R_f t) + 4(𝒜_f² − ℬ²) sin⁴(R_f t)
//! g1(t)    = 2ℬ𝒞 sin(2R_f t)
//! g2       = 𝒞²
//! g_tt     = ΔE² = 𝒟²
//! Re Q_kt  = 𝒟 [ℬ sin(2R_f t) + 𝒞 t]
//! Im Q_kt  = 𝒟 (𝒜_i − 2𝒜_f sin²(R_f t))
//! ```
//!
//! The off-diagonal element here is the covariance `⟨H_f x̂⟩ − ⟨x̂⟩⟨H_f⟩` with
//! `x̂ = i∂_k`. In terms of `Q_μν = ⟨∂_μψ|∂_νψ⟩ − ⟨∂_μψ|ψ⟩⟨ψ|∂_νψ⟩` it is the
//! `(t, k)` element, i.e. the complex conjugate of `⟨∂_kψ|…|∂_tψ⟩`.
//! [`QgtValue::to_matrix`] performs that conversion.

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{berry_connection, checked_r_tilde, reduce_momentum};
use crate::numeric::QgtMatrix;
use crate::quench::{energy_variance, QuenchProtocol};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QgtCoefficients {
    /// Berry connection of the pre-quench ground band.
    pub a_i: f64,
    /// Berry connection of the post-quench ground band.
    pub a_f: f64,
    pub b: f64,
    /// Signed standard deviation of the band velocity, `𝒞² = Var(v̂_k)`.
    pub c: f64,
    /// Signed energy spread, `𝒟² = ΔE²`.
    pub d: f64,
    /// Pre-quench metric, equal to `a_i²` for this model.
    pub g_kk_i: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricBreakdown {
    pub g_kk: f64,
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
}

/// All QGT components at one `(k, t)`, off-diagonal in the covariance
/// convention described at module level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QgtValue {
    pub g_kk: f64,
    pub g0: f64,
    pub g1: f64,
    pub g2: f64,
    pub g_tt: f64,
    pub re_qkt: f64,
    pub im_qkt: f64,
}

impl QgtValue {
    pub fn q_kt(&self) -> C64 {
        C64::new(self.re_qkt, self.im_qkt)
    }

    /// `ℱ_kt = −2 Im Q_kt`.
    pub fn curvature(&self) -> f64 {
        -2.0 * self.im_qkt
    }

    /// `g_kk g_tt − |Q_kt|²`, non-negative for any pure state.
    pub fn uncertainty_margin(&self) -> f64 {
        self.g_kk * self.g_tt - self.q_kt().norm_sqr()
    }

    /// Same tensor laid out as `⟨∂_μψ|(1 − |ψ⟩⟨ψ|)|∂_νψ⟩` over `(k, t)`.
    pub fn to_matrix(&self) -> QgtMatrix {
        QgtMatrix { q_kk: self.g_kk, q_tt: self.g_tt, q_kt: self.q_kt().conj(), q_tk: self.q_kt() }
    }
}

/// Sign of a real quantity, with an explicit zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Negative => -1.0,
            Sign::Zero => 0.0,
            Sign::Positive => 1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl core::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::of(self.as_f64() * rhs.as_f64())
    }
}

pub fn coefficients(proto: &QuenchProtocol, k: f64) -> Result<QgtCoefficients> {
    let k = reduce_momentum(k);
    let initial = proto.initial();
    let post = proto.post();
    let ri = checked_r_tilde(&initial, k)?;
    let rf = checked_r_tilde(&post, k)?;
    let (s, c) = k.sin_cos();
    let (mi, mf) = (proto.m_i, proto.m_f);

    let a_i = berry_connection(&initial, k)?;
    let a_f = berry_connection(&post, k)?;
    // 2Re α − 1; exactly 1 without a quench, so every t-slice is identical
    let cos_mix = if proto.is_trivial() { 1.0 } else { (mi * mf + (mi + mf) * c + 1.0) / (ri * rf) };
    let b = -a_f * cos_mix;
    let cc = proto.j2 * mf * (mi - mf) * s * s / (ri * rf * rf);
    // sign(0) is irrelevant: √ΔE² vanishes whenever the sign argument does
    let d = -energy_variance(proto, k)?.sqrt() * Sign::of((mi - mf) * s).as_f64();
    let num = mi * c + 1.0;
    let g_kk_i = num * num / (4.0 * ri * ri * ri * ri);

    Ok(QgtCoefficients { a_i, a_f, b, c: cc, d, g_kk_i })
}

fn post_energy(proto: &QuenchProtocol, k: f64) -> Result<f64> {
    Ok(proto.j2 * checked_r_tilde(&proto.post(), k)?)
}

fn breakdown(co: &QgtCoefficients, rf: f64, t: f64) -> MetricBreakdown {
    let s = (rf * t).sin();
    let s2 = s * s;
    let g0 = co.g_kk_i + 4.0 * (co.b * co.b - co.a_i * co.a_f) * s2
        + 4.0 * (co.a_f * co.a_f - co.b * co.b) * s2 * s2;
    let g1 = 2.0 * co.b * co.c * (2.0 * rf * t).sin();
    let g2 = co.c * co.c;
    MetricBreakdown { g_kk: g0 + g1 * t + g2 * t * t, g0, g1, g2 }
}

fn off_diagonal(co: &QgtCoefficients, rf: f64, t: f64) -> C64 {
    let s = (rf * t).sin();
    C64::new(
        co.d * (co.b * (2.0 * rf * t).sin() + co.c * t),
        co.d * (co.a_i - 2.0 * co.a_f * s * s),
    )
}

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "t", value: t })
    }
}

/// Momentum metric `g_kk(k, t)` with its polynomial-in-`t` breakdown.
pub fn g_kk(proto: &QuenchProtocol, k: f64, t: f64) -> Result<MetricBreakdown> {
    check_time(t)?;
    let k = reduce_momentum(k);
    let co = coefficients(proto, k)?;
    Ok(breakdown(&co, post_energy(proto, k)?, t))
}

/// Temporal metric `g_tt = ΔE²`.
pub fn g_tt(proto: &QuenchProtocol, k: f64) -> Result<f64> {
    energy_variance(proto, k)
}

pub fn q_kt(proto: &QuenchProtocol, k: f64, t: f64) -> Result<C64> {
    check_time(t)?;
    let k = reduce_momentum(k);
    let co = coefficients(proto, k)?;
    Ok(off_diagonal(&co, post_energy(proto, k)?, t))
}

/// Long-time mean of `Im Q_kt`, `𝒟(𝒜_i − 𝒜_f)`.
pub fn time_averaged_im_qkt(proto: &QuenchProtocol, k: f64) -> Result<f64> {
    let co = coefficients(proto, k)?;
    Ok(co.d * (co.a_i - co.a_f))
}

/// Quench-induced curvature on the `(k, t)` plane, `ℱ_kt = −2 Im Q_kt`.
pub fn berry_curvature_kt(proto: &QuenchProtocol, k: f64, t: f64) -> Result<f64> {
    Ok(-2.0 * q_kt(proto, k, t)?.im)
}

/// Every component at `(k, t)` from a single coefficient evaluation.
pub fn qgt_value(proto: &QuenchProtocol, k: f64, t: f64) -> Result<QgtValue> {
    check_time(t)?;
    let k = reduce_momentum(k);
    let co = coefficients(proto, k)?;
    let rf = post_energy(proto, k)?;
    let g = breakdown(&co, rf, t);
    let q = off_diagonal(&co, rf, t);
    Ok(QgtValue {
        g_kk: g.g_kk,
        g0: g.g0,
        g1: g.g1,
        g2: g.g2,
        g_tt: co.d * co.d,
        re_qkt: q.re,
        im_qkt: q.im,
    })
}

/// Sign structure of `Im Q_kt` next to the zone boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundarySignReport {
    /// `sign(𝒜_i)` near `k = π`, which is `sign(1 − m_i)`.
    pub a_i_sign_near_pi: Sign,
    /// `sign(𝒟)` for `−π < k < 0`.
    pub d_sign_negative_k: Sign,
    /// Predicted `sign(Im Q_kt(k, 0)) = sign(𝒟𝒜_i)` for `k → −π⁺`.
    pub initial_im_qkt_sign_negative_k: Sign,
}

/// Momentum at which the diagnostic is cross-checked against a direct evaluation.
pub const BOUNDARY_PROBE_OFFSET: f64 = 0.01;

pub fn boundary_sign_diagnostic(proto: &QuenchProtocol) -> Result<BoundarySignReport> {
    if proto.m_i == 1.0 {
        return Err(Error::AtCriticalPoint);
    }
    let a_i_sign_near_pi = Sign::of(1.0 - proto.m_i);
    // sin k < 0 on the negative half-zone; 𝒟 carries an extra minus sign
    let d_sign_negative_k = Sign::of(proto.m_i - proto.m_f);
    Ok(BoundarySignReport {
        a_i_sign_near_pi,
        d_sign_negative_k,
        initial_im_qkt_sign_negative_k: a_i_sign_near_pi * d_sign_negative_k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn proto(mi: f64, mf: f64) -> QuenchProtocol {
        QuenchProtocol::new(mi, mf, 1.0).unwrap()
    }

    #[test]
    fn no_quench_coefficients() {
        let co = coefficients(&proto(0.5, 0.5), PI / 3.0).unwrap();
        assert_eq!(co.c, 0.0);
        assert_eq!(co.d, 0.0);
        assert_eq!(co.a_i, co.a_f);
        assert!((co.b + co.a_f).abs() < 1e-15);
    }

    #[test]
    fn coefficient_examples() {
        let co = coefficients(&proto(0.5, 0.1), PI / 2.0).unwrap();
        let expected = 0.04 / (1.25f64.sqrt() * 1.01);
        assert!((co.c - expected).abs() < 1e-15);
        assert!((co.c - 0.0354228).abs() < 1e-7);

        let co = coefficients(&proto(0.5, 0.9), 0.0).unwrap();
        assert!((co.g_kk_i - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn metric_at_zero_time_is_pre_quench_metric() {
        let p = proto(1.1, 2.0);
        for k in [-2.5, -0.4, 0.0, 1.3, 3.0] {
            let g = g_kk(&p, k, 0.0).unwrap();
            let co = coefficients(&p, k).unwrap();
            assert_eq!(g.g_kk, co.g_kk_i);
        }
    }

    #[test]
    fn metric_without_quench_is_static() {
        let p = proto(0.7, 0.7);
        for t in [0.0, 0.5, 3.0, 17.0] {
            let g = g_kk(&p, 1.2, t).unwrap();
            let gi = coefficients(&p, 1.2).unwrap().g_kk_i;
            assert!((g.g_kk - gi).abs() < 1e-15);
            assert_eq!(g.g1, 0.0);
            assert_eq!(g.g2, 0.0);
        }
    }

    #[test]
    fn ballistic_growth_rate() {
        let p = proto(0.5, 0.1);
        let t = 1e6;
        let g = g_kk(&p, PI / 2.0, t).unwrap();
        assert!((g.g_kk / (t * t) - 1.2548e-3).abs() < 1e-7);
    }

    #[test]
    fn g_tt_examples() {
        assert!((g_tt(&proto(0.9, 2.0), PI / 2.0).unwrap() - 0.66850).abs() < 1e-5);
        assert!(g_tt(&proto(0.9, 2.0), PI).unwrap() < 1e-14);
        assert_eq!(g_tt(&proto(1.4, 1.4), 0.8).unwrap(), 0.0);
    }

    #[test]
    fn q_kt_vanishes_at_zone_center() {
        for t in [0.0, 1.0, 9.5] {
            assert_eq!(q_kt(&proto(0.9, 2.0), 0.0, t).unwrap(), C64::new(0.0, 0.0));
        }
    }

    #[test]
    fn q_kt_sign_near_negative_boundary() {
        let k = -PI + 0.01;
        assert!(q_kt(&proto(1.1, 2.0), k, 0.0).unwrap().im > 0.0);
        assert!(q_kt(&proto(0.9, 2.0), k, 0.0).unwrap().im < 0.0);
    }

    #[test]
    fn q_kt_initial_imaginary_part() {
        let p = proto(1.5, 0.1);
        let co = coefficients(&p, -2.0).unwrap();
        assert_eq!(q_kt(&p, -2.0, 0.0).unwrap().im, co.d * co.a_i);
    }

    #[test]
    fn time_average_examples() {
        assert_eq!(time_averaged_im_qkt(&proto(0.3, 0.3), 1.0).unwrap(), 0.0);
        assert_eq!(time_averaged_im_qkt(&proto(0.3, 1.8), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn curvature_examples() {
        let p = proto(0.9, 2.0);
        assert_eq!(berry_curvature_kt(&p, 0.0, 4.0).unwrap(), 0.0);
        let sum = berry_curvature_kt(&p, 1.7, 4.0).unwrap() + berry_curvature_kt(&p, -1.7, 4.0).unwrap();
        assert!(sum.abs() < 1e-12);
        assert_eq!(berry_curvature_kt(&proto(1.2, 1.2), 1.7, 4.0).unwrap(), 0.0);
    }

    #[test]
    fn negative_time_is_rejected() {
        assert!(g_kk(&proto(0.5, 0.1), 1.0, -1.0).is_err());
        assert!(q_kt(&proto(0.5, 0.1), 1.0, f64::NAN).is_err());
    }

    #[test]
    fn boundary_sign_table() {
        use Sign::*;
        let r = boundary_sign_diagnostic(&proto(1.1, 2.0)).unwrap();
        assert_eq!((r.a_i_sign_near_pi, r.d_sign_negative_k, r.initial_im_qkt_sign_negative_k), (Negative, Negative, Positive));
        let r = boundary_sign_diagnostic(&proto(0.9, 2.0)).unwrap();
        assert_eq!((r.a_i_sign_near_pi, r.d_sign_negative_k, r.initial_im_qkt_sign_negative_k), (Positive, Negative, Negative));
        let r = boundary_sign_diagnostic(&proto(1.5, 0.1)).unwrap();
        assert_eq!((r.a_i_sign_near_pi, r.d_sign_negative_k), (Negative, Positive));
        assert_eq!(boundary_sign_diagnostic(&proto(1.0, 2.0)), Err(Error::AtCriticalPoint));
    }
}
