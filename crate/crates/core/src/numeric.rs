//! Finite-difference and operator oracles for the QGT.
//!
//! Nothing here uses the closed forms of [`crate::analytic`]. The state is
//! differentiated by second-order central differences and the tensor is
//! assembled directly as `Q_μν = ⟨∂_μψ|∂_νψ⟩ − ⟨∂_μψ|ψ⟩⟨ψ|∂_νψ⟩` over
//! `(μ, ν) ∈ {k, t}`.
//!
//! Neighbouring states are phase-aligned to the centre state by default so the
//! difference quotient does not pick up arbitrary gauge jumps.

use core::f64::consts::PI;

use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::{
    bloch_hamiltonian, eigensystem, group_velocity, reduce_momentum, Band, ModelParams,
};
use crate::quench::{evolved_state, overlap_coeffs, QuenchProtocol};
use crate::spinor::{Matrix2, Spinor};

pub const MIN_STEP: f64 = 1e-7;
pub const MAX_STEP: f64 = 1e-2;
/// Half-width of the momentum window around a gap-closing point where no
/// stencil is evaluated.
pub const STENCIL_EXCLUSION: f64 = 0.05;
/// Largest spread of `q_kk` over time accepted as constant.
pub const CONSTANCY_TOLERANCE: f64 = 1e-8;
/// Step for [`no_quench_constancy`]. The static metric has no secular growth,
/// so the step can go down to where truncation and rounding balance and the
/// result lands within `1e-8` of the closed form away from the gap.
pub const CONSTANCY_STEP: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// `f'(x) ≈ (f(x + h) − f(x − h)) / 2h`.
    Central2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdConfig {
    pub dk: f64,
    pub dt: f64,
    pub scheme: Scheme,
    pub gauge_align: bool,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self { dk: 1e-4, dt: 1e-4, scheme: Scheme::Central2, gauge_align: true }
    }
}

impl FdConfig {
    pub fn with_step(step: f64) -> Self {
        Self { dk: step, dt: step, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        for step in [self.dk, self.dt] {
            if !(MIN_STEP..=MAX_STEP).contains(&step) {
                return Err(Error::StepOutOfRange { step });
            }
        }
        Ok(())
    }
}

/// Hermitian 2×2 tensor over `(k, t)`, `q_kt = ⟨∂_kψ|(1 − P)|∂_tψ⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QgtMatrix {
    pub q_kk: f64,
    pub q_tt: f64,
    pub q_kt: C64,
    pub q_tk: C64,
}

impl QgtMatrix {
    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &QgtMatrix) -> f64 {
        let d = [
            (self.q_kk - other.q_kk).abs(),
            (self.q_tt - other.q_tt).abs(),
            (self.q_kt - other.q_kt).norm(),
            (self.q_tk - other.q_tk).norm(),
        ];
        d.iter().fold(0.0, |a, &b| a.max(b))
    }

    /// `|Q_tk − conj(Q_kt)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        (self.q_tk - self.q_kt.conj()).norm()
    }
}

fn central<F>(f: &F, center: &Spinor, at_plus: (f64, f64), at_minus: (f64, f64), h: f64, align: bool) -> Result<Spinor>
where
    F: Fn(f64, f64) -> Result<Spinor>,
{
    let mut plus = f(at_plus.0, at_plus.1)?;
    let mut minus = f(at_minus.0, at_minus.1)?;
    if align {
        plus = plus.align_phase_to(center);
        minus = minus.align_phase_to(center);
    }
    Ok((plus - minus) * (0.5 / h))
}

fn assemble(psi: &Spinor, a: &Spinor, b: &Spinor) -> C64 {
    a.inner(b) - a.inner(psi) * psi.inner(b)
}

/// QGT of an arbitrary state family `(k, t) ↦ |ψ⟩`. No domain checks beyond
/// the step bounds; the caller owns the stencil.
pub fn numeric_qgt_of<F>(state: F, k: f64, t: f64, cfg: &FdConfig) -> Result<QgtMatrix>
where
    F: Fn(f64, f64) -> Result<Spinor>,
{
    cfg.validate()?;
    let psi = state(k, t)?;
    let dk = central(&state, &psi, (k + cfg.dk, t), (k - cfg.dk, t), cfg.dk, cfg.gauge_align)?;
    let dt = central(&state, &psi, (k, t + cfg.dt), (k, t - cfg.dt), cfg.dt, cfg.gauge_align)?;
    Ok(QgtMatrix {
        q_kk: assemble(&psi, &dk, &dk).re,
        q_tt: assemble(&psi, &dt, &dt).re,
        q_kt: assemble(&psi, &dk, &dt),
        q_tk: assemble(&psi, &dt, &dk),
    })
}

fn distance_to_boundary(k: f64) -> f64 {
    PI - reduce_momentum(k).abs()
}

fn check_k_stencil(models: &[ModelParams], k: f64, dk: f64) -> Result<()> {
    let window = STENCIL_EXCLUSION.max(2.0 * dk);
    if models.iter().any(|p| p.is_gapless()) && distance_to_boundary(k) < window {
        return Err(Error::DegenerateStencil { k });
    }
    Ok(())
}

fn check_stencil(proto: &QuenchProtocol, k: f64, t: f64, cfg: &FdConfig) -> Result<()> {
    cfg.validate()?;
    check_k_stencil(&[proto.initial(), proto.post()], k, cfg.dk)?;
    if !(t >= cfg.dt && t.is_finite()) {
        return Err(Error::StencilCrossesQuench { t });
    }
    Ok(())
}

fn evolved(proto: &QuenchProtocol) -> impl Fn(f64, f64) -> Result<Spinor> + '_ {
    move |k, t| Ok(evolved_state(proto, k, t)?.spinor)
}

/// Finite-difference QGT of the evolved state. Requires `t ≥ dt` so the time
/// stencil stays on the post-quench side.
pub fn numeric_qgt(proto: &QuenchProtocol, k: f64, t: f64, cfg: &FdConfig) -> Result<QgtMatrix> {
    check_stencil(proto, k, t, cfg)?;
    numeric_qgt_of(evolved(proto), k, t, cfg)
}

/// `∂_kψ` only; valid at any `t ≥ 0`, including the quench instant.
fn k_derivative(proto: &QuenchProtocol, k: f64, t: f64, cfg: &FdConfig) -> Result<(Spinor, Spinor)> {
    cfg.validate()?;
    check_k_stencil(&[proto.initial(), proto.post()], k, cfg.dk)?;
    let f = evolved(proto);
    let psi = f(k, t)?;
    let d = central(&f, &psi, (k + cfg.dk, t), (k - cfg.dk, t), cfg.dk, cfg.gauge_align)?;
    Ok((psi, d))
}

/// `q_kk` alone from the momentum stencil.
pub fn numeric_q_kk(proto: &QuenchProtocol, k: f64, t: f64, cfg: &FdConfig) -> Result<f64> {
    let (psi, d) = k_derivative(proto, k, t, cfg)?;
    Ok(assemble(&psi, &d, &d).re)
}

/// Band-resolved velocity operator `v̂ = v⁺P⁺ + v⁻P⁻` of the post-quench bands.
fn velocity_operator(post: &ModelParams, k: f64) -> Result<Matrix2> {
    let es = eigensystem(post, k)?;
    let vp = group_velocity(post, k, Band::Plus)?;
    let vm = group_velocity(post, k, Band::Minus)?;
    Ok(Matrix2::outer(&es.u_plus).scale(vp) + Matrix2::outer(&es.u_minus).scale(vm))
}

/// `Var(v̂_k) = |α|²(v⁻)² + |β|²(v⁺)² − (|α|²v⁻ + |β|²v⁺)²`.
pub fn variance_velocity(proto: &QuenchProtocol, k: f64) -> Result<f64> {
    let ov = overlap_coeffs(proto, k)?;
    let post = proto.post();
    let vp = group_velocity(&post, k, Band::Plus)?;
    let vm = group_velocity(&post, k, Band::Minus)?;
    let (wa, wb) = (ov.ground_weight(), ov.excited_weight());
    let mean = wa * vm + wb * vp;
    Ok(wa * vm * vm + wb * vp * vp - mean * mean)
}

/// Position–energy covariance with `x̂ = i∂_k` applied by central differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceXH {
    /// `⟨H_f x̂⟩ − ⟨x̂⟩⟨H_f⟩`.
    pub covariance: C64,
    /// `½⟨{x̂, H_f}⟩ − ⟨x̂⟩⟨H_f⟩`.
    pub symmetric: C64,
    /// `½⟨[x̂, H_f]⟩ = (i/2)⟨∂_k H_f⟩`; `covariance = symmetric − antisymmetric`.
    pub antisymmetric: C64,
}

pub fn covariance_x_h(proto: &QuenchProtocol, k: f64, t: f64, cfg: &FdConfig) -> Result<CovarianceXH> {
    cfg.validate()?;
    check_k_stencil(&[proto.initial(), proto.post()], k, cfg.dk)?;
    let post = proto.post();
    let i = C64::new(0.0, 1.0);
    let f = evolved(proto);
    let psi = f(k, t)?;
    let h_psi = bloch_hamiltonian(&post, k).apply(&psi);

    let mut plus = f(k + cfg.dk, t)?;
    let mut minus = f(k - cfg.dk, t)?;
    if cfg.gauge_align {
        plus = plus.align_phase_to(&psi);
        minus = minus.align_phase_to(&psi);
    }
    let scale = 0.5 / cfg.dk;
    let x_psi = ((plus - minus) * scale).scale(i);
    let x_h_psi = ((bloch_hamiltonian(&post, k + cfg.dk).apply(&plus)
        - bloch_hamiltonian(&post, k - cfg.dk).apply(&minus))
        * scale)
        .scale(i);

    let x_mean = psi.inner(&x_psi);
    let h_mean = psi.inner(&h_psi);
    let xh = psi.inner(&x_h_psi);
    let hx = h_psi.inner(&x_psi);
    Ok(CovarianceXH {
        covariance: hx - x_mean * h_mean,
        symmetric: (xh + hx) * 0.5 - x_mean * h_mean,
        antisymmetric: (xh - hx) * 0.5,
    })
}

/// Position/velocity moments whose combination reproduces `g_kk(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergMetric {
    /// Variance of the geometric position `x̂_geom = i∂_k − t v̂`.
    pub var_x: f64,
    pub cov_xv: f64,
    pub var_v: f64,
}

impl HeisenbergMetric {
    /// `Var(x̂) + 2t Cov(x̂, v̂) + t² Var(v̂)`.
    pub fn g_kk(&self, t: f64) -> f64 {
        self.var_x + 2.0 * t * self.cov_xv + t * t * self.var_v
    }
}

/// Splits `i∂_k|ψ(t)⟩ = x̂_geom|ψ⟩ + t v̂|ψ⟩` and takes moments in `|ψ(t)⟩`.
pub fn heisenberg_metric(proto: &QuenchProtocol, k: f64, t: f64, cfg: &FdConfig) -> Result<HeisenbergMetric> {
    let (psi, d) = k_derivative(proto, k, t, cfg)?;
    let v = velocity_operator(&proto.post(), k)?;
    let v_psi = v.apply(&psi);
    let x_geom = d.scale(C64::new(0.0, 1.0)) - v_psi * t;

    let x_proj = psi.inner(&x_geom);
    let v_mean = psi.inner(&v_psi).re;
    let var_x = x_geom.norm_sqr() - x_proj.norm_sqr();
    let cov_xv = (x_geom.inner(&v_psi) - x_proj.conj() * v_mean).re;
    let var_v = v_psi.norm_sqr() - v_mean * v_mean;
    Ok(HeisenbergMetric { var_x, cov_xv, var_v })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstancyReport {
    pub min: f64,
    pub max: f64,
    /// `⟨∂_k n|∂_k n⟩ − |⟨n|∂_k n⟩|²` from the fixed-gauge eigenvector.
    pub reference: f64,
    pub constant: bool,
}

impl ConstancyReport {
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

/// Evolves the ground state of `params` under the same Hamiltonian and checks
/// that the numeric `q_kk` does not depend on time.
pub fn no_quench_constancy(params: &ModelParams, k: f64, t_samples: &[f64]) -> Result<ConstancyReport> {
    if t_samples.is_empty() {
        return Err(Error::InvalidParameter { name: "t_samples", value: 0.0 });
    }
    let cfg = FdConfig::with_step(CONSTANCY_STEP);
    let proto = QuenchProtocol::no_quench(*params);
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    for &t in t_samples {
        let q = numeric_q_kk(&proto, k, t, &cfg)?;
        min = min.min(q);
        max = max.max(q);
    }

    let n = |kk: f64| Ok(eigensystem(params, kk)?.u_minus);
    let center = n(k)?;
    let dn = central(&|kk, _| n(kk), &center, (k + cfg.dk, 0.0), (k - cfg.dk, 0.0), cfg.dk, false)?;
    let a = center.inner(&dn);
    let reference = dn.norm_sqr() - a.norm_sqr();

    Ok(ConstancyReport { min, max, reference, constant: max - min < CONSTANCY_TOLERANCE })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn proto(mi: f64, mf: f64) -> QuenchProtocol {
        QuenchProtocol::new(mi, mf, 1.0).unwrap()
    }

    #[test]
    fn config_bounds() {
        assert!(FdConfig::default().validate().is_ok());
        assert!(FdConfig::with_step(1e-8).validate().is_err());
        assert!(FdConfig::with_step(0.1).validate().is_err());
        assert!(matches!(
            numeric_qgt(&proto(0.5, 0.1), 1.0, 1.0, &FdConfig::with_step(0.5)),
            Err(Error::StepOutOfRange { .. })
        ));
    }

    #[test]
    fn stencil_refuses_gap_closing_window() {
        let cfg = FdConfig::default();
        assert!(matches!(numeric_qgt(&proto(1.0, 0.3), PI - 0.03, 1.0, &cfg), Err(Error::DegenerateStencil { .. })));
        assert!(matches!(numeric_qgt(&proto(0.3, 1.0), -PI + 0.01, 1.0, &cfg), Err(Error::DegenerateStencil { .. })));
        assert!(numeric_qgt(&proto(1.0, 0.3), PI - 0.06, 1.0, &cfg).is_ok());
        // a gapped pair may be probed right at the boundary
        assert!(numeric_qgt(&proto(1.5, 0.3), PI, 1.0, &cfg).is_ok());
    }

    #[test]
    fn time_stencil_stays_after_quench() {
        let cfg = FdConfig::default();
        assert!(matches!(numeric_qgt(&proto(0.5, 0.1), 1.0, 0.0, &cfg), Err(Error::StencilCrossesQuench { .. })));
        assert!(numeric_q_kk(&proto(0.5, 0.1), 1.0, 0.0, &cfg).is_ok());
    }

    #[test]
    fn variance_velocity_examples() {
        assert!(variance_velocity(&proto(0.8, 0.8), 1.4).unwrap().abs() < 1e-15);
        assert_eq!(variance_velocity(&proto(0.3, 1.2), 0.0).unwrap(), 0.0);
        let v = variance_velocity(&proto(0.5, 0.1), PI / 2.0).unwrap();
        assert!((v - 1.2548e-3).abs() < 1e-7);
    }

    #[test]
    fn no_quench_requires_samples() {
        let p = ModelParams::new(0.5, 1.0).unwrap();
        assert!(no_quench_constancy(&p, 1.0, &[]).is_err());
    }
}
