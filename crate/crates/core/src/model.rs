//! SSH Bloch Hamiltonian `H(k) = R(k)·σ` with `R = (−J₁ − J₂ cos k, J₂ sin k, 0)`.
//!
//! With `m = J₁/J₂` the spectrum is `E_± = ±J₂ R̃(k)`, where
//! `R̃(k) = √(m² + 1 + 2m cos k)`. Eigenvectors are returned in the fixed gauge
//! `u^± = (R̃, ∓(m + e^{−ik}))ᵀ / (√2 R̃)`, whose first component is the real
//! constant `1/√2`. Every closed form in [`crate::analytic`] assumes this gauge.

use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::spinor::{Matrix2, Spinor};

/// Below this value of `R̃(k)` the two bands are treated as degenerate.
pub const GAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Dimerization `J₁/J₂`.
    pub m: f64,
    /// Inter-cell hopping `J₂`, the energy scale.
    pub j2: f64,
}

impl ModelParams {
    pub fn new(m: f64, j2: f64) -> Result<Self> {
        if !(m.is_finite() && m >= 0.0) {
            return Err(Error::InvalidParameter { name: "m", value: m });
        }
        if !(j2.is_finite() && j2 > 0.0) {
            return Err(Error::InvalidParameter { name: "j2", value: j2 });
        }
        Ok(Self { m, j2 })
    }

    /// Intra-cell hopping `J₁ = m J₂`.
    pub fn j1(&self) -> f64 {
        self.m * self.j2
    }

    /// True when the gap closes somewhere in the zone (at `k = π`).
    pub fn is_gapless(&self) -> bool {
        (1.0 - self.m).abs() <= GAP_TOLERANCE
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub rx: f64,
    pub ry: f64,
    pub rz: f64,
}

impl BlochVector {
    pub fn norm(&self) -> f64 {
        (self.rx * self.rx + self.ry * self.ry + self.rz * self.rz).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Band {
    Minus,
    Plus,
}

impl Band {
    fn sign(self) -> f64 {
        match self {
            Band::Minus => -1.0,
            Band::Plus => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub e_minus: f64,
    pub e_plus: f64,
    pub u_minus: Spinor,
    pub u_plus: Spinor,
}

impl EigenSystem {
    pub fn energy(&self, band: Band) -> f64 {
        match band {
            Band::Minus => self.e_minus,
            Band::Plus => self.e_plus,
        }
    }

    pub fn state(&self, band: Band) -> Spinor {
        match band {
            Band::Minus => self.u_minus,
            Band::Plus => self.u_plus,
        }
    }
}

/// Map any real `k` into `(−π, π]`.
pub fn reduce_momentum(k: f64) -> f64 {
    if k > -PI && k <= PI {
        return k;
    }
    let mut r = k - TAU * (k / TAU).round();
    if r <= -PI {
        r += TAU;
    } else if r > PI {
        r -= TAU;
    }
    r
}

/// `R̃(k) = √(m² + 1 + 2m cos k)`, evaluated as `√((m − 1)² + 4m cos²(k/2))`
/// to keep relative accuracy near the gap-closing point.
pub fn r_tilde(params: &ModelParams, k: f64) -> f64 {
    let k = reduce_momentum(k);
    let m = params.m;
    let c = (0.5 * k).cos();
    ((m - 1.0) * (m - 1.0) + 4.0 * m * c * c).sqrt()
}

pub fn bloch_vector(params: &ModelParams, k: f64) -> BlochVector {
    let k = reduce_momentum(k);
    BlochVector {
        rx: -params.j1() - params.j2 * k.cos(),
        ry: params.j2 * k.sin(),
        rz: 0.0,
    }
}

/// `H(k) = R_x σ_x + R_y σ_y + R_z σ_z`.
pub fn bloch_hamiltonian(params: &ModelParams, k: f64) -> Matrix2 {
    let r = bloch_vector(params, k);
    Matrix2::new(
        C64::new(r.rz, 0.0),
        C64::new(r.rx, -r.ry),
        C64::new(r.rx, r.ry),
        C64::new(-r.rz, 0.0),
    )
}

/// Band-dependent half of the eigenvector: `(m + e^{−ik}) / (√2 R̃)`.
fn lower_component(params: &ModelParams, k: f64, rt: f64) -> C64 {
    C64::new(params.m + k.cos(), -k.sin()) * (FRAC_1_SQRT_2 / rt)
}

pub(crate) fn checked_r_tilde(params: &ModelParams, k: f64) -> Result<f64> {
    let rt = r_tilde(params, k);
    if rt <= GAP_TOLERANCE {
        Err(Error::GapClosed { m: params.m, k })
    } else {
        Ok(rt)
    }
}

pub fn eigensystem(params: &ModelParams, k: f64) -> Result<EigenSystem> {
    let k = reduce_momentum(k);
    let rt = checked_r_tilde(params, k)?;
    let lower = lower_component(params, k, rt);
    let top = C64::new(FRAC_1_SQRT_2, 0.0);
    let e = params.j2 * rt;
    Ok(EigenSystem {
        e_minus: -e,
        e_plus: e,
        u_minus: Spinor::new(top, lower),
        u_plus: Spinor::new(top, -lower),
    })
}

/// Ground-band Berry connection `i⟨u⁻|∂_k u⁻⟩ = (m cos k + 1) / (2 R̃²)` in the
/// fixed gauge. Near `k = π` its sign is `sign(1 − m)`.
pub fn berry_connection(params: &ModelParams, k: f64) -> Result<f64> {
    let k = reduce_momentum(k);
    let rt = checked_r_tilde(params, k)?;
    Ok((params.m * k.cos() + 1.0) / (2.0 * rt * rt))
}

/// Band slope `v^± = ∂_k E_± = ∓J₂ m sin k / R̃`.
pub fn group_velocity(params: &ModelParams, k: f64, band: Band) -> Result<f64> {
    let k = reduce_momentum(k);
    let rt = checked_r_tilde(params, k)?;
    Ok(-band.sign() * params.j2 * params.m * k.sin() / rt)
}
