//! Two-component complex vectors and 2×2 matrices.

use core::ops::{Add, Mul, Sub};

use num_complex::Complex64 as C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Cell-periodic Bloch state at fixed `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor {
    pub c0: C64,
    pub c1: C64,
}

impl Spinor {
    pub const fn new(c0: C64, c1: C64) -> Self {
        Self { c0, c1 }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Spinor) -> C64 {
        self.c0.conj() * other.c0 + self.c1.conj() * other.c1
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c0.norm_sqr() + self.c1.norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, z: C64) -> Spinor {
        Spinor::new(self.c0 * z, self.c1 * z)
    }

    /// Multiply by the unit phase that makes `⟨reference|self⟩` real and positive.
    ///
    /// A vanishing overlap leaves the spinor unchanged.
    pub fn align_phase_to(&self, reference: &Spinor) -> Spinor {
        let overlap = reference.inner(self);
        let r = overlap.norm();
        if r == 0.0 {
            *self
        } else {
            self.scale(overlap.conj() / r)
        }
    }

    /// Overlap modulus `|⟨self|other⟩|`, the fidelity of two normalized rays.
    pub fn fidelity(&self, other: &Spinor) -> f64 {
        self.inner(other).norm()
    }
}

impl Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.c0 + rhs.c0, self.c1 + rhs.c1)
    }
}

impl Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor::new(self.c0 - rhs.c0, self.c1 - rhs.c1)
    }
}

impl Mul<f64> for Spinor {
    type Output = Spinor;
    fn mul(self, rhs: f64) -> Spinor {
        Spinor::new(self.c0 * rhs, self.c1 * rhs)
    }
}

/// Row-major 2×2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub m: [[C64; 2]; 2],
}

impl Matrix2 {
    pub const fn new(m00: C64, m01: C64, m10: C64, m11: C64) -> Self {
        Self { m: [[m00, m01], [m10, m11]] }
    }

    /// Projector `|s⟩⟨s|`.
    pub fn outer(s: &Spinor) -> Self {
        Self::new(
            s.c0 * s.c0.conj(),
            s.c0 * s.c1.conj(),
            s.c1 * s.c0.conj(),
            s.c1 * s.c1.conj(),
        )
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        Spinor::new(
            self.m[0][0] * s.c0 + self.m[0][1] * s.c1,
            self.m[1][0] * s.c0 + self.m[1][1] * s.c1,
        )
    }

    pub fn scale(&self, a: f64) -> Self {
        let m = self.m;
        Self::new(m[0][0] * a, m[0][1] * a, m[1][0] * a, m[1][1] * a)
    }

    /// `⟨s|M|s⟩`.
    pub fn expectation(&self, s: &Spinor) -> C64 {
        s.inner(&self.apply(s))
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;
    fn add(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (self.m, rhs.m);
        Matrix2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;
    fn sub(self, rhs: Matrix2) -> Matrix2 {
        self + rhs.scale(-1.0)
    }
}
