//! 2x2 matrices with quaternion entries.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::quaternion::Quaternion;

/// Block matrix `[[a, b], [c, d]]` over the quaternions.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct QMat2 {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub d: Quaternion,
}

impl QMat2 {
    pub const ZERO: Self = Self::new(Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO, Quaternion::ZERO);
    pub const IDENTITY: Self = Self::diag(Quaternion::ONE, Quaternion::ONE);

    pub const fn new(a: Quaternion, b: Quaternion, c: Quaternion, d: Quaternion) -> Self {
        Self { a, b, c, d }
    }

    pub const fn diag(a: Quaternion, d: Quaternion) -> Self {
        Self::new(a, Quaternion::ZERO, Quaternion::ZERO, d)
    }

    pub const fn offdiag(b: Quaternion, c: Quaternion) -> Self {
        Self::new(Quaternion::ZERO, b, c, Quaternion::ZERO)
    }

    /// Transpose of the entrywise quaternionic conjugate.
    pub fn dagger(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    pub fn blocks(&self) -> [Quaternion; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Largest absolute value among the 16 real components.
    pub fn max_abs(&self) -> f64 {
        self.blocks().iter().fold(0.0, |m, q| m.max(q.max_abs()))
    }

    pub fn dist_max(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// The 4x4 complex matrix built from the 2x2 images of each block.
    pub fn embed(&self) -> Matrix4<Complex64> {
        let mut m = Matrix4::zeros();
        for (block, (r, c)) in self.blocks().iter().zip([(0, 0), (0, 2), (2, 0), (2, 2)]) {
            m.fixed_view_mut::<2, 2>(r, c).copy_from(&block.embed());
        }
        m
    }

    /// Inverse of [`embed`](Self::embed); every 2x2 block must lie in the
    /// quaternion image.
    pub fn extract(m: &Matrix4<Complex64>) -> Result<Self> {
        let block = |r: usize, c: usize| -> Result<Quaternion> {
            let sub: Matrix2<Complex64> = m.fixed_view::<2, 2>(r, c).into_owned();
            Quaternion::extract(&sub)
        };
        Ok(Self::new(block(0, 0)?, block(0, 2)?, block(2, 0)?, block(2, 2)?))
    }

    /// Determinant of the 4x4 complex embedding. Real and non-negative for
    /// every quaternionic matrix.
    pub fn det(&self) -> Complex64 {
        self.embed().determinant()
    }

    /// Trace of the 4x4 complex embedding, `2 (Re a + Re d)`.
    pub fn trace(&self) -> Complex64 {
        self.embed().trace()
    }
}

impl Add for QMat2 {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(self.a + r.a, self.b + r.b, self.c + r.c, self.d + r.d)
    }
}

impl Sub for QMat2 {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(self.a - r.a, self.b - r.b, self.c - r.c, self.d - r.d)
    }
}

impl Neg for QMat2 {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for QMat2 {
    type Output = Self;
    fn mul(self, r: Self) -> Self {
        Self::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl Mul<f64> for QMat2 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}
