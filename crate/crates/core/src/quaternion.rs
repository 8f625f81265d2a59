//! Real quaternions in scalar-vector form.
//!
//! The basis is `{1, e1, e2, e3}` with `e1 e2 = e3` (cyclic) and `e_k^2 = -1`.
//! Under [`Quaternion::embed`] the basis maps to the 2x2 complex matrices
//! `1 -> I`, `e_k -> (-1)^(k+1) i sigma_k`, which is the realization used for
//! determinants, traces and exponentials further up the stack.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How far a norm may drift from 1 before a unit constructor refuses to
/// renormalize.
pub const UNIT_TOLERANCE: f64 = 1e-9;

/// Largest allowed deviation of a 2x2 complex matrix from the quaternion
/// image, relative to `max(1, |m|_max)`.
pub const EXTRACT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Quaternion {
    pub s: f64,
    pub v: [f64; 3],
}

pub(crate) fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn cross3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub(crate) fn scale3(a: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub(crate) fn add3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub(crate) fn sub3(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm3(a: [f64; 3]) -> f64 {
    dot3(a, a).sqrt()
}

impl Quaternion {
    pub const ZERO: Self = Self { s: 0.0, v: [0.0; 3] };
    pub const ONE: Self = Self { s: 1.0, v: [0.0; 3] };

    pub const fn new(s: f64, v: [f64; 3]) -> Self {
        Self { s, v }
    }

    pub const fn scalar(s: f64) -> Self {
        Self { s, v: [0.0; 3] }
    }

    pub const fn pure(v: [f64; 3]) -> Self {
        Self { s: 0.0, v }
    }

    /// Basis unit `e_k`, `k` in `1..=3`.
    ///
    /// # Panics
    /// If `k` is outside `1..=3`.
    pub fn basis(k: usize) -> Self {
        assert!((1..=3).contains(&k), "quaternion basis index {k} not in 1..=3");
        let mut v = [0.0; 3];
        v[k - 1] = 1.0;
        Self::pure(v)
    }

    pub fn conj(self) -> Self {
        Self {
            s: self.s,
            v: [-self.v[0], -self.v[1], -self.v[2]],
        }
    }

    pub fn norm_sqr(self) -> f64 {
        self.s * self.s + dot3(self.v, self.v)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Self {
            s: self.s * k,
            v: scale3(self.v, k),
        }
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.v.iter().fold(self.s.abs(), |m, x| m.max(x.abs()))
    }

    /// Max-norm distance.
    pub fn dist(self, other: Self) -> f64 {
        (self - other).max_abs()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.s, self.v[0], self.v[1], self.v[2]]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], [a[1], a[2], a[3]])
    }

    /// The 2x2 complex matrix `s I + sum_k v_k E(e_k)`.
    pub fn embed(self) -> Matrix2<Complex64> {
        let [v1, v2, v3] = self.v;
        Matrix2::new(
            Complex64::new(self.s, v3),
            Complex64::new(-v2, v1),
            Complex64::new(v2, v1),
            Complex64::new(self.s, -v3),
        )
    }

    /// Inverse of [`embed`](Self::embed); rejects matrices that are not of
    /// the form `[[p, -conj(q)], [q, conj(p)]]`.
    pub fn extract(m: &Matrix2<Complex64>) -> Result<Self> {
        let q = Self {
            s: 0.5 * (m[(0, 0)].re + m[(1, 1)].re),
            v: [
                0.5 * (m[(0, 1)].im + m[(1, 0)].im),
                0.5 * (m[(1, 0)].re - m[(0, 1)].re),
                0.5 * (m[(0, 0)].im - m[(1, 1)].im),
            ],
        };
        let scale = m.iter().fold(1.0_f64, |acc, z| acc.max(z.norm()));
        let defect = (q.embed() - m)
            .iter()
            .fold(0.0_f64, |acc, z| acc.max(z.norm()));
        if defect > EXTRACT_TOLERANCE * scale {
            return Err(Error::NotQuaternion { defect });
        }
        Ok(q)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            s: self.s + rhs.s,
            v: add3(self.v, rhs.v),
        }
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            s: self.s - rhs.s,
            v: sub3(self.v, rhs.v),
        }
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul for Quaternion {
    type Output = Self;
    // (s1 s2 - v1.v2, s1 v2 + s2 v1 + v1 x v2)
    fn mul(self, rhs: Self) -> Self {
        Self {
            s: self.s * rhs.s - dot3(self.v, rhs.v),
            v: add3(
                add3(scale3(rhs.v, self.s), scale3(self.v, rhs.s)),
                cross3(self.v, rhs.v),
            ),
        }
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

/// A quaternion of norm one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Quaternion", into = "Quaternion")]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: Self = Self(Quaternion::ONE);

    /// Normalizes `q` if its norm is within [`UNIT_TOLERANCE`] of one.
    pub fn new(q: Quaternion) -> Result<Self> {
        let norm = q.norm();
        if !norm.is_finite() || (norm - 1.0).abs() >= UNIT_TOLERANCE {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(q.scale(1.0 / norm)))
    }

    /// Normalizes any nonzero finite quaternion.
    pub fn normalize(q: Quaternion) -> Result<Self> {
        let norm = q.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self(q.scale(1.0 / norm)))
    }

    /// `(cos(angle/2), sin(angle/2) axis)`; `axis` is normalized.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Result<Self> {
        let n = norm3(axis);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain(format!("rotation axis {axis:?} has no direction")));
        }
        let (sin, cos) = (0.5 * angle).sin_cos();
        Ok(Self(Quaternion::new(cos, scale3(axis, sin / n))))
    }

    /// Unit pure vector `(0, v/|v|)`.
    pub fn pure_direction(v: [f64; 3]) -> Result<Self> {
        Self::normalize(Quaternion::pure(v))
    }

    pub fn basis(k: usize) -> Self {
        Self(Quaternion::basis(k))
    }

    pub fn get(self) -> Quaternion {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    pub fn is_pure(self, tol: f64) -> bool {
        self.0.s.abs() <= tol
    }

    /// Product of unit quaternions, renormalized.
    pub fn compose(self, rhs: Self) -> Self {
        let q = self.0 * rhs.0;
        Self(q.scale(1.0 / q.norm()))
    }

    /// Canonical square root.
    ///
    /// Writing `z = (cos t, sin t n)` with `t` in `[0, pi]`, returns
    /// `(cos t/2, sin t/2 n)`, so the result always has a non-negative scalar
    /// part. For `z = -1` the axis is undefined and `e1` is returned.
    pub fn sqrt(self) -> Self {
        let Quaternion { s, v } = self.0;
        let vn = norm3(v);
        if vn <= f64::MIN_POSITIVE {
            return if s >= 0.0 {
                Self::IDENTITY
            } else {
                Self::basis(1)
            };
        }
        let half = 0.5 * vn.atan2(s);
        let (sin, cos) = half.sin_cos();
        Self(Quaternion::new(cos, scale3(v, sin / vn)))
    }

    /// Rotation angle and unit axis, `None` for the axis when `sin(angle/2)`
    /// vanishes.
    pub fn angle_axis(self) -> (f64, Option<[f64; 3]>) {
        let vn = norm3(self.0.v);
        let angle = 2.0 * vn.atan2(self.0.s);
        if vn <= f64::MIN_POSITIVE {
            (angle, None)
        } else {
            (angle, Some(scale3(self.0.v, 1.0 / vn)))
        }
    }
}

impl From<UnitQuaternion> for Quaternion {
    fn from(u: UnitQuaternion) -> Self {
        u.0
    }
}

impl TryFrom<Quaternion> for UnitQuaternion {
    type Error = Error;
    fn try_from(q: Quaternion) -> Result<Self> {
        Self::new(q)
    }
}

impl Mul for UnitQuaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Self) -> Quaternion {
        self.0 * rhs.0
    }
}

/// Free-function form of [`UnitQuaternion::sqrt`].
pub fn sqrt_unit(z: UnitQuaternion) -> UnitQuaternion {
    z.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn close(a: Quaternion, b: Quaternion, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    fn e(k: usize) -> Quaternion {
        Quaternion::basis(k)
    }

    #[test]
    fn identity_is_neutral() {
        let q = Quaternion::new(0.3, [-1.0, 2.0, 0.5]);
        assert_eq!(Quaternion::ONE * q, q);
        assert_eq!(q * Quaternion::ONE, q);
    }

    #[test]
    fn basis_products_follow_the_matrix_embedding() {
        // Oracle: products of the 2x2 complex images.
        for i in 1..=3 {
            for j in 1..=3 {
                let via_matrix = Quaternion::extract(&(e(i).embed() * e(j).embed())).unwrap();
                assert_eq!(e(i) * e(j), via_matrix, "e{i} e{j}");
            }
        }
        assert_eq!(e(1) * e(1), Quaternion::scalar(-1.0));
        assert_eq!(e(1) * e(2), e(3));
        assert_eq!(e(2) * e(3), e(1));
        assert_eq!(e(3) * e(1), e(2));
    }

    #[test]
    fn embedding_matches_pauli_convention() {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let sigma1 = Matrix2::new(zero, one, one, zero);
        let sigma2 = Matrix2::new(zero, -i, i, zero);
        let sigma3 = Matrix2::new(one, zero, zero, -one);
        assert_eq!(Quaternion::ONE.embed(), Matrix2::identity());
        assert_eq!(e(1).embed(), sigma1 * i);
        assert_eq!(e(2).embed(), sigma2 * (-i));
        assert_eq!(e(3).embed(), sigma3 * i);
    }

    #[test]
    fn conjugation() {
        assert_eq!(Quaternion::ONE.conj(), Quaternion::ONE);
        assert_eq!(e(2).conj(), -e(2));
        let q = Quaternion::new(0.7, [1.0, -2.0, 3.5]);
        let n = q * q.conj();
        assert!(close(n, Quaternion::scalar(q.norm_sqr()), 1e-14));
        assert_eq!(q.conj().conj(), q);
    }

    #[test]
    fn extract_rejects_non_quaternion_matrices() {
        let mut m = e(1).embed();
        m[(1, 1)] += Complex64::new(1e-3, 0.0);
        assert!(matches!(Quaternion::extract(&m), Err(Error::NotQuaternion { .. })));
    }

    #[test]
    fn embedding_round_trip_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let q = Quaternion::from_array(std::array::from_fn(|_| rng.random_range(-10.0..10.0)));
            let back = Quaternion::extract(&q.embed()).unwrap();
            assert!(close(back, q, 1e-14 * q.max_abs().max(1.0)));
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(UnitQuaternion::IDENTITY.sqrt(), UnitQuaternion::IDENTITY);

        let r = UnitQuaternion::basis(1).sqrt().get();
        let h = std::f64::consts::FRAC_PI_4;
        assert!(close(r, Quaternion::new(h.cos(), [h.sin(), 0.0, 0.0]), 1e-15));
        // Square via the embedding, independent of Quaternion::mul.
        let sq = Quaternion::extract(&(r.embed() * r.embed())).unwrap();
        assert!(close(sq, e(1), 1e-15));

        let minus_one = UnitQuaternion::new(Quaternion::scalar(-1.0)).unwrap();
        assert_eq!(minus_one.sqrt(), UnitQuaternion::basis(1));
        assert_eq!(e(1) * e(1), Quaternion::scalar(-1.0));
    }

    #[test]
    fn sqrt_squares_back_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut worst = 0.0_f64;
        for _ in 0..1000 {
            let q = Quaternion::from_array(std::array::from_fn(|_| rng.random_range(-1.0..1.0)));
            let z = UnitQuaternion::normalize(q).unwrap();
            let w = z.sqrt();
            assert!(w.get().s >= 0.0);
            worst = worst.max(((w * w) - z.get()).max_abs());
        }
        assert!(worst < 1e-12, "worst sqrt defect {worst:e}");
    }

    #[test]
    fn sqrt_near_minus_one_stays_accurate() {
        let z = UnitQuaternion::normalize(Quaternion::new(-1.0, [1e-9, -2e-9, 0.0])).unwrap();
        let w = z.sqrt();
        assert!(((w * w) - z.get()).max_abs() < 1e-15);
    }

    #[test]
    fn unit_constructor_tolerance() {
        let q = Quaternion::new(1.0 + 5e-10, [0.0; 3]);
        assert_eq!(UnitQuaternion::new(q).unwrap().get(), Quaternion::ONE);
        let q = Quaternion::new(1.0 + 2e-9, [0.0; 3]);
        assert!(matches!(UnitQuaternion::new(q), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn json_form() {
        let q = Quaternion::new(0.5, [1.0, 2.0, 3.0]);
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(text, r#"{"s":0.5,"v":[1.0,2.0,3.0]}"#);
        assert!(serde_json::from_str::<UnitQuaternion>(&text).is_err());
        let u: UnitQuaternion = serde_json::from_str(r#"{"s":0.0,"v":[0.0,1.0,0.0]}"#).unwrap();
        assert_eq!(u, UnitQuaternion::basis(2));
    }

    fn quat() -> impl Strategy<Value = Quaternion> {
        prop::array::uniform4(-5.0..5.0f64).prop_map(Quaternion::from_array)
    }

    proptest! {
        #[test]
        fn associative(a in quat(), b in quat(), c in quat()) {
            let l = (a * b) * c;
            let r = a * (b * c);
            let scale = (a.norm() * b.norm() * c.norm()).max(1.0);
            prop_assert!((l - r).max_abs() <= 1e-13 * scale);
        }

        #[test]
        fn norm_is_multiplicative(a in quat(), b in quat()) {
            let lhs = (a * b).norm();
            let rhs = a.norm() * b.norm();
            prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.max(f64::MIN_POSITIVE));
        }

        #[test]
        fn embedding_is_a_homomorphism(a in quat(), b in quat()) {
            let lhs = (a * b).embed();
            let rhs = a.embed() * b.embed();
            let defect = (lhs - rhs).iter().fold(0.0_f64, |m, z| m.max(z.norm()));
            prop_assert!(defect <= 1e-13 * (a.norm() * b.norm()).max(1.0));
        }

        #[test]
        fn conj_reverses_products(a in quat(), b in quat()) {
            let scale = (a.norm() * b.norm()).max(1.0);
            prop_assert!(((a * b).conj() - b.conj() * a.conj()).max_abs() <= 1e-14 * scale);
        }
    }
}
