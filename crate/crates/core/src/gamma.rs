//! Gamma matrices of the 1+4 Clifford algebra, the slash isomorphism between
//! ambient vectors and 4x4 matrices, and the de Sitter hyperboloid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMat2;
use crate::quaternion::Quaternion;

/// Ambient Minkowski metric `diag(1, -1, -1, -1, -1)`.
pub const ETA: [f64; 5] = [1.0, -1.0, -1.0, -1.0, -1.0];

/// Tolerance of [`unslash`] relative to `max(1, |M|_max)`.
pub const SLASH_TOLERANCE: f64 = 1e-10;

/// Relative tolerance of the hyperboloid constraint, in units of `R^2`.
pub const HYPERBOLOID_TOLERANCE: f64 = 1e-9;

/// A point `(x0, x1, x2, x3, x4)` of the 1+4 Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AmbientVector {
    pub x: [f64; 5],
}

impl AmbientVector {
    pub const fn new(x: [f64; 5]) -> Self {
        Self { x }
    }

    /// `eta_{ab} x^a x^b`.
    pub fn minkowski_square(&self) -> f64 {
        let [t, a, b, c, d] = self.x;
        t * t - a * a - b * b - c * c - d * d
    }

    /// The quaternion `(x4, x1, x2, x3)` sitting in the off-diagonal blocks of
    /// the slashed matrix.
    pub fn quaternion_part(&self) -> Quaternion {
        Quaternion::new(self.x[4], [self.x[1], self.x[2], self.x[3]])
    }

    pub fn from_time_and_quaternion(x0: f64, q: Quaternion) -> Self {
        Self::new([x0, q.v[0], q.v[1], q.v[2], q.s])
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.x
            .iter()
            .zip(other.x.iter())
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

/// A point on the hyperboloid `x^2 = -R^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DSPointRepr", into = "DSPointRepr")]
pub struct DSPoint {
    x: AmbientVector,
    radius: f64,
}

#[derive(Serialize, Deserialize)]
struct DSPointRepr {
    x: [f64; 5],
    #[serde(rename = "R")]
    radius: f64,
}

impl TryFrom<DSPointRepr> for DSPoint {
    type Error = Error;
    fn try_from(r: DSPointRepr) -> Result<Self> {
        DSPoint::new(AmbientVector::new(r.x), r.radius)
    }
}

impl From<DSPoint> for DSPointRepr {
    fn from(p: DSPoint) -> Self {
        Self {
            x: p.x.x,
            radius: p.radius,
        }
    }
}

impl DSPoint {
    pub fn new(x: AmbientVector, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::BadRadius(radius));
        }
        let defect = (x.minkowski_square() + radius * radius).abs();
        if defect.is_nan() || defect > HYPERBOLOID_TOLERANCE * radius * radius {
            return Err(Error::OffHyperboloid { defect, radius });
        }
        Ok(Self { x, radius })
    }

    /// The origin `(0, 0, 0, 0, R)`.
    pub fn origin(radius: f64) -> Result<Self> {
        Self::new(AmbientVector::new([0.0, 0.0, 0.0, 0.0, radius]), radius)
    }

    /// Point with time coordinate `x0` and spatial quaternion direction `z`
    /// (normalized here), i.e. `(x0, sqrt(R^2 + x0^2) z)`.
    pub fn from_time_and_direction(x0: f64, z: Quaternion, radius: f64) -> Result<Self> {
        let n = z.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::Domain("direction quaternion must be nonzero".into()));
        }
        let r = radius.hypot(x0);
        Self::new(AmbientVector::from_time_and_quaternion(x0, z.scale(r / n)), radius)
    }

    pub fn ambient(&self) -> AmbientVector {
        self.x
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// `|x^2 + R^2| / R^2`.
    pub fn relative_defect(&self) -> f64 {
        (self.x.minkowski_square() + self.radius * self.radius).abs() / (self.radius * self.radius)
    }
}

/// Upper-index gamma matrix `gamma^alpha`.
pub fn gamma(alpha: usize) -> Result<QMat2> {
    let one = Quaternion::ONE;
    Ok(match alpha {
        0 => QMat2::diag(one, -one),
        1..=3 => {
            let e = Quaternion::basis(alpha);
            QMat2::offdiag(e, e)
        }
        4 => QMat2::offdiag(one, -one),
        _ => return Err(Error::GammaIndex(alpha)),
    })
}

/// Lower-index `gamma_alpha = eta_{alpha alpha} gamma^alpha`.
pub fn gamma_lower(alpha: usize) -> Result<QMat2> {
    Ok(gamma(alpha)?.scale(ETA[alpha]))
}

/// `gamma^a gamma^b + gamma^b gamma^a`.
pub fn anticommutator(alpha: usize, beta: usize) -> Result<QMat2> {
    let (ga, gb) = (gamma(alpha)?, gamma(beta)?);
    Ok(ga * gb + gb * ga)
}

/// Checks `dagger(gamma^a) = gamma^0 gamma^a gamma^0` exactly.
pub fn dagger_identity_check(alpha: usize) -> Result<bool> {
    let g0 = gamma(0)?;
    let ga = gamma(alpha)?;
    Ok(ga.dagger() == g0 * ga * g0)
}

/// `x^alpha gamma_alpha = [[x0, -x], [conj(x), -x0]]` with the quaternion
/// `x = (x4, x1, x2, x3)`.
pub fn slash(x: &AmbientVector) -> QMat2 {
    let q = x.quaternion_part();
    let t = Quaternion::scalar(x.x[0]);
    QMat2::new(t, -q, q.conj(), -t)
}

/// Inverse of [`slash`]: `x^alpha = tr(gamma^alpha M) / 4` with the trace
/// taken in the 4x4 complex embedding.
pub fn unslash(m: &QMat2) -> Result<AmbientVector> {
    let scale = m.max_abs().max(1.0);
    let mut x = [0.0; 5];
    for (alpha, slot) in x.iter_mut().enumerate() {
        let e = (gamma(alpha)? * *m).embed();
        // Pairwise so that integer-weighted sums stay exact.
        let tr = (e[(0, 0)] + e[(1, 1)]) + (e[(2, 2)] + e[(3, 3)]);
        if tr.im.abs() > 1e-12 * scale {
            return Err(Error::NotSlashed { defect: tr.im.abs() });
        }
        *slot = 0.25 * tr.re;
    }
    let x = AmbientVector::new(x);
    let defect = slash(&x).dist_max(m);
    if defect > SLASH_TOLERANCE * scale {
        return Err(Error::NotSlashed { defect });
    }
    Ok(x)
}
