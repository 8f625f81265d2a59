//! Elements of Sp(2,2): membership certification, the four factor subgroups,
//! the action on the hyperboloid and the space-time-Lorentz decomposition.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::gamma::{gamma, slash, unslash, AmbientVector, DSPoint};
use crate::matrix::QMat2;
use crate::quaternion::{Quaternion, UnitQuaternion, UNIT_TOLERANCE};

/// Default membership tolerance for both defects.
pub const MEMBERSHIP_TOLERANCE: f64 = 1e-10;

/// Absolute threshold (on unit-scale blocks) for the Lorentz-factor checks
/// inside [`decompose`].
pub const STABILIZER_TOLERANCE: f64 = 1e-9;

/// Below this `sinh(phi/2)` the boost is dropped and its direction fixed to
/// `e1`.
pub const BOOST_EPS: f64 = 1e-12;

/// Residuals of the two defining conditions `det g = 1` and
/// `dagger(g) gamma0 g = gamma0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub det_defect: f64,
    pub unitarity_defect: f64,
    pub tol: f64,
    pub pass: bool,
}

impl MembershipReport {
    pub fn max_defect(&self) -> f64 {
        self.det_defect.max(self.unitarity_defect)
    }
}

pub fn is_member(m: &QMat2, tol: f64) -> MembershipReport {
    let det_defect = (m.det() - 1.0).norm();
    let g0 = gamma0();
    let unitarity_defect = (m.dagger() * g0 * *m).dist_max(&g0);
    MembershipReport {
        det_defect,
        unitarity_defect,
        tol,
        pass: det_defect <= tol && unitarity_defect <= tol,
    }
}

fn gamma0() -> QMat2 {
    QMat2::diag(Quaternion::ONE, -Quaternion::ONE)
}

/// An element of Sp(2,2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupElementRepr", into = "GroupElementRepr")]
pub struct GroupElement {
    m: QMat2,
}

#[derive(Serialize, Deserialize)]
struct GroupElementRepr {
    blocks: QMat2,
}

impl TryFrom<GroupElementRepr> for GroupElement {
    type Error = Error;
    fn try_from(r: GroupElementRepr) -> Result<Self> {
        GroupElement::new(r.blocks, MEMBERSHIP_TOLERANCE)
    }
}

impl From<GroupElement> for GroupElementRepr {
    fn from(g: GroupElement) -> Self {
        Self { blocks: g.m }
    }
}

/// Unvalidated `{"blocks": ...}` wrapper, for inputs whose membership is
/// certified separately (e.g. with a looser tolerance).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlocksJson {
    pub blocks: QMat2,
}

impl GroupElement {
    pub const IDENTITY: Self = Self { m: QMat2::IDENTITY };

    pub fn new(m: QMat2, tol: f64) -> Result<Self> {
        let report = is_member(&m, tol);
        if !report.pass {
            return Err(Error::NotMember {
                det_defect: report.det_defect,
                unitarity_defect: report.unitarity_defect,
            });
        }
        Ok(Self { m })
    }

    /// Wraps a matrix known to be a member by construction.
    pub(crate) fn from_trusted(m: QMat2) -> Self {
        Self { m }
    }

    /// `gamma^0`, the only gamma matrix in the group.
    pub fn gamma0() -> Self {
        Self { m: gamma0() }
    }

    pub fn matrix(&self) -> &QMat2 {
        &self.m
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self { m: self.m * other.m }
    }

    /// `gamma0 dagger(g) gamma0`.
    pub fn inverse(&self) -> Self {
        let QMat2 { a, b, c, d } = self.m;
        Self {
            m: QMat2::new(a.conj(), -c.conj(), -b.conj(), d.conj()),
        }
    }

    pub fn membership(&self, tol: f64) -> MembershipReport {
        is_member(&self.m, tol)
    }

    /// `x' = unslash(g slash(x) g^-1)`.
    pub fn act(&self, x: &DSPoint) -> Result<DSPoint> {
        let moved = self.m * slash(&x.ambient()) * self.inverse().m;
        DSPoint::new(unslash(&moved)?, x.radius())
    }

    /// `g X g^-1`.
    pub fn conjugate(&self, x: &QMat2) -> QMat2 {
        self.m * *x * self.inverse().m
    }
}

impl std::ops::Mul for GroupElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.compose(&rhs)
    }
}

/// Space translation `diag(w, conj(w))`.
pub fn t_space_translation(w: UnitQuaternion) -> GroupElement {
    let w = w.get();
    GroupElement::from_trusted(QMat2::diag(w, w.conj()))
}

/// Time translation with `cosh(psi/2)` on the diagonal and `sinh(psi/2)` off it.
pub fn t_time_translation(psi: f64) -> Result<GroupElement> {
    if !psi.is_finite() {
        return Err(Error::Domain(format!("time translation parameter {psi}")));
    }
    let (ch, sh) = ((0.5 * psi).cosh(), (0.5 * psi).sinh());
    let (ch, sh) = (Quaternion::scalar(ch), Quaternion::scalar(sh));
    Ok(GroupElement::from_trusted(QMat2::new(ch, sh, sh, ch)))
}

/// Space rotation `diag(v, v)`.
pub fn t_space_rotation(v: UnitQuaternion) -> GroupElement {
    let v = v.get();
    GroupElement::from_trusted(QMat2::diag(v, v))
}

/// Boost of rapidity `phi` along the unit pure vector `u`.
pub fn t_boost(phi: f64, u: UnitQuaternion) -> Result<GroupElement> {
    if !phi.is_finite() {
        return Err(Error::Domain(format!("rapidity {phi}")));
    }
    let u = pure_unit(u)?;
    let (ch, sh) = ((0.5 * phi).cosh(), (0.5 * phi).sinh());
    let ch = Quaternion::scalar(ch);
    Ok(GroupElement::from_trusted(QMat2::new(ch, u.get() * sh, -(u.get() * sh), ch)))
}

fn pure_unit(u: UnitQuaternion) -> Result<UnitQuaternion> {
    if !u.is_pure(UNIT_TOLERANCE) {
        return Err(Error::NotUnitPureVector(u.get().to_array()));
    }
    UnitQuaternion::pure_direction(u.get().v)
}

/// Parameters of `g = T_st(w) T_tt(psi) T_sr(v) T_bt(phi, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecompositionFactors {
    pub w: UnitQuaternion,
    pub psi: f64,
    pub v: UnitQuaternion,
    pub phi: f64,
    pub u: UnitQuaternion,
}

impl DecompositionFactors {
    pub fn reconstruct(&self) -> Result<GroupElement> {
        Ok(t_space_translation(self.w)
            * t_time_translation(self.psi)?
            * t_space_rotation(self.v)
            * t_boost(self.phi, self.u)?)
    }

    /// Lorentz part `T_sr(v) T_bt(phi, u)`, which fixes the origin.
    pub fn lorentz(&self) -> Result<GroupElement> {
        Ok(t_space_rotation(self.v) * t_boost(self.phi, self.u)?)
    }

    /// Space-time part `T_st(w) T_tt(psi)`, which carries the origin to
    /// `act(g, origin)`.
    pub fn translation(&self) -> Result<GroupElement> {
        Ok(t_space_translation(self.w) * t_time_translation(self.psi)?)
    }
}

/// Canonical space-time-Lorentz factorization.
///
/// 1. `x = g . origin` fixes `psi = asinh(x0/R)` and `z = w^2` from the
///    spatial quaternion; `w` is the canonical square root.
/// 2. `L = T_tt(-psi) T_st(conj w) g` must fix the origin, i.e. have blocks
///    `a = d`, `b = -c`.
/// 3. `L = T_sr(v) T_bt(phi, u)` gives `v = a/|a|`, `sinh(phi/2) = |b|`,
///    `u = conj(v) b / |b|`; boosts below [`BOOST_EPS`] collapse to
///    `phi = 0, u = e1`.
pub fn decompose(g: &GroupElement) -> Result<DecompositionFactors> {
    decompose_with_tolerance(g, MEMBERSHIP_TOLERANCE)
}

/// [`decompose`] for inputs certified at a looser membership tolerance; the
/// stabilizer check is widened to match.
pub fn decompose_with_tolerance(g: &GroupElement, tol: f64) -> Result<DecompositionFactors> {
    let report = g.membership(tol);
    if !report.pass {
        return Err(Error::NotMember {
            det_defect: report.det_defect,
            unitarity_defect: report.unitarity_defect,
        });
    }

    let (x0, q) = origin_image(g.matrix());
    let psi = x0.asinh();
    let z = UnitQuaternion::normalize(q)?;
    let w = z.sqrt();

    let lorentz = t_time_translation(-psi)? * t_space_translation(w.conj()) * *g;
    let scale = g.matrix().max_abs().max(1.0).powi(2);
    let QMat2 { a, b, c, d } = *lorentz.matrix();
    let block_defect = (a - d).max_abs().max((b + c).max_abs());
    let (y0, yq) = origin_image(lorentz.matrix());
    let fixed_defect = y0.abs().max((yq - Quaternion::ONE).max_abs());
    let defect = block_defect.max(fixed_defect);
    if defect > STABILIZER_TOLERANCE.max(10.0 * tol) * scale {
        return Err(Error::StabilizerFailure { defect });
    }

    let a = (a + d).scale(0.5);
    let b = (b - c).scale(0.5);
    let v = UnitQuaternion::normalize(a)?;
    let sh = b.norm();
    let (phi, u) = if sh > BOOST_EPS {
        let dir = v.conj().get() * b;
        (2.0 * sh.asinh(), UnitQuaternion::pure_direction(dir.v)?)
    } else {
        (0.0, UnitQuaternion::basis(1))
    };
    Ok(DecompositionFactors { w, psi, v, phi, u })
}

/// `(x0, x4 + x)` of `g . origin` at unit radius, read off the conjugated
/// slash matrix without projecting onto the hyperboloid.
fn origin_image(g: &QMat2) -> (f64, Quaternion) {
    let o = slash(&AmbientVector::new([0.0, 0.0, 0.0, 0.0, 1.0]));
    let m = *g * o * GroupElement::from_trusted(*g).inverse().m;
    let x0 = 0.5 * (m.a.s - m.d.s);
    let q = (m.c.conj() - m.b).scale(0.5);
    (x0, q)
}

/// `i(g) = gamma0 gamma4 dagger(g) gamma0 gamma4`.
pub fn involution(m: &QMat2) -> QMat2 {
    let p = gamma(0).expect("index 0") * gamma(4).expect("index 4");
    p * m.dagger() * p
}

/// Sign `s` with `Ad_{gamma0}(G) = s G` for each of the ten generators, in
/// [`Generator::ALL`] order.
pub fn mirror_generator_signs() -> Result<[(Generator, i8); 10]> {
    let g0 = GroupElement::gamma0();
    let mut out = [(Generator::X0, 0i8); 10];
    for (slot, label) in out.iter_mut().zip(Generator::ALL) {
        let gen = AlgebraElement::generator(label).matrix();
        let image = g0.conjugate(&gen);
        let sign = if image.dist_max(&gen) <= 1e-12 {
            1
        } else if image.dist_max(&(-gen)) <= 1e-12 {
            -1
        } else {
            return Err(Error::NotProportional {
                defect: image.dist_max(&gen).min(image.dist_max(&(-gen))),
            });
        };
        *slot = (label, sign);
    }
    Ok(out)
}
