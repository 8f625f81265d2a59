//! Adjoint orbits of `2 kappa X0` (massive scalar systems) and their
//! `kappa -> 0` limit, the conservation laws in dual-algebra coordinates,
//! physical units and the flat-space contraction of the energy relation.
//!
//! An orbit point is `X(z, p) = [[p, p0 z], [p0 conj(z), -conj(z) p z]]`
//! with `z` a unit quaternion, `p` a pure vector and `p0 = sqrt(kappa^2 + |p|^2)`.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraCoords, AlgebraElement, Generator};
use crate::error::{Error, Result};
use crate::group::{t_boost, t_space_translation, GroupElement};
use crate::matrix::QMat2;
use crate::quaternion::{cross3, dot3, norm3, scale3, sub3, Quaternion, UnitQuaternion};
use crate::sampling::{random_in_ball, random_unit_quaternion};

/// Coordinates on the dual algebra. The pairing identifies them with the
/// algebra coordinates one to one.
pub type CoadjointCoords = AlgebraCoords;

/// Relative shape tolerance applied after a conjugation, in units of
/// `|g|^2 max(1, |X|)`.
pub const ADJOINT_TOLERANCE: f64 = 1e-12;

/// `|d0|` below this (relative to the largest coordinate) is treated as zero
/// in [`conservation_residuals`].
pub const DEGENERATE_D0: f64 = 1e-12;

/// Default momentum window for sampling, in units of `kappa`.
pub const DEFAULT_PMAX_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitPoint {
    pub z: UnitQuaternion,
    pub p: [f64; 3],
    pub kappa: f64,
}

impl OrbitPoint {
    pub fn new(z: UnitQuaternion, p: [f64; 3], kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::Domain(format!("orbit parameter kappa = {kappa}")));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("momentum {p:?}")));
        }
        if kappa == 0.0 && norm3(p) == 0.0 {
            return Err(Error::Domain("massless orbit point needs nonzero momentum".into()));
        }
        Ok(Self { z, p, kappa })
    }

    pub fn p0(&self) -> f64 {
        self.kappa.hypot(norm3(self.p))
    }

    pub fn matrix(&self) -> AlgebraElement {
        orbit_block_matrix(self.z, self.p, self.kappa)
    }

    pub fn coords(&self) -> CoadjointCoords {
        self.matrix().coords()
    }
}

/// `g X g^-1`, checked against the algebra shape.
pub fn adjoint(g: &GroupElement, x: &AlgebraElement) -> Result<AlgebraElement> {
    let m = g.conjugate(&x.matrix());
    let (out, defect) = AlgebraElement::project(&m);
    let scale = g.matrix().max_abs().max(1.0).powi(2) * x.matrix().max_abs().max(1.0);
    if defect > ADJOINT_TOLERANCE * scale {
        return Err(Error::NotAlgebra { defect });
    }
    Ok(out)
}

/// Base point `2 kappa X0` of the massive family.
pub fn base_point(kappa: f64) -> AlgebraElement {
    AlgebraElement::generator(Generator::X0).scale(2.0 * kappa)
}

/// Image of `2 kappa X0` under `T_st(w) T_bt(phi, u)`:
/// `z = w^2`, `p = kappa sinh(phi) w u conj(w)`.
pub fn orbit_point_from_group(kappa: f64, w: UnitQuaternion, phi: f64, u: UnitQuaternion) -> Result<OrbitPoint> {
    if !phi.is_finite() {
        return Err(Error::Domain(format!("rapidity {phi}")));
    }
    if !u.is_pure(crate::quaternion::UNIT_TOLERANCE) {
        return Err(Error::NotUnitPureVector(u.get().to_array()));
    }
    let rotated = w.get() * Quaternion::pure(u.get().v) * w.get().conj();
    let p = scale3(rotated.v, kappa * phi.sinh());
    OrbitPoint::new(w.compose(w), p, kappa)
}

/// The group element whose adjoint action carries `2 kappa X0` to the point
/// produced by [`orbit_point_from_group`] with the same parameters.
pub fn transporter(w: UnitQuaternion, phi: f64, u: UnitQuaternion) -> Result<GroupElement> {
    Ok(t_space_translation(w) * t_boost(phi, u)?)
}

fn orbit_block_matrix(z: UnitQuaternion, p: [f64; 3], kappa: f64) -> AlgebraElement {
    let z = z.get();
    let pv = Quaternion::pure(p);
    let p0 = kappa.hypot(norm3(p));
    let m = QMat2::new(pv, z.scale(p0), z.conj().scale(p0), -(z.conj() * pv * z));
    AlgebraElement::project(&m).0
}

/// `[[p, p0 z], [p0 conj(z), -conj(z) p z]]`.
pub fn orbit_matrix(z: Quaternion, p: [f64; 3], kappa: f64) -> Result<AlgebraElement> {
    let z = UnitQuaternion::new(z)?;
    Ok(OrbitPoint::new(z, p, kappa)?.matrix())
}

/// Massless point (`kappa = 0`, `p0 = |p|`).
pub fn massless_orbit_point(z: UnitQuaternion, p: [f64; 3]) -> Result<OrbitPoint> {
    OrbitPoint::new(z, p, 0.0)
}

pub fn to_coadjoint_coords(x: &AlgebraElement) -> CoadjointCoords {
    x.coords()
}

/// `(d0)^2 + d.d - a.a - j.j`, the adjoint-invariant quadratic that equals
/// `kappa^2` on the orbit of `2 kappa X0`.
pub fn kappa_invariant(c: &CoadjointCoords) -> f64 {
    c.d0 * c.d0 + dot3(c.d, c.d) - dot3(c.a, c.a) - dot3(c.j, c.j)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConservationResiduals {
    /// `j - (d x a)/d0`, or `d0 j - d x a` when `degenerate`.
    pub r1: [f64; 3],
    /// `kappa^2 - kappa_invariant`.
    pub r2: f64,
    /// `d0` vanished, so `r1` is unscaled.
    pub degenerate: bool,
}

impl ConservationResiduals {
    pub fn max_abs(&self) -> f64 {
        self.r1.iter().fold(self.r2.abs(), |m, x| m.max(x.abs()))
    }
}

/// Residuals of `j = (d x a)/d0` and `kappa^2 = (d0)^2 + d.d - a.a - j.j`.
/// Off-orbit input is reported, never rejected.
pub fn conservation_residuals(c: &CoadjointCoords, kappa: f64) -> ConservationResiduals {
    let scale = c.to_array().iter().fold(1.0_f64, |m, x| m.max(x.abs()));
    let cross = cross3(c.d, c.a);
    let degenerate = c.d0.abs() <= DEGENERATE_D0 * scale;
    let r1 = if degenerate {
        sub3(scale3(c.j, c.d0), cross)
    } else {
        sub3(c.j, scale3(cross, 1.0 / c.d0))
    };
    ConservationResiduals {
        r1,
        r2: kappa * kappa - kappa_invariant(c),
        degenerate,
    }
}

/// Energy, momentum, position and angular momentum of a massive system,
/// with the constants that fix their units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalState {
    #[serde(rename = "E")]
    pub energy: f64,
    pub p: [f64; 3],
    pub q: [f64; 3],
    pub l: [f64; 3],
    pub m: f64,
    pub c: f64,
    #[serde(rename = "R")]
    pub radius: f64,
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {x}")))
    }
}

impl PhysicalState {
    pub fn new(energy: f64, p: [f64; 3], q: [f64; 3], m: f64, c: f64, radius: f64) -> Result<Self> {
        positive("m", m)?;
        positive("c", c)?;
        positive("R", radius)?;
        Ok(Self {
            energy,
            p,
            q,
            l: cross3(q, p),
            m,
            c,
            radius,
        })
    }

    /// `E = m c^2`, `p = q = 0`.
    pub fn at_rest(m: f64, c: f64, radius: f64) -> Result<Self> {
        Self::new(m * c * c, [0.0; 3], [0.0; 3], m, c, radius)
    }

    pub fn rest_energy(&self) -> f64 {
        self.m * self.c * self.c
    }
}

/// Undo `a = kappa p/(m c)`, `d0 = kappa E/(m c^2)`, `d = kappa q/R` on the
/// orbit `kappa = m c^2`: `E = d0`, `p = a/c`, `q = d R/(m c^2)`.
pub fn physicalize(coords: &CoadjointCoords, m: f64, c: f64, radius: f64) -> Result<PhysicalState> {
    positive("m", m)?;
    positive("c", c)?;
    positive("R", radius)?;
    let kappa = m * c * c;
    let energy = coords.d0 * m * c * c / kappa;
    let p = scale3(coords.a, m * c / kappa);
    let q = scale3(coords.d, radius / kappa);
    PhysicalState::new(energy, p, q, m, c, radius)
}

/// Inverse of [`physicalize`].
pub fn dimensionless(s: &PhysicalState) -> CoadjointCoords {
    let kappa = s.rest_energy();
    let a = scale3(s.p, kappa / (s.m * s.c));
    let d = scale3(s.q, kappa / s.radius);
    let d0 = kappa * s.energy / kappa;
    let j = if d0 != 0.0 { scale3(cross3(d, a), 1.0 / d0) } else { [0.0; 3] };
    AlgebraCoords { a, j, d0, d }
}

/// `E^4 + E^2 (-m^2c^4 - c^2 p.p + (m^2c^4/R^2) q.q) - (m^2c^6/R^2) l.l`.
pub fn energy_quartic_residual(s: &PhysicalState) -> f64 {
    let (m, c, r, e) = (s.m, s.c, s.radius, s.energy);
    let mc2 = m * c * c;
    let e2 = e * e;
    let b = -mc2 * mc2 - c * c * dot3(s.p, s.p) + (mc2 * mc2 / (r * r)) * dot3(s.q, s.q);
    let k = mc2 * mc2 * c * c / (r * r) * dot3(s.l, s.l);
    e2 * e2 + e2 * b - k
}

/// One row of a contraction sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContractionRow {
    #[serde(rename = "R")]
    pub radius: f64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub mass_shell_defect: f64,
}

/// Positive energy root of the quartic at fixed `(p, q)`, with the mass-shell
/// defect `E^2 - c^2 p.p - m^2 c^4`.
///
/// The quartic is quadratic in `E^2`; the larger root is taken. Writing
/// `E^2 = y0 + D` with `y0 = c^2 p.p + m^2 c^4`, the defect `D` solves
/// `D^2 + (y0 + b) D + (b y0 - k) = 0` with `b = m^2c^4 q.q/R^2` and
/// `k = m^2c^6 l.l/R^2`, and is evaluated in the cancellation-free form.
pub fn solve_energy(m: f64, c: f64, p: [f64; 3], q: [f64; 3], radius: f64) -> Result<ContractionRow> {
    positive("m", m)?;
    positive("c", c)?;
    positive("R", radius)?;
    let mc2 = m * c * c;
    let l = cross3(q, p);
    let y0 = c * c * dot3(p, p) + mc2 * mc2;
    let b = mc2 * mc2 * dot3(q, q) / (radius * radius);
    let k = mc2 * mc2 * c * c * dot3(l, l) / (radius * radius);
    let disc = (y0 - b) * (y0 - b) + 4.0 * k;
    // `+ 0.0` turns a signed zero into `0`.
    let defect = -2.0 * (b * y0 - k) / ((y0 + b) + disc.sqrt()) + 0.0;
    let e2 = y0 + defect;
    if !(e2 > 0.0 && e2.is_finite()) {
        return Err(Error::NoPositiveRoot { radius });
    }
    Ok(ContractionRow {
        radius,
        energy: e2.sqrt(),
        mass_shell_defect: defect,
    })
}

pub fn contraction_sweep(m: f64, c: f64, p: [f64; 3], q: [f64; 3], radii: &[f64]) -> Result<Vec<ContractionRow>> {
    if radii.is_empty() {
        return Err(Error::Domain("empty radius list".into()));
    }
    if radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("radius list must be strictly increasing".into()));
    }
    radii.iter().map(|&r| solve_energy(m, c, p, q, r)).collect()
}

/// `steps` radii spaced evenly in `ln R` from `r_min` to `r_max`.
pub fn log_grid(r_min: f64, r_max: f64, steps: usize) -> Result<Vec<f64>> {
    positive("R_min", r_min)?;
    positive("R_max", r_max)?;
    if steps < 2 || r_max <= r_min {
        return Err(Error::Domain(format!(
            "need steps >= 2 and R_max > R_min (got {steps}, {r_min}, {r_max})"
        )));
    }
    let ratio = r_max / r_min;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                r_max
            } else {
                r_min * ratio.powf(i as f64 / (steps - 1) as f64)
            }
        })
        .collect())
}

/// Least-squares slope of `ln|defect|` against `ln R`; `None` if any defect
/// vanishes or fewer than two rows are given.
pub fn log_log_slope(rows: &[ContractionRow]) -> Option<f64> {
    if rows.len() < 2 || rows.iter().any(|r| r.mass_shell_defect == 0.0) {
        return None;
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.radius.ln(), r.mass_shell_defect.abs().ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    Some(sxy / sxx)
}

/// `n` points with `z` uniform on the 3-sphere and `p` uniform in the ball
/// `|p| <= p_max`, i.e. the invariant measure restricted to a momentum window.
/// For `kappa = 0` the points are massless.
pub fn sample_orbit(kappa: f64, n: usize, p_max: f64, seed: u64) -> Result<Vec<OrbitPoint>> {
    if n == 0 {
        return Err(Error::Domain("sample count must be positive".into()));
    }
    positive("p_max", p_max)?;
    if !(kappa.is_finite() && kappa >= 0.0) {
        return Err(Error::Domain(format!("orbit parameter kappa = {kappa}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let z = random_unit_quaternion(&mut rng);
        let p = random_in_ball(&mut rng, p_max);
        if kappa == 0.0 && norm3(p) == 0.0 {
            continue;
        }
        out.push(OrbitPoint::new(z, p, kappa)?);
    }
    Ok(out)
}
