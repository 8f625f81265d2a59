//! The Lie algebra sp(2,2).
//!
//! Elements are stored in the coordinates `(a, j, d0, d)` of
//!
//! ```text
//! 2 a.X + 2 j.Y + 2 d0 X0 + 2 d.Z = [[ (a+j).e,  d0 + d.e ],
//!                                    [ d0 - d.e, (j-a).e  ]]
//! ```
//!
//! where `X_k`, `X0`, `Y_k`, `Z_k` are the tangent vectors at the identity of
//! the space-translation, time-translation, rotation and boost subgroups.
//! The same ten numbers serve as coordinates on the dual algebra.

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{slash, unslash, AmbientVector, ETA};
use crate::group::GroupElement;
use crate::matrix::QMat2;
use crate::quaternion::{add3, scale3, sub3, Quaternion};

/// Shape tolerance, relative to `max(1, |M|_max)`.
pub const ALGEBRA_TOLERANCE: f64 = 1e-12;

/// Proportionality between the action induced through the slash map and the
/// Killing matrices. The induced map on an ambient vector equals
/// `eta K eta` rather than `K`: it is the contragredient of the Killing
/// representation. With that conjugation the constant is exactly one.
pub const HOMOMORPHISM_CONSTANT: f64 = 1.0;

/// Integer 5x5 matrix of a Killing field acting on `(x^0, ..., x^4)`.
pub type SO14Matrix = SMatrix<i64, 5, 5>;

/// Real 5x5 matrix.
pub type Matrix5 = SMatrix<f64, 5, 5>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    X1,
    X2,
    X3,
    X0,
    Y1,
    Y2,
    Y3,
    Z1,
    Z2,
    Z3,
}

impl Generator {
    pub const ALL: [Generator; 10] = [
        Generator::X1,
        Generator::X2,
        Generator::X3,
        Generator::X0,
        Generator::Y1,
        Generator::Y2,
        Generator::Y3,
        Generator::Z1,
        Generator::Z2,
        Generator::Z3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::X1 => "X1",
            Generator::X2 => "X2",
            Generator::X3 => "X3",
            Generator::X0 => "X0",
            Generator::Y1 => "Y1",
            Generator::Y2 => "Y2",
            Generator::Y3 => "Y3",
            Generator::Z1 => "Z1",
            Generator::Z2 => "Z2",
            Generator::Z3 => "Z3",
        }
    }

    /// `(alpha, beta)` such that this generator is `K_{alpha beta}`.
    pub fn k_indices(self) -> (usize, usize) {
        match self {
            Generator::X1 => (4, 1),
            Generator::X2 => (4, 2),
            Generator::X3 => (4, 3),
            Generator::X0 => (0, 4),
            Generator::Y1 => (2, 3),
            Generator::Y2 => (3, 1),
            Generator::Y3 => (1, 2),
            Generator::Z1 => (0, 1),
            Generator::Z2 => (0, 2),
            Generator::Z3 => (0, 3),
        }
    }
}

/// Coordinates `(a, j, d0, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AlgebraCoords {
    pub a: [f64; 3],
    pub j: [f64; 3],
    pub d0: f64,
    pub d: [f64; 3],
}

impl AlgebraCoords {
    pub fn to_array(&self) -> [f64; 10] {
        let [a1, a2, a3] = self.a;
        let [j1, j2, j3] = self.j;
        let [e1, e2, e3] = self.d;
        [a1, a2, a3, j1, j2, j3, self.d0, e1, e2, e3]
    }

    pub fn from_array(c: [f64; 10]) -> Self {
        Self {
            a: [c[0], c[1], c[2]],
            j: [c[3], c[4], c[5]],
            d0: c[6],
            d: [c[7], c[8], c[9]],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.to_array()
            .iter()
            .zip(other.to_array())
            .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }
}

/// An element of sp(2,2).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AlgebraElement {
    coords: AlgebraCoords,
}

impl AlgebraElement {
    pub const ZERO: Self = Self {
        coords: AlgebraCoords {
            a: [0.0; 3],
            j: [0.0; 3],
            d0: 0.0,
            d: [0.0; 3],
        },
    };

    pub fn from_coords(coords: AlgebraCoords) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> AlgebraCoords {
        self.coords
    }

    pub fn matrix(&self) -> QMat2 {
        let AlgebraCoords { a, j, d0, d } = self.coords;
        QMat2::new(
            Quaternion::pure(add3(a, j)),
            Quaternion::new(d0, d),
            Quaternion::new(d0, scale3(d, -1.0)),
            Quaternion::pure(sub3(j, a)),
        )
    }

    /// Reads the coordinates off a matrix, rejecting it when it is further
    /// than `tol * max(1, |m|_max)` from the algebra.
    pub fn from_matrix(m: &QMat2, tol: f64) -> Result<Self> {
        let (out, defect) = Self::project(m);
        if defect > tol * m.max_abs().max(1.0) {
            return Err(Error::NotAlgebra { defect });
        }
        Ok(out)
    }

    /// Nearest algebra element in the block-wise sense, with the max-norm
    /// distance from `m` to it.
    pub fn project(m: &QMat2) -> (Self, f64) {
        let QMat2 { a: tl, b: tr, c: bl, d: br } = *m;
        let coords = AlgebraCoords {
            a: scale3(sub3(tl.v, br.v), 0.5),
            j: scale3(add3(tl.v, br.v), 0.5),
            d0: 0.5 * (tr.s + bl.s),
            d: scale3(sub3(tr.v, bl.v), 0.5),
        };
        let out = Self { coords };
        let defect = out.matrix().dist_max(m);
        (out, defect)
    }

    pub fn generator(label: Generator) -> Self {
        let mut c = [0.0; 10];
        // Coordinates carry a factor 2 relative to the generators.
        let slot = match label {
            Generator::X1 => 0,
            Generator::X2 => 1,
            Generator::X3 => 2,
            Generator::Y1 => 3,
            Generator::Y2 => 4,
            Generator::Y3 => 5,
            Generator::X0 => 6,
            Generator::Z1 => 7,
            Generator::Z2 => 8,
            Generator::Z3 => 9,
        };
        c[slot] = 0.5;
        Self::from_coords(AlgebraCoords::from_array(c))
    }

    /// `K_{alpha beta}` under `K_4k = X_k`, `K_04 = X0`,
    /// `K_ki = eps_kij Y_j`, `K_0k = Z_k`, extended antisymmetrically.
    pub fn k_generator(alpha: usize, beta: usize) -> Result<Self> {
        let (label, sign) = k_label(alpha, beta)?;
        Ok(Self::generator(label).scale(sign))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self::from_coords(AlgebraCoords::from_array(self.coords.to_array().map(|x| x * k)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let (x, y) = (self.coords.to_array(), other.coords.to_array());
        Self::from_coords(AlgebraCoords::from_array(std::array::from_fn(|i| x[i] + y[i])))
    }

    /// `XY - YX`, checked against the algebra shape.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        let m = self.matrix().commutator(&other.matrix());
        Self::from_matrix(&m, ALGEBRA_TOLERANCE)
    }

    pub fn exp(&self, t: f64) -> Result<GroupElement> {
        exp(self, t)
    }
}

fn k_label(alpha: usize, beta: usize) -> Result<(Generator, f64)> {
    if alpha > 4 || beta > 4 || alpha == beta {
        return Err(Error::GeneratorIndex(alpha, beta));
    }
    let found = Generator::ALL.iter().find_map(|&g| {
        let (p, q) = g.k_indices();
        if (p, q) == (alpha, beta) {
            Some((g, 1.0))
        } else if (q, p) == (alpha, beta) {
            Some((g, -1.0))
        } else {
            None
        }
    });
    found.ok_or(Error::GeneratorIndex(alpha, beta))
}

/// All ten index pairs `alpha < beta`.
pub fn index_pairs() -> impl Iterator<Item = (usize, usize)> {
    (0..5).flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
}

/// Right-hand side of the commutation relation
/// `[K_ab, K_rd] = -(eta_ar K_bd + eta_bd K_ar - eta_ad K_br - eta_br K_ad)`
/// as integer-weighted index pairs; terms with a repeated index vanish.
pub fn structure_terms(alpha: usize, beta: usize, rho: usize, delta: usize) -> Vec<(i64, usize, usize)> {
    let eta = |i: usize, j: usize| if i == j { ETA[i] as i64 } else { 0 };
    [
        (-eta(alpha, rho), beta, delta),
        (-eta(beta, delta), alpha, rho),
        (eta(alpha, delta), beta, rho),
        (eta(beta, rho), alpha, delta),
    ]
    .into_iter()
    .filter(|&(c, i, j)| c != 0 && i != j)
    .collect()
}

/// Killing field `x_alpha d_beta - x_beta d_alpha` as a matrix on
/// `(x^0, ..., x^4)`, with the overall sign fixed so that matrix
/// commutators reproduce [`structure_terms`].
pub fn so14_matrix(alpha: usize, beta: usize) -> Result<SO14Matrix> {
    if alpha > 4 || beta > 4 || alpha == beta {
        return Err(Error::GeneratorIndex(alpha, beta));
    }
    let eta = |i: usize, j: usize| if i == j { ETA[i] as i64 } else { 0 };
    Ok(SO14Matrix::from_fn(|mu, nu| {
        i64::from(mu == alpha) * eta(beta, nu) - i64::from(mu == beta) * eta(alpha, nu)
    }))
}

/// Linear map `x -> unslash([G, slash(x)])` on ambient vectors.
pub fn induced_5x5(g: &QMat2) -> Result<Matrix5> {
    let mut out = Matrix5::zeros();
    for nu in 0..5 {
        let mut basis = [0.0; 5];
        basis[nu] = 1.0;
        let col = unslash(&g.commutator(&slash(&AmbientVector::new(basis))))?;
        for mu in 0..5 {
            out[(mu, nu)] = col.x[mu];
        }
    }
    Ok(out)
}

fn eta5() -> Matrix5 {
    Matrix5::from_diagonal(&nalgebra::SVector::<f64, 5>::from_column_slice(&ETA))
}

/// `|L(K_ab) - c eta K5_ab eta|_max` for the quaternionic generator `K_ab`.
pub fn homomorphism_residual(alpha: usize, beta: usize) -> Result<f64> {
    let induced = induced_5x5(&AlgebraElement::k_generator(alpha, beta)?.matrix())?;
    let k5 = so14_matrix(alpha, beta)?.map(|x| x as f64);
    let eta = eta5();
    let target = eta * k5 * eta * HOMOMORPHISM_CONSTANT;
    Ok((induced - target).amax())
}

/// `|L([X, Y]) - [L(X), L(Y)]|_max`.
pub fn intertwining_residual(x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    let lx = induced_5x5(&x.matrix())?;
    let ly = induced_5x5(&y.matrix())?;
    let lxy = induced_5x5(&x.matrix().commutator(&y.matrix()))?;
    Ok((lxy - (lx * ly - ly * lx)).amax())
}

/// Largest residual of the commutation table over all 45 unordered pairs of
/// distinct generators, in the quaternionic representation.
pub fn quaternionic_table_residual() -> Result<f64> {
    let pairs: Vec<_> = index_pairs().collect();
    let mut worst = 0.0_f64;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(r, d) in &pairs[i + 1..] {
            let lhs = AlgebraElement::k_generator(a, b)?.bracket(&AlgebraElement::k_generator(r, d)?)?;
            let mut rhs = AlgebraElement::ZERO;
            for (c, p, q) in structure_terms(a, b, r, d) {
                rhs = rhs.add(&AlgebraElement::k_generator(p, q)?.scale(c as f64));
            }
            worst = worst.max(lhs.matrix().dist_max(&rhs.matrix()));
        }
    }
    Ok(worst)
}

/// Number of the 45 pairs whose 5x5 integer commutator differs from the
/// table.
pub fn so14_table_mismatches() -> Result<usize> {
    let pairs: Vec<_> = index_pairs().collect();
    let mut bad = 0;
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(r, d) in &pairs[i + 1..] {
            let (m1, m2) = (so14_matrix(a, b)?, so14_matrix(r, d)?);
            let lhs = m1 * m2 - m2 * m1;
            let mut rhs = SO14Matrix::zeros();
            for (c, p, q) in structure_terms(a, b, r, d) {
                rhs += so14_matrix(p, q)? * c;
            }
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    Ok(bad)
}

const EXP_TAYLOR_ORDER: usize = 18;
const EXP_SCALED_NORM: f64 = 0.5;

fn norm_1(m: &Matrix4<Complex64>) -> f64 {
    (0..4)
        .map(|c| (0..4).map(|r| m[(r, c)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Scaling and squaring with a fixed-order Taylor polynomial.
pub(crate) fn expm4(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let norm = norm_1(m);
    let squarings = if norm > EXP_SCALED_NORM {
        (norm / EXP_SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let a = m * Complex64::new(0.5f64.powi(squarings), 0.0);
    let mut term = Matrix4::<Complex64>::identity();
    let mut sum = term;
    for k in 1..=EXP_TAYLOR_ORDER {
        term = term * a * Complex64::new(1.0 / k as f64, 0.0);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `exp(t X)` computed in the 4x4 complex embedding.
pub fn exp(x: &AlgebraElement, t: f64) -> Result<GroupElement> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("exponential parameter {t}")));
    }
    let e = expm4(&(x.matrix().scale(t).embed()));
    Ok(GroupElement::from_trusted(QMat2::extract(&e)?))
}
