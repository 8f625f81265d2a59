//! Seeded random draws: points on spheres and balls, algebra elements and
//! group members.
//!
//! Two member distributions are provided, `exp` of a random algebra element
//! and a product of random decomposition factors, so fuzz suites are not tied
//! to one generator's blind spots.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::algebra::{AlgebraCoords, AlgebraElement};
use crate::group::{DecompositionFactors, GroupElement};
use crate::quaternion::{Quaternion, UnitQuaternion};

/// Range of the time-translation parameter in [`random_factors`].
pub const PSI_RANGE: f64 = 2.0;
/// Upper bound of the rapidity in [`random_factors`].
pub const PHI_MAX: f64 = 2.0;

/// Per-trial generator derived from a run seed, so trials can be evaluated
/// in any order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// Uniform on the 3-sphere (normalized Gaussian 4-vector).
pub fn random_unit_quaternion<R: Rng + ?Sized>(rng: &mut R) -> UnitQuaternion {
    loop {
        let q = Quaternion::from_array(std::array::from_fn(|_| normal(rng)));
        if q.norm() > 1e-6 {
            return UnitQuaternion::normalize(q).expect("nonzero");
        }
    }
}

/// Uniform on the 2-sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| normal(rng));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-6 {
            return v.map(|x| x / n);
        }
    }
}

/// Uniform in the ball of the given radius (Lebesgue measure).
pub fn random_in_ball<R: Rng + ?Sized>(rng: &mut R, radius: f64) -> [f64; 3] {
    let dir = random_unit_vector(rng);
    let r = radius * rng.random::<f64>().cbrt();
    dir.map(|x| x * r)
}

/// Algebra element with all ten coordinates uniform in `[-1, 1]`.
pub fn random_algebra_element<R: Rng + ?Sized>(rng: &mut R) -> AlgebraElement {
    AlgebraElement::from_coords(AlgebraCoords::from_array(std::array::from_fn(|_| {
        rng.random_range(-1.0..=1.0)
    })))
}

pub fn random_member_exp<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    random_algebra_element(rng).exp(1.0).expect("finite parameter")
}

/// `w, v` uniform on the 3-sphere, `psi` uniform in `[-2, 2]`, `phi` uniform
/// in `[0, 2]`, `u` uniform on the 2-sphere.
pub fn random_factors<R: Rng + ?Sized>(rng: &mut R) -> DecompositionFactors {
    DecompositionFactors {
        w: random_unit_quaternion(rng),
        psi: rng.random_range(-PSI_RANGE..=PSI_RANGE),
        v: random_unit_quaternion(rng),
        phi: rng.random_range(0.0..=PHI_MAX),
        u: UnitQuaternion::pure_direction(random_unit_vector(rng)).expect("unit"),
    }
}

pub fn random_member_factors<R: Rng + ?Sized>(rng: &mut R) -> GroupElement {
    random_factors(rng).reconstruct().expect("valid factors")
}
