//! Seeded verification suites. Every trial draws from its own stream
//! (`trial_rng(seed, index)`), so results do not depend on evaluation order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    homomorphism_residual, index_pairs, intertwining_residual, quaternionic_table_residual, so14_table_mismatches,
    Generator,
};
use crate::error::{Error, Result};
use crate::gamma::{anticommutator, dagger_identity_check, AmbientVector, DSPoint, ETA};
use crate::group::{decompose, mirror_generator_signs, GroupElement};
use crate::orbits::{
    adjoint, base_point, contraction_sweep, conservation_residuals, log_grid, log_log_slope, massless_orbit_point,
};
use crate::quaternion::UnitQuaternion;
use crate::sampling::{random_member_exp, random_member_factors, random_unit_quaternion, trial_rng};

/// Orbit parameters exercised by the orbit suite; `0` is the massless family.
pub const ORBIT_KAPPAS: [f64; 4] = [0.1, 1.0, 10.0, 0.0];

/// Ad-gamma0 signs in [`Generator::ALL`] order.
pub const MIRROR_SIGNS: [i8; 10] = [1, 1, 1, -1, 1, 1, 1, -1, -1, -1];

/// Natural-units sweep used by the contraction suite.
pub const CONTRACTION_R_MIN: f64 = 10.0;
pub const CONTRACTION_R_MAX: f64 = 1e6;
pub const CONTRACTION_STEPS: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Clifford,
    Membership,
    Decomposition,
    Brackets,
    Homomorphism,
    Orbits,
    Contraction,
    Mirror,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Clifford,
        Suite::Membership,
        Suite::Decomposition,
        Suite::Brackets,
        Suite::Homomorphism,
        Suite::Orbits,
        Suite::Contraction,
        Suite::Mirror,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Clifford => "clifford",
            Suite::Membership => "membership",
            Suite::Decomposition => "decomposition",
            Suite::Brackets => "brackets",
            Suite::Homomorphism => "homomorphism",
            Suite::Orbits => "orbits",
            Suite::Contraction => "contraction",
            Suite::Mirror => "mirror",
        }
    }

    pub fn default_trials(self) -> u64 {
        match self {
            Suite::Membership | Suite::Orbits => 10_000,
            Suite::Decomposition | Suite::Mirror => 1_000,
            Suite::Clifford | Suite::Brackets | Suite::Homomorphism | Suite::Contraction => 1,
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Suite::Clifford | Suite::Mirror => 0.0,
            Suite::Membership => 1e-10,
            Suite::Decomposition | Suite::Orbits => 1e-9,
            Suite::Brackets | Suite::Homomorphism => 1e-12,
            Suite::Contraction => 0.05,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub suite: String,
    pub trials: u64,
    pub max_residual: f64,
    pub pass: bool,
    pub seed: u64,
}

impl RunReport {
    fn new(suite: &str, trials: u64, max_residual: f64, tol: f64, seed: u64) -> Self {
        Self {
            suite: suite.to_string(),
            trials,
            max_residual,
            pass: max_residual <= tol,
            seed,
        }
    }
}

/// Runs `suite`. A `NaN` residual never passes.
pub fn run(suite: Suite, trials: u64, seed: u64, tol: f64) -> Result<RunReport> {
    if trials == 0 {
        return Err(Error::Domain("trial count must be positive".into()));
    }
    let residual = match suite {
        Suite::Clifford => clifford()?,
        Suite::Membership => membership(trials, seed),
        Suite::Decomposition => decomposition(trials, seed)?,
        Suite::Brackets => brackets()?,
        Suite::Homomorphism => homomorphism(trials, seed)?,
        Suite::Orbits => orbits(trials, seed)?,
        Suite::Contraction => contraction()?,
        Suite::Mirror => mirror(trials, seed)?,
    };
    Ok(RunReport::new(suite.name(), trials, residual, tol, seed))
}

fn member_for_trial<R: Rng>(rng: &mut R, trial: u64) -> GroupElement {
    if trial.is_multiple_of(2) {
        random_member_exp(rng)
    } else {
        random_member_factors(rng)
    }
}

/// Largest `|{gamma^a, gamma^b} - 2 eta^{ab}|` over all 25 ordered pairs in
/// the complex embedding; `1` if a dagger identity fails.
pub fn clifford() -> Result<f64> {
    let mut worst = 0.0_f64;
    for (a, eta) in ETA.iter().enumerate() {
        for b in 0..5 {
            let e = anticommutator(a, b)?.embed();
            let target = if a == b { 2.0 * eta } else { 0.0 };
            for r in 0..4 {
                for c in 0..4 {
                    let t = if r == c { Complex64::new(target, 0.0) } else { Complex64::new(0.0, 0.0) };
                    worst = worst.max((e[(r, c)] - t).norm());
                }
            }
        }
        if !dagger_identity_check(a)? {
            worst = worst.max(1.0);
        }
    }
    Ok(worst)
}

/// Pseudo-unitarity and determinant defects of products of random members.
pub fn membership(trials: u64, seed: u64) -> f64 {
    (0..trials)
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let g = random_member_exp(&mut rng) * random_member_factors(&mut rng);
            g.membership(0.0).max_defect()
        })
        .fold(0.0, f64::max)
}

/// Max-norm reconstruction error of the canonical decomposition.
pub fn decomposition(trials: u64, seed: u64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let g = member_for_trial(&mut rng, t);
        let back = decompose(&g)?.reconstruct()?;
        worst = worst.max(back.matrix().dist_max(g.matrix()));
    }
    Ok(worst)
}

/// Quaternionic bracket table residual; `1` per mismatching 5x5 pair.
pub fn brackets() -> Result<f64> {
    let mismatches = so14_table_mismatches()?;
    Ok(quaternionic_table_residual()?.max(mismatches as f64))
}

/// Generator-wise agreement of the induced 5x5 map with the integer
/// representation, then `trials` random intertwining checks.
pub fn homomorphism(trials: u64, seed: u64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for (a, b) in index_pairs() {
        worst = worst.max(homomorphism_residual(a, b)?);
    }
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let x = crate::sampling::random_algebra_element(&mut rng);
        let y = crate::sampling::random_algebra_element(&mut rng);
        worst = worst.max(intertwining_residual(&x, &y)?);
    }
    Ok(worst)
}

/// Conservation residuals of adjoint-transported base points, scaled by
/// `max(1, kappa^2)`, over every family in [`ORBIT_KAPPAS`].
pub fn orbits(trials: u64, seed: u64) -> Result<f64> {
    let massless = massless_orbit_point(UnitQuaternion::IDENTITY, [0.0, 0.0, 1.0])?.matrix();
    let mut worst = 0.0_f64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let g = member_for_trial(&mut rng, t);
        for kappa in ORBIT_KAPPAS {
            let base = if kappa == 0.0 { massless } else { base_point(kappa) };
            let coords = adjoint(&g, &base)?.coords();
            let r = conservation_residuals(&coords, kappa);
            worst = worst.max(r.max_abs() / kappa.powi(2).max(1.0));
        }
    }
    Ok(worst)
}

/// Outcome of the natural-units contraction sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContractionFit {
    pub slope: f64,
    pub tail_defect: f64,
}

pub fn contraction_fit() -> Result<ContractionFit> {
    let grid = log_grid(CONTRACTION_R_MIN, CONTRACTION_R_MAX, CONTRACTION_STEPS)?;
    let rows = contraction_sweep(1.0, 1.0, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], &grid)?;
    let slope = log_log_slope(&rows).ok_or_else(|| Error::Domain("defect vanished on the grid".into()))?;
    let tail_defect = rows.last().map_or(f64::NAN, |r| r.mass_shell_defect.abs());
    Ok(ContractionFit { slope, tail_defect })
}

/// `|slope + 2|` of the log-log fit of the mass-shell defect.
pub fn contraction() -> Result<f64> {
    let fit = contraction_fit()?;
    Ok((fit.slope + 2.0).abs())
}

/// `act(gamma0, (x0, x)) = (x0, -x)` on random hyperboloid points, then the
/// generator sign table; `1` on any sign mismatch.
pub fn mirror(trials: u64, seed: u64) -> Result<f64> {
    let g0 = GroupElement::gamma0();
    let mut worst = 0.0_f64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let radius = 10f64.powf(rng.random_range(-2.0..3.0));
        let x0 = radius * rng.random_range(-3.0f64..3.0).sinh();
        let pt = DSPoint::from_time_and_direction(x0, random_unit_quaternion(&mut rng).get(), radius)?;
        let image = g0.act(&pt)?.ambient();
        let x = pt.ambient().x;
        let expected = AmbientVector::new([x[0], -x[1], -x[2], -x[3], -x[4]]);
        worst = worst.max(image.max_abs_diff(&expected));
    }
    let signs = mirror_generator_signs()?;
    for ((label, s), (expected_label, e)) in signs.iter().zip(Generator::ALL.iter().zip(MIRROR_SIGNS)) {
        if label != expected_label || *s != e {
            worst = worst.max(1.0);
        }
    }
    Ok(worst)
}

/// Largest `|(g x)^2 + R^2| / R^2` over random members and hyperboloid points
/// with `R` spread over five decades.
pub fn hyperboloid(trials: u64, seed: u64) -> Result<f64> {
    let mut worst = 0.0_f64;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let g = member_for_trial(&mut rng, t);
        let radius = 10f64.powf(rng.random_range(-2.0..3.0));
        let x0 = radius * rng.random_range(-2.0f64..2.0).sinh();
        let pt = DSPoint::from_time_and_direction(x0, random_unit_quaternion(&mut rng).get(), radius)?;
        let image = g.act(&pt)?.ambient();
        worst = worst.max((image.minkowski_square() + radius * radius).abs() / (radius * radius));
    }
    Ok(worst)
}
