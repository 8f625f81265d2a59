use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quaternion norm {norm} is too far from 1 to normalize")]
    NotUnit { norm: f64 },

    #[error("quaternion {0:?} is not a unit pure vector")]
    NotUnitPureVector([f64; 4]),

    #[error("2x2 complex matrix is not in the quaternion image (defect {defect:e})")]
    NotQuaternion { defect: f64 },

    #[error("gamma index {0} out of range 0..=4")]
    GammaIndex(usize),

    #[error("matrix is not in the image of the slash map (defect {defect:e})")]
    NotSlashed { defect: f64 },

    #[error("point is off the hyperboloid x^2 = -R^2 (defect {defect:e}, R = {radius})")]
    OffHyperboloid { defect: f64, radius: f64 },

    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),

    #[error("not an Sp(2,2) element: det defect {det_defect:e}, pseudo-unitarity defect {unitarity_defect:e}")]
    NotMember {
        det_defect: f64,
        unitarity_defect: f64,
    },

    #[error("Lorentz factor does not stabilize the origin (defect {defect:e})")]
    StabilizerFailure { defect: f64 },

    #[error("matrix is not in sp(2,2) shape (defect {defect:e})")]
    NotAlgebra { defect: f64 },

    #[error("invalid generator index pair ({0}, {1})")]
    GeneratorIndex(usize, usize),

    #[error("generator image under Ad(gamma0) is not proportional to the generator (defect {defect:e})")]
    NotProportional { defect: f64 },

    #[error("invalid parameter: {0}")]
    Domain(String),

    #[error("energy quartic has no positive root at R = {radius}")]
    NoPositiveRoot { radius: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
