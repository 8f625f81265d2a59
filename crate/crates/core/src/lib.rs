//! The de Sitter relativity group Sp(2,2) realized as 2x2 quaternionic
//! matrices: group and algebra arithmetic, the space-time-Lorentz
//! decomposition, co-adjoint orbits of massive and massless scalar systems,
//! and the flat (Poincaré) limit of their conservation laws.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod group;
pub mod matrix;
pub mod orbits;
pub mod quaternion;
pub mod sampling;
pub mod suites;

pub use algebra::{AlgebraCoords, AlgebraElement, Generator};
pub use error::{Error, Result};
pub use gamma::{AmbientVector, DSPoint};
pub use group::{decompose, decompose_with_tolerance, DecompositionFactors, GroupElement};
pub use matrix::QMat2;
pub use orbits::{CoadjointCoords, OrbitPoint, PhysicalState};
pub use quaternion::{Quaternion, UnitQuaternion};
