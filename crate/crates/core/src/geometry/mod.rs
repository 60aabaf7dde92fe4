//! Plücker coordinates, the Laplace-expansion incidence equation, torus
//! actions, sampling of general subspaces, and tangent functionals.

mod plucker;
mod sample;
mod tangent;
mod torus;

pub(crate) use plucker::plucker_of_matrix;
pub use plucker::{
    incidence, laplace_coefficients, plucker_coordinates, LaplaceCoefficients, PluckerVector,
};
pub use sample::{sample_general_isotropic, sample_general_subspace, RANDOM_TRIALS};
pub use tangent::{
    isotropic_tangent_functional, tangent_functional, ConditionFunctional, HomChart,
};
pub use torus::{torus_act, TorusWeights};
