//! Exact linear algebra over prime fields, and exhaustive enumeration of the
//! rational points of Grassmannians, partial flag manifolds and orthogonal
//! Grassmannians.

mod enumerate;
mod field;
mod isotropic;
mod matrix;
mod membership;
mod subspace;

pub use enumerate::{
    enumerate_flags, enumerate_grassmannian, flag_cells, flag_count, gaussian_binomial,
    grassmannian_cells, CellPoints, FlagCell, FlagPoint, GrassmannCell,
};
pub use field::PrimeField;
pub use isotropic::{
    enumerate_isotropic, isotropic_cells, isotropic_count, isotropic_pivot_patterns, BilinearForm,
    IsotropicCell,
};
pub use matrix::FieldMatrix;
pub use membership::{
    flag_cell_of, orthogonal_cell_of, schubert_cell_of, schubert_membership, standard_flag_dims,
    Point,
};
pub use subspace::Subspace;
