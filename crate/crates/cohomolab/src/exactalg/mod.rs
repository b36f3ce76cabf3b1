//! Exact integer linear algebra: matrices over arbitrary-precision integers,
//! Smith normal form, lattice kernels and solves, and finitely presented
//! abelian groups given as subquotients of lattices. Every homology group,
//! spectral-sequence entry and induced map in the crate is ultimately one of
//! these values.

mod group;
mod matrix;

pub use group::{
    hom_homology, hom_on_subquotients, image_subgroup, induced_hom, subquotient, FPAbelianGroup,
    GroupHom, Presentation,
};
pub use matrix::{
    determinant, kernel, lattice_intersect_coordinate_kernel, smith_normal_form, solve,
    unimodular_inverse, IntMatrix, SmithForm,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    /// A column of the denominator lattice is not an integer combination of
    /// the numerator lattice.
    #[error("containment violation: column {0} is not in the enclosing lattice")]
    ContainmentViolation(usize),
    /// A matrix does not descend to a map of subquotients.
    #[error("map is not well defined on the subquotients")]
    NotWellDefined,
    /// The image of a torsion generator does not have compatible order.
    #[error("matrix does not respect torsion orders")]
    TorsionIncompatible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}
