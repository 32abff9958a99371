//! Root sets of Bernstein-Sato polynomials of monomial ideals from the
//! combinatorics of the Newton polyhedron.

mod product;
mod residue;
mod semigroup;

pub use product::{
    product_face_residues, roots_of_product, roots_of_product_with, FaceContext, ProductRoots,
};
pub use residue::{
    classes_of, face_residues, mod_z_classes, residue_set, roots, roots_mod_z, ModZClasses,
    ResidueSet, RootOptions, RootSet,
};
pub use semigroup::{difference_semigroup, DifferenceSemigroup, Membership, ShiftedCopy};
