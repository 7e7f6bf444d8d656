//! Finitely generated abelian groups, their homomorphisms, and Smith normal form.

mod group;
mod hom;
pub mod matrix;
pub mod smith;

pub use group::{CanonicalForm, DirectSum, FgAbGroup, Simplified};
pub use hom::{homology, preimage, scalar_hom, sum_of, AbHom, Homology, Subgroup};
pub use matrix::{Matrix, Vector};
pub use smith::{snf, LeftSolver};
