//! Construction and certification of small triangulations of sphere products.
//!
//! The crate builds two families of triangulations of `S^2 x S^(d-3)`:
//!
//! * a centrally symmetric one on `2d + 2` vertices, obtained as the boundary of
//!   the union of two shellable balls inside the boundary of the
//!   `(d+1)`-cross-polytope ([`crosspoly::cs_sphere_product`]);
//! * a balanced one on `4d` vertices, obtained by chaining `2d` cross-polytopes
//!   with diamond connected sums and a closing handle addition
//!   ([`balanced::build_sigma`]).
//!
//! Every combinatorially checkable property (face numbers, integral homology,
//! balancedness, central symmetry, shellings, automorphisms) is verified by the
//! [`homology`] and [`verify`] modules; [`certify`] bundles them into
//! reproducible reports.

pub mod balanced;
pub mod certify;
pub mod complex;
pub mod crosspoly;
pub mod error;
pub mod homology;
pub mod io;
pub mod maps;
pub mod verify;

pub use complex::{FVector, Face, FacetRidgeGraph, SimplicialComplex, VertexId};
pub use error::{Error, Result};
pub use maps::{Coloring, Permutation, VertexMap};
