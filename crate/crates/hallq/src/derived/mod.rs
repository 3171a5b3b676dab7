//! The triangulated substrate: derived-category objects as shifted sums of
//! catalogued indecomposables, derived Hom spaces as chain maps between
//! complexes of projectives modulo homotopy, mapping cones, the alternating
//! brace product, and derived automorphism counts.
//!
//! Morphism sets of the derived category are realized concretely: a morphism
//! is a coset of chain maps modulo null-homotopic ones, and `Hom(Y, L)_X`
//! (the morphisms with cone isomorphic to `X`) is counted by enumerating
//! cosets and classifying each cone.  Orbit-style descriptions of triangles
//! with fixed end terms are never materialized; the cone-fibre counts carry
//! the same information and are what the Hall-number formulas consume.

mod complex;
mod dobj;
mod homspace;
mod path;

pub use complex::{to_complex, EvaluatedComplex, ProjComplex};
pub use dobj::{brace, dhom_dim_pair, dhom_dim_shifted, DObj, DerivedError, ShiftSummand, MAX_SHIFT};
pub use homspace::{
    aut_order_derived_brute, cone_cohomology, cone_complex, cone_dims_by_degree, ConeEvaluator,
    CosetSpace, Matrixes,
};
pub use path::{gens_dims, gens_rep, PathAlgebra, PathMat};
