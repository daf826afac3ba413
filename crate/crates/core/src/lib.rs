//! Exact-arithmetic invariants of resolution and plumbing graphs of normal
//! surface singularities with rational-homology-sphere link.
//!
//! The crate computes, over arbitrary-precision integers and rationals:
//!
//! * Smith normal forms, cokernel presentations and rational inverses
//!   ([`exactlin`]);
//! * plumbing graphs, a small text format for them, validation
//!   (negative definiteness, quasi-minimality) and the blow-up calculus
//!   ([`graphs`]);
//! * discriminant groups, orbifold homology of decorated graphs, linking
//!   matrices and the projection from orbifold to plain homology
//!   ([`homology`]);
//! * diagonal representations in `(Q/Z)^t`, the power map and monomial
//!   characters ([`reps`]);
//! * splice diagrams, the semigroup and congruence conditions, and splice
//!   equation sets with orbifold power substitution ([`splice`]).
//!
//! No floating point is used anywhere.

pub mod exactlin;
pub mod graphs;
pub mod homology;
pub mod reps;
pub mod splice;

pub use exactlin::{
    AbelianGroupPresentation, GroupElement, IntMatrix, RatMatrix, SmithDecomposition,
};
pub use graphs::{DecoratedGraph, PlumbingGraph, ValidationReport};
pub use homology::GroupHom;
pub use reps::{Character, DiagonalRepresentation, PowerMap, QmodZVector};
pub use splice::{LeafWeights, MonomialExponent, SpliceDiagram, SpliceEquationSet};
