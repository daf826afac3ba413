//! Plumbing / resolution graphs: data model, text format, validation and the
//! blow-up calculus.
//!
//! A graph is a finite simple weighted graph; vertices carry Euler numbers
//! (self-intersections `E_i . E_i`). A [`DecoratedGraph`] adds orbifold
//! weights `n_i >= 1`; vertices with `n_i > 1` are the "special" vertices.
//! Everywhere the canonical vertex order is lexicographic by id.

mod model;
mod parse;
mod validate;

pub use model::{DecoratedGraph, GraphError, PlumbingGraph};
pub use parse::{parse_graph, serialize};
pub use validate::{validate, ValidationReport};
