//! Exact integer and rational linear algebra.
//!
//! Everything here works over `num_bigint::BigInt` / `BigRational`; there is
//! no overflow and no floating point. Matrices are small (desk scale), so the
//! implementations favour clarity and determinism over asymptotics.

mod group;
mod lattice;
mod matrix;
mod snf;

pub use group::{cokernel, AbelianGroupPresentation, GroupElement};
pub use lattice::{column_span_basis, integer_kernel, solve_exact, solve_exact_matrix};
pub use matrix::{ExactLinError, IntMatrix, RatMatrix};
pub use snf::{rational_inverse, smith_normal_form, SmithDecomposition};
