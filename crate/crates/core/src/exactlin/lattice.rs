use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::{ExactLinError, IntMatrix, RatMatrix};
use super::snf::{rational_inverse_rat, smith_normal_form, unimodular_inverse};

/// Basis (as columns) of the integer kernel `{ x : M x = 0 }`.
///
/// With `U M V = S`, the kernel is spanned by the columns of `V` whose
/// corresponding diagonal entry of `S` vanishes (or lies beyond the diagonal).
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let dec = smith_normal_form(m);
    let diag = dec.diagonal();
    let kernel_cols: Vec<usize> = (0..m.cols())
        .filter(|&j| j >= diag.len() || diag[j].is_zero())
        .collect();
    IntMatrix::from_fn(m.cols(), kernel_cols.len(), |i, j| {
        dec.v.get(i, kernel_cols[j]).clone()
    })
}

/// Basis (as columns) of the lattice spanned by the columns of `m`.
///
/// With `U M V = S`, the column span equals the span of `U^{-1} S`, whose
/// nonzero columns form a basis.
pub fn column_span_basis(m: &IntMatrix) -> IntMatrix {
    let dec = smith_normal_form(m);
    let uinv = unimodular_inverse(&dec.u);
    let diag = dec.diagonal();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    IntMatrix::from_fn(m.rows(), rank, |i, j| {
        // column j of U^{-1} * S = diag[j] * (column j of U^{-1})
        uinv.get(i, j) * &diag[j]
    })
}

/// Exact solution of `A x = b` for square nonsingular `A`, over the rationals.
pub fn solve_exact(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<BigRational>, ExactLinError> {
    if !a.is_square() || a.rows() != b.len() {
        return Err(ExactLinError::DimensionMismatch("solve_exact".into()));
    }
    let inv = rational_inverse_rat(&a.to_rational())?;
    Ok((0..a.rows())
        .map(|i| {
            let mut acc = BigRational::zero();
            for k in 0..a.cols() {
                acc += inv.get(i, k) * BigRational::from_integer(b[k].clone());
            }
            acc
        })
        .collect())
}

/// Exact solution of `A X = B` for square nonsingular `A`.
pub fn solve_exact_matrix(a: &IntMatrix, b: &IntMatrix) -> Result<RatMatrix, ExactLinError> {
    if !a.is_square() || a.rows() != b.rows() {
        return Err(ExactLinError::DimensionMismatch("solve_exact_matrix".into()));
    }
    let inv = rational_inverse_rat(&a.to_rational())?;
    Ok(inv.mul(&b.to_rational()))
}
