use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{ExactLinError, IntMatrix, RatMatrix};

/// Smith normal form `U * M * V = S` with `U`, `V` unimodular and `S`
/// diagonal with nonnegative entries `d_1 | d_2 | ...`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.s.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Locate the pivot: nonzero entry of smallest absolute value in the
/// submatrix `s[k.., k..]`, ties broken by lowest row then column index.
fn find_pivot(s: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in k..s.rows() {
        for j in k..s.cols() {
            if s.get(i, j).is_zero() {
                continue;
            }
            match best {
                None => best = Some((i, j)),
                Some((bi, bj)) => {
                    if s.get(i, j).abs() < s.get(bi, bj).abs() {
                        best = Some((i, j));
                    }
                }
            }
        }
    }
    best
}

/// Smith normal form over `Z`, deterministic for a given input.
///
/// Pivoting picks the smallest nonzero absolute value (lowest index on ties),
/// which keeps coefficient growth modest on the matrices we care about.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    assert!(m.rows() > 0 && m.cols() > 0, "smith_normal_form of empty matrix");
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let n = m.rows().min(m.cols());

    for k in 0..n {
        'pivot: loop {
            let Some((pi, pj)) = find_pivot(&s, k) else {
                break 'pivot; // remaining submatrix is zero
            };
            s.swap_rows(k, pi);
            u.swap_rows(k, pi);
            s.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..s.rows() {
                if !s.get(i, k).is_zero() {
                    let q = s.get(i, k) / s.get(k, k);
                    if !q.is_zero() {
                        let f = -q;
                        s.add_multiple_of_row(i, k, &f);
                        u.add_multiple_of_row(i, k, &f);
                    }
                    if !s.get(i, k).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in k + 1..s.cols() {
                if !s.get(k, j).is_zero() {
                    let q = s.get(k, j) / s.get(k, k);
                    if !q.is_zero() {
                        let f = -q;
                        s.add_multiple_of_col(j, k, &f);
                        v.add_multiple_of_col(j, k, &f);
                    }
                    if !s.get(k, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot;
            }
            // Divisibility pass: fold in any submatrix entry the pivot does
            // not divide, then redo the elimination at this k.
            let pivot = s.get(k, k).clone();
            let mut fixed = true;
            'scan: for i in k + 1..s.rows() {
                for j in k + 1..s.cols() {
                    if !(s.get(i, j) % &pivot).is_zero() {
                        let one = BigInt::one();
                        s.add_multiple_of_row(k, i, &one);
                        u.add_multiple_of_row(k, i, &one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break 'pivot;
            }
        }
    }

    for k in 0..n {
        if s.get(k, k).is_negative() {
            s.negate_row(k);
            u.negate_row(k);
        }
    }

    SmithDecomposition { u, s, v }
}

/// Exact inverse of a square integer matrix, as a rational matrix.
pub fn rational_inverse(m: &IntMatrix) -> Result<RatMatrix, ExactLinError> {
    if !m.is_square() {
        return Err(ExactLinError::DimensionMismatch(
            "inverse of non-square matrix".into(),
        ));
    }
    rational_inverse_rat(&m.to_rational())
}

/// Gauss-Jordan inverse over exact rationals.
pub(crate) fn rational_inverse_rat(m: &RatMatrix) -> Result<RatMatrix, ExactLinError> {
    let n = m.rows();
    let mut a = m.clone();
    let mut inv = RatMatrix::identity(n);
    for k in 0..n {
        let pivot_row = (k..n)
            .find(|&i| !a.get(i, k).is_zero())
            .ok_or(ExactLinError::SingularMatrix)?;
        if pivot_row != k {
            for j in 0..n {
                let x = a.get(k, j).clone();
                let y = a.get(pivot_row, j).clone();
                a.set(k, j, y);
                a.set(pivot_row, j, x);
                let x = inv.get(k, j).clone();
                let y = inv.get(pivot_row, j).clone();
                inv.set(k, j, y);
                inv.set(pivot_row, j, x);
            }
        }
        let p = a.get(k, k).clone();
        for j in 0..n {
            let v = a.get(k, j) / &p;
            a.set(k, j, v);
            let v = inv.get(k, j) / &p;
            inv.set(k, j, v);
        }
        for i in 0..n {
            if i == k || a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k).clone();
            for j in 0..n {
                let v = a.get(i, j) - &f * a.get(k, j);
                a.set(i, j, v);
                let v = inv.get(i, j) - &f * inv.get(k, j);
                inv.set(i, j, v);
            }
        }
    }
    Ok(inv)
}

/// Inverse of a unimodular integer matrix, returned over the integers.
pub(crate) fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let inv = rational_inverse(m).expect("unimodular matrix is invertible");
    inv.to_integer()
        .expect("inverse of a unimodular matrix is integral")
}

#[allow(unused)]
fn _rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
