//! Exact sparse linear algebra over the rationals.

mod echelon;
mod matrix;
mod vector;

pub use echelon::EchelonBasis;
pub use matrix::ExactMatrix;
pub use vector::ExactVector;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type ExactScalar = BigRational;

pub fn scalar_from_i64(v: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(v))
}

pub fn matmul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.matmul(b)
}

pub fn commutator(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.commutator(b)
}

pub fn kron(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.kron(b)
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank(m: &ExactMatrix) -> usize {
    let mut basis = EchelonBasis::new(m.ncols());
    for i in 0..m.nrows() {
        basis.insert(&m.row_vector(i));
    }
    basis.rank()
}

/// Rank of a family of vectors of equal dimension.
pub fn rank_of(dim: usize, vectors: &[ExactVector]) -> usize {
    EchelonBasis::from_vectors(dim, vectors).rank()
}

/// Basis of the right kernel of `m`, itself returned in reduced row echelon
/// form so that the output is canonical.
pub fn nullspace_basis(m: &ExactMatrix) -> Vec<ExactVector> {
    let n = m.ncols();
    let mut basis = EchelonBasis::new(n);
    for i in 0..m.nrows() {
        basis.insert(&m.row_vector(i));
    }
    let rref = basis.to_rref();
    let pivots: Vec<usize> = basis.pivots().collect();
    let mut kernel = Vec::with_capacity(n - pivots.len());
    let mut pivot_iter = pivots.iter().peekable();
    for free in 0..n {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut entries = vec![(free, ExactScalar::one())];
        for row in &rref {
            let val = row.get(free);
            if !val.is_zero() {
                let pivot = row.entries()[0].0;
                entries.push((pivot, -val));
            }
        }
        entries.sort_by_key(|(c, _)| *c);
        kernel.push(ExactVector::from_sorted_unchecked(n, entries));
    }
    EchelonBasis::from_vectors(n, &kernel).to_rref()
}

/// Whether `v` is a rational linear combination of `basis`.
pub fn in_span(v: &ExactVector, basis: &[ExactVector]) -> Result<bool> {
    if let Some(b) = basis.iter().find(|b| b.dim() != v.dim()) {
        return Err(Error::Shape {
            op: "in_span",
            left: (v.dim(), 1),
            right: (b.dim(), 1),
        });
    }
    Ok(EchelonBasis::from_vectors(v.dim(), basis).contains(v))
}

/// Exact inverse by Gauss-Jordan elimination on `[m | I]`.
pub fn inverse(m: &ExactMatrix) -> Result<ExactMatrix> {
    let n = m.nrows();
    if !m.is_square() {
        return Err(Error::Shape {
            op: "inverse",
            left: m.shape(),
            right: m.shape(),
        });
    }
    let mut basis = EchelonBasis::new(2 * n);
    for i in 0..n {
        let mut entries: Vec<_> = m.row(i).to_vec();
        entries.push((n + i, ExactScalar::one()));
        basis.insert(&ExactVector::from_sorted_unchecked(2 * n, entries));
    }
    if basis.pivots().take_while(|p| *p < n).count() != n {
        return Err(Error::domain("matrix is singular"));
    }
    let rows = basis
        .to_rref()
        .into_iter()
        .map(|r| r.iter().filter(|(c, _)| *c >= n).map(|(c, v)| (c - n, v.clone())).collect())
        .collect();
    Ok(ExactMatrix::from_rows_unchecked(n, n, rows))
}
