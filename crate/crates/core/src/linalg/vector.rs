use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{scalar_from_i64, ExactScalar};
use crate::error::{Error, Result};

/// Sparse vector over the rationals. Entries are kept sorted by index and no
/// stored entry is zero, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactVector {
    dim: usize,
    entries: Vec<(usize, ExactScalar)>,
}

impl ExactVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    /// Standard basis vector with a one at `index`.
    pub fn unit(dim: usize, index: usize) -> Self {
        assert!(index < dim, "unit index {index} out of range for dim {dim}");
        Self {
            dim,
            entries: vec![(index, ExactScalar::one())],
        }
    }

    /// Builds a vector from (index, value) pairs. Duplicate indices are summed
    /// and zeros dropped.
    pub fn from_entries<I>(dim: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, ExactScalar)>,
    {
        let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (i, v) in entries {
            if i >= dim {
                return Err(Error::Shape {
                    op: "vector entry",
                    left: (i, 0),
                    right: (dim, 0),
                });
            }
            *acc.entry(i).or_insert_with(ExactScalar::zero) += v;
        }
        Ok(Self::from_sorted_unchecked(
            dim,
            acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        ))
    }

    pub fn from_i64(values: &[i64]) -> Self {
        let entries = values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, v)| (i, scalar_from_i64(*v)))
            .collect();
        Self::from_sorted_unchecked(values.len(), entries)
    }

    /// Caller guarantees sorted, unique, in-range, nonzero entries.
    pub(crate) fn from_sorted_unchecked(dim: usize, entries: Vec<(usize, ExactScalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(i, v)| *i < dim && !v.is_zero()));
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(usize, ExactScalar)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &ExactScalar)> + '_ {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> ExactScalar {
        match self.entries.binary_search_by_key(&index, |(i, _)| *i) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zeros(self.dim);
        }
        Self::from_sorted_unchecked(
            self.dim,
            self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        )
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &ExactScalar, other: &ExactVector) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Shape {
                op: "vector axpy",
                left: (self.dim, 1),
                right: (other.dim, 1),
            });
        }
        Ok(Self::from_sorted_unchecked(
            self.dim,
            merge_combine(&self.entries, &other.entries, |a, b| match (a, b) {
                (Some(a), Some(b)) => a + c * b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => c * b,
                (None, None) => unreachable!(),
            }),
        ))
    }

    pub fn add(&self, other: &ExactVector) -> Result<Self> {
        self.axpy(&ExactScalar::one(), other)
    }

    pub fn sub(&self, other: &ExactVector) -> Result<Self> {
        self.axpy(&-ExactScalar::one(), other)
    }

    /// Returns `c` with `self == c * other`, if such a scalar exists.
    /// A zero `other` only matches a zero `self`, with `c = 0`.
    pub fn ratio_to(&self, other: &ExactVector) -> Option<ExactScalar> {
        if self.dim != other.dim {
            return None;
        }
        if other.is_zero() {
            return self.is_zero().then(ExactScalar::zero);
        }
        if self.is_zero() {
            return Some(ExactScalar::zero());
        }
        if self.entries.len() != other.entries.len() {
            return None;
        }
        let c = &self.entries[0].1 / &other.entries[0].1;
        self.entries
            .iter()
            .zip(&other.entries)
            .all(|((i, a), (j, b))| i == j && *a == &c * b)
            .then_some(c)
    }

    pub fn max_abs(&self) -> ExactScalar {
        self.entries
            .iter()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn to_dense(&self) -> Vec<ExactScalar> {
        let mut out = vec![ExactScalar::zero(); self.dim];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    /// Kronecker product of vectors; `self` supplies the most significant index digit.
    pub fn kron(&self, other: &ExactVector) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, a) in &self.entries {
            for (j, b) in &other.entries {
                entries.push((i * other.dim + j, a * b));
            }
        }
        Self::from_sorted_unchecked(self.dim * other.dim, entries)
    }

    /// Keeps only the listed coordinates, reindexed to `0..coords.len()`.
    /// `coords` must be sorted ascending.
    pub fn restrict(&self, coords: &[usize]) -> Self {
        let entries = self
            .entries
            .iter()
            .filter_map(|(i, v)| coords.binary_search(i).ok().map(|pos| (pos, v.clone())))
            .collect();
        Self::from_sorted_unchecked(coords.len(), entries)
    }

    /// Inverse of [`ExactVector::restrict`]: places coordinate `k` at `coords[k]`.
    pub fn embed(&self, dim: usize, coords: &[usize]) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (coords[*k], v.clone()))
            .collect();
        Self::from_sorted_unchecked(dim, entries)
    }
}

impl fmt::Debug for ExactVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactVector(dim={}, [", self.dim)?;
        for (n, (i, v)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}: {v}")?;
        }
        write!(f, "])")
    }
}

/// Linear merge of two sorted sparse entry lists, dropping zero results.
pub(crate) fn merge_combine<F>(
    left: &[(usize, ExactScalar)],
    right: &[(usize, ExactScalar)],
    mut f: F,
) -> Vec<(usize, ExactScalar)>
where
    F: FnMut(Option<&ExactScalar>, Option<&ExactScalar>) -> ExactScalar,
{
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut a, mut b) = (0, 0);
    while a < left.len() || b < right.len() {
        let (idx, val) = match (left.get(a), right.get(b)) {
            (Some((i, x)), Some((j, y))) if i == j => {
                a += 1;
                b += 1;
                (*i, f(Some(x), Some(y)))
            }
            (Some((i, x)), Some((j, _))) if i < j => {
                a += 1;
                (*i, f(Some(x), None))
            }
            (Some((i, x)), None) => {
                a += 1;
                (*i, f(Some(x), None))
            }
            (_, Some((j, y))) => {
                b += 1;
                (*j, f(None, Some(y)))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((idx, val));
        }
    }
    out
}
