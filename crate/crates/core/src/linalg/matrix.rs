use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::vector::{merge_combine, ExactVector};
use super::{scalar_from_i64, ExactScalar};
use crate::error::{Error, Result};

type Row = Vec<(usize, ExactScalar)>;

/// Row count above which products are split across the rayon pool.
const PAR_ROWS: usize = 256;

/// Sparse rational matrix in row-compressed form.
///
/// Each row holds `(col, value)` pairs sorted by column with no stored zeros,
/// so the derived equality coincides with equality of the entry maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Row>,
}

impl ExactMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal((0..n).map(|_| ExactScalar::one()).collect::<Vec<_>>())
    }

    pub fn diagonal<I: IntoIterator<Item = ExactScalar>>(values: I) -> Self {
        let rows: Vec<Row> = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v)] })
            .collect();
        let n = rows.len();
        Self {
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Matrix unit: a single one at `(i, j)`.
    pub fn unit(nrows: usize, ncols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        m.rows[i].push((j, ExactScalar::one()));
        m
    }

    /// Builds from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(nrows: usize, ncols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, ExactScalar)>,
    {
        let mut acc: Vec<BTreeMap<usize, ExactScalar>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in triplets {
            if i >= nrows || j >= ncols {
                return Err(Error::Shape {
                    op: "matrix entry",
                    left: (i, j),
                    right: (nrows, ncols),
                });
            }
            *acc[i].entry(j).or_insert_with(ExactScalar::zero) += v;
        }
        let rows = acc
            .into_iter()
            .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Ok(Self { nrows, ncols, rows })
    }

    /// Dense integer literal, mostly for tests and small fixed matrices.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged matrix literal");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != 0)
                    .map(|(j, v)| (j, scalar_from_i64(*v)))
                    .collect()
            })
            .collect();
        Self { nrows, ncols, rows }
    }

    pub(crate) fn from_rows_unchecked(nrows: usize, ncols: usize, rows: Vec<Row>) -> Self {
        debug_assert_eq!(rows.len(), nrows);
        Self { nrows, ncols, rows }
    }

    /// Stacks vectors as the rows of a matrix.
    pub fn from_row_vectors(ncols: usize, vectors: &[ExactVector]) -> Result<Self> {
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.dim() != ncols {
                return Err(Error::Shape {
                    op: "row stack",
                    left: (1, v.dim()),
                    right: (1, ncols),
                });
            }
            rows.push(v.entries().to_vec());
        }
        Ok(Self {
            nrows: vectors.len(),
            ncols,
            rows,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.nrows, self.ncols)
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, ExactScalar)] {
        &self.rows[i]
    }

    pub fn row_vector(&self, i: usize) -> ExactVector {
        ExactVector::from_sorted_unchecked(self.ncols, self.rows[i].clone())
    }

    pub fn get(&self, i: usize, j: usize) -> ExactScalar {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => ExactScalar::zero(),
        }
    }

    /// All stored entries in (row, col) order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<Row> = vec![Vec::new(); self.ncols];
        for (i, j, v) in self.triplets() {
            rows[j].push((i, v.clone()));
        }
        Self {
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.iter().all(|(j, _)| *j == i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.nrows.min(self.ncols))
            .map(|i| self.get(i, i))
            .fold(ExactScalar::zero(), |acc, v| acc + v)
    }

    pub fn row_sums(&self) -> Vec<ExactScalar> {
        self.rows
            .iter()
            .map(|r| r.iter().fold(ExactScalar::zero(), |acc, (_, v)| acc + v))
            .collect()
    }

    /// Largest absolute entry; zero for the zero matrix.
    pub fn max_abs(&self) -> ExactScalar {
        self.triplets()
            .map(|(_, _, v)| v.abs())
            .max()
            .unwrap_or_else(ExactScalar::zero)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
            .collect();
        Self {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&scalar_from_i64(c))
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn axpy(&self, c: &ExactScalar, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "axpy")?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                merge_combine(a, b, |x, y| match (x, y) {
                    (Some(x), Some(y)) => x + c * y,
                    (Some(x), None) => x.clone(),
                    (None, Some(y)) => c * y,
                    (None, None) => unreachable!(),
                })
            })
            .collect();
        Ok(Self {
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.axpy(&ExactScalar::one(), other)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.axpy(&-ExactScalar::one(), other)
    }

    /// Exact product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.nrows {
            return Err(Error::Shape {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ncols = other.ncols;
        let row_product = |acc: &mut Accumulator, row: &Row| -> Row {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    acc.add(*j, a * b);
                }
            }
            acc.drain()
        };
        let rows: Vec<Row> = if self.nrows >= PAR_ROWS {
            self.rows
                .par_iter()
                .map_init(|| Accumulator::new(ncols), |acc, row| row_product(acc, row))
                .collect()
        } else {
            let mut acc = Accumulator::new(ncols);
            self.rows.iter().map(|row| row_product(&mut acc, row)).collect()
        };
        Ok(Self {
            nrows: self.nrows,
            ncols,
            rows,
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &ExactVector) -> Result<ExactVector> {
        if self.ncols != v.dim() {
            return Err(Error::Shape {
                op: "apply",
                left: self.shape(),
                right: (v.dim(), 1),
            });
        }
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, row)| {
                let s = sparse_dot(row, v.entries());
                (!s.is_zero()).then_some((i, s))
            })
            .collect();
        Ok(ExactVector::from_sorted_unchecked(self.nrows, entries))
    }

    /// `[self, other] = self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        if !self.is_square() || self.shape() != other.shape() {
            return Err(Error::Shape {
                op: "commutator",
                left: self.shape(),
                right: other.shape(),
            });
        }
        self.matmul(other)?.try_sub(&other.matmul(self)?)
    }

    /// Kronecker product; `self` indexes the most significant digit, i.e. the
    /// entry at `(i * b.nrows + k, j * b.ncols + l)` is `a[i,j] * b[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let nrows = self.nrows * other.nrows;
        let ncols = self.ncols * other.ncols;
        let mut rows: Vec<Row> = Vec::with_capacity(nrows);
        for arow in &self.rows {
            for brow in &other.rows {
                let mut row = Vec::with_capacity(arow.len() * brow.len());
                for (j, a) in arow {
                    for (l, b) in brow {
                        row.push((j * other.ncols + l, a * b));
                    }
                }
                rows.push(row);
            }
        }
        Self { nrows, ncols, rows }
    }

    /// Kronecker product of a sequence; the first factor is most significant.
    /// An empty sequence yields the 1x1 identity.
    pub fn kron_all<'a, I: IntoIterator<Item = &'a ExactMatrix>>(factors: I) -> Self {
        factors
            .into_iter()
            .fold(Self::identity(1), |acc, m| acc.kron(m))
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape {
                op: "pow",
                left: self.shape(),
                right: self.shape(),
            });
        }
        let mut out = Self::identity(self.nrows);
        for _ in 0..k {
            out = out.matmul(self)?;
        }
        Ok(out)
    }

    /// Submatrix on the given (sorted) row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let new_rows = rows
            .iter()
            .map(|&i| {
                self.rows[i]
                    .iter()
                    .filter_map(|(j, v)| cols.binary_search(j).ok().map(|p| (p, v.clone())))
                    .collect()
            })
            .collect();
        Self {
            nrows: rows.len(),
            ncols: cols.len(),
            rows: new_rows,
        }
    }

    /// Vertical stack `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::Shape {
                op: "vstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(Self {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// Row-major flattening: entry `(i, j)` lands at `i * ncols + j`.
    pub fn flatten(&self) -> ExactVector {
        let entries = self
            .triplets()
            .map(|(i, j, v)| (i * self.ncols + j, v.clone()))
            .collect();
        ExactVector::from_sorted_unchecked(self.nrows * self.ncols, entries)
    }

    pub fn unflatten(v: &ExactVector, nrows: usize, ncols: usize) -> Result<Self> {
        if v.dim() != nrows * ncols {
            return Err(Error::Shape {
                op: "unflatten",
                left: (v.dim(), 1),
                right: (nrows, ncols),
            });
        }
        let mut rows: Vec<Row> = vec![Vec::new(); nrows];
        for (k, val) in v.iter() {
            rows[k / ncols].push((k % ncols, val.clone()));
        }
        Ok(Self { nrows, ncols, rows })
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> ExactVector {
        let entries = self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                r.binary_search_by_key(&j, |(c, _)| *c)
                    .ok()
                    .map(|p| (i, r[p].1.clone()))
            })
            .collect();
        ExactVector::from_sorted_unchecked(self.nrows, entries)
    }

    /// Text dump: header `nrows ncols nnz`, then one `row col num/den` line
    /// per stored entry in (row, col) order.
    pub fn to_dump(&self) -> String {
        let mut out = format!("{} {} {}\n", self.nrows, self.ncols, self.nnz());
        for (i, j, v) in self.triplets() {
            out.push_str(&format!("{i} {j} {}/{}\n", v.numer(), v.denom()));
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix dump".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [nrows, ncols, nnz] = dims[..] else {
            return Err(Error::Parse(format!("header must be `nrows ncols nnz`, got {header:?}")));
        };
        let mut triplets = Vec::with_capacity(nnz);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [i, j, q] = parts[..] else {
                return Err(Error::Parse(format!("bad entry line {line:?}")));
            };
            let parse_idx = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index {t:?}")))
            };
            triplets.push((parse_idx(i)?, parse_idx(j)?, parse_scalar(q)?));
        }
        if triplets.len() != nnz {
            return Err(Error::Parse(format!(
                "header declares {nnz} entries, found {}",
                triplets.len()
            )));
        }
        Self::from_triplets(nrows, ncols, triplets)
    }
}

fn parse_scalar(text: &str) -> Result<ExactScalar> {
    let bad = || Error::Parse(format!("bad rational {text:?}"));
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(ExactScalar::new(n, d))
}

pub(crate) fn sparse_dot(a: &[(usize, ExactScalar)], b: &[(usize, ExactScalar)]) -> ExactScalar {
    let mut acc = ExactScalar::zero();
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].0.cmp(&b[y].0) {
            std::cmp::Ordering::Less => x += 1,
            std::cmp::Ordering::Greater => y += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[x].1 * &b[y].1;
                x += 1;
                y += 1;
            }
        }
    }
    acc
}

/// Dense scratch row reused across the rows of a product.
struct Accumulator {
    slots: Vec<Option<ExactScalar>>,
    touched: Vec<usize>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Self {
            slots: vec![None; n],
            touched: Vec::new(),
        }
    }

    fn add(&mut self, j: usize, v: ExactScalar) {
        match &mut self.slots[j] {
            Some(x) => *x += v,
            slot @ None => {
                *slot = Some(v);
                self.touched.push(j);
            }
        }
    }

    fn drain(&mut self) -> Row {
        self.touched.sort_unstable();
        let mut row = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            if let Some(v) = self.slots[j].take() {
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
        }
        self.touched.clear();
        row
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix({}x{}, nnz={})", self.nrows, self.ncols, self.nnz())?;
        if self.nrows <= 9 && self.ncols <= 9 {
            for i in 0..self.nrows {
                write!(f, "\n  [")?;
                for j in 0..self.ncols {
                    write!(f, "{:>4}", self.get(i, j).to_string())?;
                }
                write!(f, " ]")?;
            }
        }
        Ok(())
    }
}

// Operator sugar for conforming shapes; these panic on mismatch. Use the
// `try_*` / `matmul` methods where shapes are not known statically.
impl Add for &ExactMatrix {
    type Output = ExactMatrix;
    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_add(rhs).expect("matrix addition shape mismatch")
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;
    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.try_sub(rhs).expect("matrix subtraction shape mismatch")
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;
    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.matmul(rhs).expect("matrix product shape mismatch")
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;
    fn neg(self) -> ExactMatrix {
        self.scale(&-ExactScalar::one())
    }
}
