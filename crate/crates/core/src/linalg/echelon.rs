//! Fraction-free row echelon basis.
//!
//! Rows are stored as primitive integer vectors (content 1, positive leading
//! entry) keyed by their leading column. Elimination against a pivot row uses
//! the integer combination `b*cand - a*row` scaled by `gcd(a, b)`, followed by
//! division by the content, so no rational arithmetic happens until a reduced
//! echelon form is requested.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactScalar, ExactVector};

pub(crate) type IntRow = Vec<(usize, BigInt)>;

#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: BTreeMap<usize, IntRow>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn from_vectors<'a, I>(dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = &'a ExactVector>,
    {
        let mut basis = Self::new(dim);
        for v in vectors {
            basis.insert(v);
        }
        basis
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Leading columns of the stored rows, ascending.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: &ExactVector) -> bool {
        assert_eq!(v.dim(), self.dim, "echelon insert dimension mismatch");
        let residual = self.reduce_int(to_primitive(v));
        self.insert_reduced(residual)
    }

    /// Inserts a residual previously returned by [`EchelonBasis::residual`]
    /// against this same basis state. Returns `true` when the rank grew.
    pub(crate) fn insert_reduced(&mut self, residual: IntRow) -> bool {
        match residual.first() {
            None => false,
            Some(&(lead, _)) => {
                // A residual computed against an older snapshot may now hit a
                // pivot added since; finish the reduction.
                if self.rows.contains_key(&lead) {
                    let again = self.reduce_int(residual);
                    return self.insert_reduced(again);
                }
                self.rows.insert(lead, residual);
                true
            }
        }
    }

    /// Residual of `v` after elimination; empty iff `v` is in the span.
    pub(crate) fn residual(&self, v: &ExactVector) -> IntRow {
        self.reduce_int(to_primitive(v))
    }

    pub fn contains(&self, v: &ExactVector) -> bool {
        v.dim() == self.dim && self.residual(v).is_empty()
    }

    fn reduce_int(&self, mut cand: IntRow) -> IntRow {
        while let Some((lead, a)) = cand.first().cloned() {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let b = &row[0].1;
            let g = a.gcd(b);
            let scale_cand = b / &g;
            let scale_row = &a / &g;
            cand = combine(&scale_cand, &cand, &scale_row, row);
            make_primitive(&mut cand);
        }
        cand
    }

    /// Basis of the span in reduced row echelon form (leading entries one),
    /// ordered by leading column.
    pub fn to_rref(&self) -> Vec<ExactVector> {
        let mut reduced: BTreeMap<usize, IntRow> = BTreeMap::new();
        for (&pivot, row) in self.rows.iter().rev() {
            let mut row = row.clone();
            let targets: Vec<usize> = row
                .iter()
                .skip(1)
                .map(|(c, _)| *c)
                .filter(|c| reduced.contains_key(c))
                .collect();
            for col in targets {
                let other = &reduced[&col];
                let Ok(pos) = row.binary_search_by_key(&col, |(c, _)| *c) else {
                    continue;
                };
                let a = row[pos].1.clone();
                let b = &other[0].1;
                let g = a.gcd(b);
                row = combine(&(b / &g), &row, &(&a / &g), other);
                make_primitive(&mut row);
            }
            debug_assert_eq!(row[0].0, pivot);
            reduced.insert(pivot, row);
        }
        reduced
            .into_values()
            .map(|row| {
                let lead = ExactScalar::from_integer(row[0].1.clone());
                let entries = row
                    .into_iter()
                    .map(|(c, v)| (c, ExactScalar::from_integer(v) / &lead))
                    .collect();
                ExactVector::from_sorted_unchecked(self.dim, entries)
            })
            .collect()
    }
}

/// `x * left - y * right`, dropping zeros.
fn combine(x: &BigInt, left: &IntRow, y: &BigInt, right: &IntRow) -> IntRow {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let (mut a, mut b) = (0, 0);
    let x_is_one = x.is_one();
    while a < left.len() || b < right.len() {
        let (col, val) = match (left.get(a), right.get(b)) {
            (Some((i, p)), Some((j, q))) if i == j => {
                a += 1;
                b += 1;
                (*i, if x_is_one { p - y * q } else { x * p - y * q })
            }
            (Some((i, p)), Some((j, _))) if i < j => {
                a += 1;
                (*i, if x_is_one { p.clone() } else { x * p })
            }
            (Some((i, p)), None) => {
                a += 1;
                (*i, if x_is_one { p.clone() } else { x * p })
            }
            (_, Some((j, q))) => {
                b += 1;
                (*j, -(y * q))
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

/// Divides out the content and makes the leading entry positive.
fn make_primitive(row: &mut IntRow) {
    let Some(first) = row.first() else {
        return;
    };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let negate = first.1.is_negative();
    if g.is_one() && !negate {
        return;
    }
    for (_, v) in row.iter_mut() {
        if !g.is_one() {
            *v = &*v / &g;
        }
        if negate {
            *v = -&*v;
        }
    }
}

/// Clears denominators and normalizes to a primitive integer row.
pub(crate) fn to_primitive(v: &ExactVector) -> IntRow {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let mut row: IntRow = v
        .iter()
        .map(|(c, q)| (c, q.numer() * (&lcm / q.denom())))
        .collect();
    make_primitive(&mut row);
    row
}
