//! The Hamming digraph H*(d,3): vertices, arcs, two-way distances, shells
//! and their dual idempotents.
//!
//! Vertices are words over {0,1,2} indexed big-endian in base 3, so the first
//! coordinate is the most significant Kronecker factor. The adjacency matrix
//! acts on column vectors: `A e_x` is the sum of `e_y` over arcs `x -> y`,
//! i.e. `A[y][x] = 1`.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, ExactScalar};
use crate::limits::Limits;

/// A length-d word over {0,1,2}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    coords: Vec<u8>,
}

impl Vertex {
    pub fn new(coords: Vec<u8>) -> Result<Self> {
        if let Some(c) = coords.iter().find(|c| **c > 2) {
            return Err(Error::domain(format!("vertex coordinate {c} is not in {{0,1,2}}")));
        }
        Ok(Self { coords })
    }

    pub fn base(d: usize) -> Self {
        Self { coords: vec![0; d] }
    }

    pub fn from_index(d: usize, mut index: usize) -> Self {
        let mut coords = vec![0u8; d];
        for slot in coords.iter_mut().rev() {
            *slot = (index % 3) as u8;
            index /= 3;
        }
        debug_assert_eq!(index, 0, "vertex index out of range");
        Self { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u8] {
        &self.coords
    }

    pub fn index(&self) -> usize {
        self.coords.iter().fold(0, |acc, c| acc * 3 + *c as usize)
    }

    pub fn type_triple(&self) -> TypeTriple {
        let mut counts = [0usize; 3];
        for c in &self.coords {
            counts[*c as usize] += 1;
        }
        TypeTriple {
            r: counts[0],
            s: counts[1],
            t: counts[2],
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coords {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                '2' => Ok(2),
                other => Err(Error::Parse(format!("vertex {s:?}: {other:?} is not a base-3 digit"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self { coords })
    }
}

/// Census (zeros, ones, twos) of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeTriple {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl TypeTriple {
    /// The type of shell `(s, t)` in dimension `d`.
    pub fn of_shell(d: usize, s: usize, t: usize) -> Result<Self> {
        check_shell(d, s, t)?;
        Ok(Self { r: d - s - t, s, t })
    }

    pub fn d(&self) -> usize {
        self.r + self.s + self.t
    }
}

impl fmt::Display for TypeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.r, self.s, self.t)
    }
}

/// Ordered pair `(d(x,y), d(y,x))` of directed distances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoWayDistance {
    pub forward: usize,
    pub backward: usize,
}

impl TwoWayDistance {
    /// Shell `(s, t)` with this two-way distance from the base vertex, if the
    /// pair is realizable in dimension `d`.
    pub fn shell(&self, d: usize) -> Option<(usize, usize)> {
        let (i, j) = (self.forward as i64, self.backward as i64);
        if 2 * j < i || 2 * i < j || (i + j) % 3 != 0 || (i + j) / 3 > d as i64 {
            return None;
        }
        Some((((2 * j - i) / 3) as usize, ((2 * i - j) / 3) as usize))
    }

    pub fn of_shell(s: usize, t: usize) -> Self {
        Self {
            forward: s + 2 * t,
            backward: 2 * s + t,
        }
    }
}

/// `(i, j)` is a realized two-way distance of H*(d,3).
pub fn in_delta(d: usize, i: usize, j: usize) -> bool {
    TwoWayDistance {
        forward: i,
        backward: j,
    }
    .shell(d)
    .is_some()
}

pub fn two_way_distance(x: &Vertex, y: &Vertex) -> Result<TwoWayDistance> {
    if x.len() != y.len() {
        return Err(Error::Shape {
            op: "two_way_distance",
            left: (x.len(), 1),
            right: (y.len(), 1),
        });
    }
    let (mut s, mut t) = (0, 0);
    for (a, b) in x.coords.iter().zip(&y.coords) {
        match (3 + b - a) % 3 {
            1 => s += 1,
            2 => t += 1,
            _ => {}
        }
    }
    Ok(TwoWayDistance::of_shell(s, t))
}

fn check_shell(d: usize, s: usize, t: usize) -> Result<()> {
    if s + t > d {
        return Err(Error::domain(format!("shell (s={s}, t={t}) does not fit d={d}")));
    }
    Ok(())
}

/// `|X_[s,t]| = d! / (r! s! t!)`.
pub fn shell_size(d: usize, s: usize, t: usize) -> Result<u64> {
    check_shell(d, s, t)?;
    Ok(binomial(d as u64, s as u64) * binomial((d - s) as u64, t as u64))
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// All shells `(s, t)` with `s + t <= d`, ordered by `(s, t)`.
pub fn shells(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=d).flat_map(move |s| (0..=d - s).map(move |t| (s, t)))
}

/// Sorted vertex indices of shell `(s, t)`; empty for an invalid shell.
pub fn shell_vertices(d: usize, s: usize, t: usize) -> Vec<usize> {
    if s + t > d {
        return Vec::new();
    }
    (0..3usize.pow(d as u32))
        .filter(|&idx| {
            let tt = Vertex::from_index(d, idx).type_triple();
            tt.s == s && tt.t == t
        })
        .collect()
}

/// Adjacency matrix of H*(d,3) in the column convention `A[y][x] = 1` iff
/// `x -> y`. For `d = 0` this is the 1x1 zero matrix.
pub fn adjacency(d: usize, limits: &Limits) -> Result<ExactMatrix> {
    limits.check_vertex_d(d)?;
    let n = 3usize.pow(d as u32);
    let mut triplets = Vec::with_capacity(n * d);
    for x in 0..n {
        let vx = Vertex::from_index(d, x);
        for pos in 0..d {
            let mut coords = vx.coords.clone();
            coords[pos] = (coords[pos] + 1) % 3;
            let y = Vertex { coords }.index();
            triplets.push((y, x, ExactScalar::one()));
        }
    }
    ExactMatrix::from_triplets(n, n, triplets)
}

/// Diagonal 0/1 projector onto a shell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellProjector {
    pub s: usize,
    pub t: usize,
    pub matrix: ExactMatrix,
}

/// `E*_[s,t]`; the zero matrix when `(s, t)` is not a shell of H*(d,3).
pub fn dual_idempotent(d: usize, s: isize, t: isize, limits: &Limits) -> Result<ShellProjector> {
    limits.check_vertex_d(d)?;
    let n = 3usize.pow(d as u32);
    let valid = s >= 0 && t >= 0 && (s + t) as usize <= d;
    let matrix = if valid {
        let verts = shell_vertices(d, s as usize, t as usize);
        ExactMatrix::from_triplets(n, n, verts.into_iter().map(|i| (i, i, ExactScalar::one())))?
    } else {
        ExactMatrix::zeros(n, n)
    };
    Ok(ShellProjector {
        s: s.max(0) as usize,
        t: t.max(0) as usize,
        matrix,
    })
}

/// Adjacency of the undirected Hamming graph H(d,3), built directly from
/// "differs in exactly one coordinate".
pub fn undirected_adjacency(d: usize, limits: &Limits) -> Result<ExactMatrix> {
    limits.check_vertex_d(d)?;
    let n = 3usize.pow(d as u32);
    let mut triplets = Vec::with_capacity(2 * n * d);
    for x in 0..n {
        let vx = Vertex::from_index(d, x);
        for pos in 0..d {
            for shift in 1..3u8 {
                let mut coords = vx.coords.clone();
                coords[pos] = (coords[pos] + shift) % 3;
                triplets.push((Vertex { coords }.index(), x, ExactScalar::one()));
            }
        }
    }
    ExactMatrix::from_triplets(n, n, triplets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar_from_i64;

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn vertex_index_roundtrip() {
        let v: Vertex = "0120".parse().unwrap();
        assert_eq!(v.index(), 15);
        assert_eq!(Vertex::from_index(4, 15), v);
        assert_eq!(v.to_string(), "0120");
        assert!("013".parse::<Vertex>().is_err());
        assert_eq!(v.type_triple(), TypeTriple { r: 2, s: 1, t: 1 });
    }

    #[test]
    fn adjacency_d1_is_cyclic_shift() {
        let a = adjacency(1, &lim()).unwrap();
        // 0 -> 1 -> 2 -> 0
        let expected = ExactMatrix::from_i64_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(a, expected);
    }

    #[test]
    fn adjacency_d0_is_zero() {
        assert_eq!(adjacency(0, &lim()).unwrap(), ExactMatrix::zeros(1, 1));
    }

    #[test]
    fn adjacency_row_sums_and_normality() {
        for d in 1..=3 {
            let a = adjacency(d, &lim()).unwrap();
            assert!(a.row_sums().iter().all(|s| *s == scalar_from_i64(d as i64)));
            let at = a.transpose();
            assert_eq!(&a * &at, &at * &a);
        }
    }

    #[test]
    fn adjacency_respects_cap() {
        let tight = Limits {
            max_vertex_d: 2,
            ..Limits::default()
        };
        assert!(matches!(adjacency(3, &tight), Err(Error::Resource { .. })));
    }

    #[test]
    fn two_way_distance_examples() {
        let x: Vertex = "000".parse().unwrap();
        assert_eq!(
            two_way_distance(&x, &x).unwrap(),
            TwoWayDistance { forward: 0, backward: 0 }
        );
        let y: Vertex = "012".parse().unwrap();
        assert_eq!(
            two_way_distance(&x, &y).unwrap(),
            TwoWayDistance { forward: 3, backward: 3 }
        );
        assert!(two_way_distance(&x, &"01".parse().unwrap()).is_err());
    }

    #[test]
    fn shell_sizes() {
        assert_eq!(shell_size(5, 0, 0).unwrap(), 1);
        assert_eq!(shell_size(3, 1, 1).unwrap(), 6);
        assert!(shell_size(2, 2, 1).is_err());
        for d in 0..=8 {
            let total: u64 = shells(d).map(|(s, t)| shell_size(d, s, t).unwrap()).sum();
            assert_eq!(total, 3u64.pow(d as u32));
        }
    }

    #[test]
    fn delta_membership_matches_shells() {
        for d in 0..=5 {
            let mut realized: Vec<(usize, usize)> = Vec::new();
            for i in 0..=2 * d {
                for j in 0..=2 * d {
                    if in_delta(d, i, j) {
                        realized.push((i, j));
                    }
                }
            }
            let mut expected: Vec<_> = shells(d).map(|(s, t)| (s + 2 * t, 2 * s + t)).collect();
            realized.sort();
            expected.sort();
            assert_eq!(realized, expected);
        }
    }

    #[test]
    fn dual_idempotents_partition_identity() {
        let d = 3;
        let n = 27;
        let mut sum = ExactMatrix::zeros(n, n);
        let projectors: Vec<_> = shells(d)
            .map(|(s, t)| dual_idempotent(d, s as isize, t as isize, &lim()).unwrap())
            .collect();
        for p in &projectors {
            sum = &sum + &p.matrix;
            assert_eq!(&p.matrix * &p.matrix, p.matrix);
            assert_eq!(p.matrix.trace(), scalar_from_i64(shell_size(d, p.s, p.t).unwrap() as i64));
        }
        assert_eq!(sum, ExactMatrix::identity(n));
        for (a, p) in projectors.iter().enumerate() {
            for q in &projectors[a + 1..] {
                assert!((&p.matrix * &q.matrix).is_zero());
            }
        }
        assert_eq!(
            dual_idempotent(d, 1, 1, &lim()).unwrap().matrix.trace(),
            scalar_from_i64(6)
        );
        assert!(dual_idempotent(d, -1, 0, &lim()).unwrap().matrix.is_zero());
        assert!(dual_idempotent(d, 2, 2, &lim()).unwrap().matrix.is_zero());
    }

    #[test]
    fn base_shell_projector_is_tensor_power_of_e11() {
        let e11 = ExactMatrix::unit(3, 3, 0, 0);
        let expected = ExactMatrix::kron_all([&e11, &e11, &e11]);
        assert_eq!(dual_idempotent(3, 0, 0, &lim()).unwrap().matrix, expected);
    }
}
