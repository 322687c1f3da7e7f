//! Highest weight vectors, irreducible bases and the decomposition of the
//! standard module into irreducible sl3-modules.
//!
//! Multiplicities are nullities: the highest weight vectors of type
//! `(r, s, t)` are exactly the kernel of `[L1; L2]` restricted to the shell
//! `V_[s,t]`, so each solve is only `|X_[s,t]|` columns wide.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{shell_size, shell_vertices, TypeTriple, Vertex};
use crate::error::{Error, Result};
use crate::lie::OperatorSet;
use crate::linalg::{nullspace_basis, scalar_from_i64, EchelonBasis, ExactMatrix, ExactScalar, ExactVector};

/// Simultaneous `(H1, H2)` eigenvalue pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Weight {
    pub m1: i64,
    pub m2: i64,
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.m1, self.m2)
    }
}

/// One isotypic component of the standard module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrreducibleBlock {
    pub hwv_type: TypeTriple,
    pub weight: Weight,
    pub dim: u64,
    pub multiplicity: usize,
}

impl fmt::Display for IrreducibleBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {} : {}, {}", self.hwv_type, self.weight, self.dim, self.multiplicity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub d: usize,
    /// Sorted by `(t, m2)` ascending.
    pub blocks: Vec<IrreducibleBlock>,
    pub total: u64,
}

/// `dim W = (m1+1)(m2+1)(m1+m2+2)/2` for highest weight `(m1, m2)`.
pub fn dim_formula(w: Weight) -> Result<u64> {
    if w.m1 < 0 || w.m2 < 0 {
        return Err(Error::domain(format!("weight {w} is not dominant")));
    }
    let (a, b) = (w.m1 as u64, w.m2 as u64);
    Ok((a + 1) * (b + 1) * (a + b + 2) / 2)
}

/// Stacked `[L1; L2]` restricted to the columns of shell `(s, t)` and to the
/// rows of the two target shells.
fn restricted_lowering(ops: &OperatorSet, cols: &[usize], s: usize, t: usize) -> Result<ExactMatrix> {
    let d = ops.d;
    let rows_l1 = if s >= 1 { shell_vertices(d, s - 1, t) } else { Vec::new() };
    let rows_l2 = if t >= 1 { shell_vertices(d, s + 1, t - 1) } else { Vec::new() };
    ops.l1.restrict(&rows_l1, cols).vstack(&ops.l2.restrict(&rows_l2, cols))
}

/// Basis of `{v in V_[s,t] : L1 v = L2 v = 0}`, in reduced echelon form.
pub fn highest_weight_vectors(ops: &OperatorSet, s: usize, t: usize) -> Result<Vec<ExactVector>> {
    shell_size(ops.d, s, t)?;
    let cols = shell_vertices(ops.d, s, t);
    let stacked = restricted_lowering(ops, &cols, s, t)?;
    let n = ops.n();
    Ok(nullspace_basis(&stacked)
        .into_iter()
        .map(|v| v.embed(n, &cols))
        .collect())
}

/// Exact weight of a vector supported on one shell and an `H1`, `H2` eigenvector.
pub fn weight_of(v: &ExactVector, ops: &OperatorSet) -> Result<Weight> {
    let Some(first) = v.support().next() else {
        return Err(Error::precondition("zero vector has no weight"));
    };
    let d = ops.d;
    let ty = Vertex::from_index(d, first).type_triple();
    if v.support().any(|i| Vertex::from_index(d, i).type_triple() != ty) {
        return Err(Error::precondition("vector is not supported on a single shell"));
    }
    let eigen = |h: &ExactMatrix| -> Result<i64> {
        let c = h
            .apply(v)?
            .ratio_to(v)
            .ok_or_else(|| Error::precondition("vector is not a weight vector"))?;
        Ok(c.to_integer().try_into().expect("weight fits in i64"))
    };
    Ok(Weight {
        m1: eigen(&ops.h1)?,
        m2: eigen(&ops.h2)?,
    })
}

/// Ranges of `(i, j)` used to index `R3^k R2^j R1^i v`; `k` always runs up
/// to `m1 + m2 - i - j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IndexBox {
    /// `0 <= i <= m1`, `0 <= j <= m2`.
    Standard,
    /// `0 <= i <= m2`, `0 <= j <= m1`.
    Swapped,
}

impl IndexBox {
    fn bounds(self, w: Weight) -> (i64, i64) {
        match self {
            IndexBox::Standard => (w.m1, w.m2),
            IndexBox::Swapped => (w.m2, w.m1),
        }
    }
}

impl fmt::Display for IndexBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexBox::Standard => write!(f, "i <= m1, j <= m2"),
            IndexBox::Swapped => write!(f, "i <= m2, j <= m1"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IrreducibleBasis {
    pub weight: Weight,
    pub index_box: IndexBox,
    /// Nonzero vectors `R3^k R2^j R1^i v` with their `(i, j, k)`.
    pub vectors: Vec<ExactVector>,
    pub indices: Vec<(u32, u32, u32)>,
    /// Exact rank of `vectors`.
    pub rank: usize,
}

/// Evaluates the family `R3^k R2^j R1^i v` over an index box, dropping zeros.
pub fn basis_family(v: &ExactVector, ops: &OperatorSet, index_box: IndexBox) -> Result<IrreducibleBasis> {
    let weight = weight_of(v, ops)?;
    if weight.m1 < 0 || weight.m2 < 0 {
        return Err(Error::precondition(format!("weight {weight} is not dominant")));
    }
    let (imax, jmax) = index_box.bounds(weight);
    let top = weight.m1 + weight.m2;
    let mut vectors = Vec::new();
    let mut indices = Vec::new();
    let mut vi = v.clone();
    for i in 0..=imax {
        let mut vij = vi.clone();
        for j in 0..=jmax {
            let mut vijk = vij.clone();
            for k in 0..=(top - i - j).max(-1) {
                if vijk.is_zero() {
                    break;
                }
                vectors.push(vijk.clone());
                indices.push((i as u32, j as u32, k as u32));
                if k < top - i - j {
                    vijk = ops.r3.apply(&vijk)?;
                }
            }
            vij = ops.r2.apply(&vij)?;
        }
        vi = ops.r1.apply(&vi)?;
    }
    let rank = rank_by_shell(ops.d, &vectors);
    Ok(IrreducibleBasis {
        weight,
        index_box,
        vectors,
        indices,
        rank,
    })
}

/// Basis of the irreducible module generated by the highest weight vector
/// `v`, over the standard index box, verified independent by exact rank.
pub fn irreducible_basis(v: &ExactVector, ops: &OperatorSet) -> Result<IrreducibleBasis> {
    if !ops.l1.apply(v)?.is_zero() || !ops.l2.apply(v)?.is_zero() {
        return Err(Error::precondition("vector is not annihilated by L1 and L2"));
    }
    let basis = basis_family(v, ops, IndexBox::Standard)?;
    let dim = dim_formula(basis.weight)? as usize;
    if basis.vectors.len() != dim || basis.rank != dim {
        return Err(Error::integrity(format!(
            "irreducible of weight {}: {} vectors of rank {}, expected dimension {dim}",
            basis.weight,
            basis.vectors.len(),
            basis.rank
        )));
    }
    Ok(basis)
}

/// Exact rank of a family of vectors, split by the shell of each vector's
/// support. Families that straddle shells are ranked jointly.
pub fn rank_by_shell(d: usize, vectors: &[ExactVector]) -> usize {
    let shell_of = |v: &ExactVector| -> Option<TypeTriple> {
        let mut it = v.support().map(|i| Vertex::from_index(d, i).type_triple());
        let first = it.next()?;
        it.all(|t| t == first).then_some(first)
    };
    let mut groups: BTreeMap<Option<TypeTriple>, Vec<&ExactVector>> = BTreeMap::new();
    for v in vectors.iter().filter(|v| !v.is_zero()) {
        groups.entry(shell_of(v)).or_default().push(v);
    }
    if groups.contains_key(&None) {
        let dim = vectors.first().map_or(0, ExactVector::dim);
        return EchelonBasis::from_vectors(dim, vectors).rank();
    }
    groups
        .into_par_iter()
        .map(|(_, vs)| {
            let dim = vs[0].dim();
            EchelonBasis::from_vectors(dim, vs).rank()
        })
        .sum()
}

/// `(t, m2)` pairs allowed for a highest weight in dimension `d`.
pub fn block_keys(d: usize) -> Vec<(usize, usize)> {
    (0..=d / 3)
        .flat_map(|t| (0..=(d - 3 * t) / 2).map(move |m2| (t, m2)))
        .collect()
}

fn block_for(d: usize, t: usize, m2: usize, multiplicity: usize) -> Result<IrreducibleBlock> {
    let s = m2 + t;
    let weight = Weight {
        m1: (d - 3 * t - 2 * m2) as i64,
        m2: m2 as i64,
    };
    Ok(IrreducibleBlock {
        hwv_type: TypeTriple::of_shell(d, s, t)?,
        weight,
        dim: dim_formula(weight)?,
        multiplicity,
    })
}

fn check_partition(d: usize, blocks: &[IrreducibleBlock]) -> Result<u64> {
    let total: u64 = blocks.iter().map(|b| b.dim * b.multiplicity as u64).sum();
    let expected = 3u64.pow(d as u32);
    if total != expected {
        return Err(Error::integrity(format!(
            "d={d}: sum of dim * mult is {total}, expected {expected}"
        )));
    }
    Ok(total)
}

/// Decomposes the standard module: one block per admissible `(t, m2)` with
/// nonzero multiplicity, multiplicity computed as an exact nullity.
pub fn decompose(ops: &OperatorSet) -> Result<DecompositionReport> {
    let d = ops.d;
    let blocks = block_keys(d)
        .into_par_iter()
        .map(|(t, m2)| {
            let mult = highest_weight_vectors(ops, m2 + t, t)?.len();
            block_for(d, t, m2, mult)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|b| b.multiplicity > 0)
        .collect::<Vec<_>>();
    let total = check_partition(d, &blocks)?;
    Ok(DecompositionReport { d, blocks, total })
}

/// `(type, weight, dim, mult)` of one block.
pub type ReferenceRow = ((usize, usize, usize), (i64, i64), u64, usize);

/// Published decompositions for `d = 1..=5`, blocks in `(t, m2)` order.
pub const REFERENCE_TABLE: [&[ReferenceRow]; 5] = [
    &[((1, 0, 0), (1, 0), 3, 1)],
    &[((2, 0, 0), (2, 0), 6, 1), ((1, 1, 0), (0, 1), 3, 1)],
    &[((3, 0, 0), (3, 0), 10, 1), ((2, 1, 0), (1, 1), 8, 2), ((1, 1, 1), (0, 0), 1, 1)],
    &[
        ((4, 0, 0), (4, 0), 15, 1),
        ((3, 1, 0), (2, 1), 15, 3),
        ((2, 2, 0), (0, 2), 6, 2),
        ((2, 1, 1), (1, 0), 3, 3),
    ],
    &[
        ((5, 0, 0), (5, 0), 21, 1),
        ((4, 1, 0), (3, 1), 24, 4),
        ((3, 2, 0), (1, 2), 15, 5),
        ((3, 1, 1), (2, 0), 6, 6),
        ((2, 2, 1), (0, 1), 3, 5),
    ],
];

/// The published blocks for `d`, if tabulated.
pub fn reference_blocks(d: usize) -> Option<Vec<IrreducibleBlock>> {
    let rows = REFERENCE_TABLE.get(d.checked_sub(1)?)?;
    Some(
        rows.iter()
            .map(|&((r, s, t), (m1, m2), dim, multiplicity)| IrreducibleBlock {
                hwv_type: TypeTriple { r, s, t },
                weight: Weight { m1, m2 },
                dim,
                multiplicity,
            })
            .collect(),
    )
}

/// Line-by-line differences between a computed report and the reference
/// table; empty when they agree or when `d` is not tabulated.
pub fn diff_against_reference(report: &DecompositionReport) -> Vec<String> {
    let Some(expected) = reference_blocks(report.d) else {
        return Vec::new();
    };
    let mut diffs = Vec::new();
    for k in 0..expected.len().max(report.blocks.len()) {
        match (expected.get(k), report.blocks.get(k)) {
            (Some(e), Some(g)) if e == g => {}
            (Some(e), Some(g)) => diffs.push(format!("expected {e}, got {g}")),
            (Some(e), None) => diffs.push(format!("missing {e}")),
            (None, Some(g)) => diffs.push(format!("unexpected {g}")),
            (None, None) => unreachable!(),
        }
    }
    diffs
}

/// One isotypic component with its highest weight vectors and their bases.
#[derive(Clone, Debug)]
pub struct Component {
    pub block: IrreducibleBlock,
    pub hwvs: Vec<ExactVector>,
    pub bases: Vec<IrreducibleBasis>,
}

/// Full decomposition: every highest weight vector with its irreducible basis.
#[derive(Clone, Debug)]
pub struct ModuleDecomposition {
    pub report: DecompositionReport,
    pub components: Vec<Component>,
}

impl ModuleDecomposition {
    /// All basis vectors of all irreducible copies, component by component.
    pub fn all_vectors(&self) -> impl Iterator<Item = &ExactVector> + '_ {
        self.components
            .iter()
            .flat_map(|c| c.bases.iter().flat_map(|b| b.vectors.iter()))
    }

    /// Exact rank of the union of every irreducible basis.
    pub fn union_rank(&self) -> usize {
        let all: Vec<ExactVector> = self.all_vectors().cloned().collect();
        rank_by_shell(self.report.d, &all)
    }
}

pub fn decompose_with_bases(ops: &OperatorSet) -> Result<ModuleDecomposition> {
    let d = ops.d;
    let mut components = block_keys(d)
        .into_par_iter()
        .map(|(t, m2)| -> Result<Option<Component>> {
            let hwvs = highest_weight_vectors(ops, m2 + t, t)?;
            if hwvs.is_empty() {
                return Ok(None);
            }
            let block = block_for(d, t, m2, hwvs.len())?;
            let bases = hwvs
                .par_iter()
                .map(|v| irreducible_basis(v, ops))
                .collect::<Result<Vec<_>>>()?;
            Ok(Some(Component { block, hwvs, bases }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    components.sort_by_key(|c| (c.block.hwv_type.t, c.block.weight.m2));
    let blocks: Vec<_> = components.iter().map(|c| c.block).collect();
    let total = check_partition(d, &blocks)?;
    Ok(ModuleDecomposition {
        report: DecompositionReport { d, blocks, total },
        components,
    })
}

/// Highest weight vector of type `(d-s-t, s, t)` built by concatenation:
/// the signed permutation word of `(0,1,2)` raises `t`, the word
/// `(1,0) - (0,1)` raises `s`, starting from the base vertex.
pub fn build_hwv_recursive(ops: &OperatorSet, s: usize, t: usize) -> Result<ExactVector> {
    let d = ops.d;
    let ty = TypeTriple::of_shell(d, s, t)?;
    if ty.r < ty.s || ty.s < ty.t {
        return Err(Error::domain(format!("type {ty} violates r >= s >= t")));
    }
    let v = hwv_word(ty);
    if !ops.l1.apply(&v)?.is_zero() || !ops.l2.apply(&v)?.is_zero() {
        return Err(Error::integrity(format!("recursive vector of type {ty} is not annihilated")));
    }
    Ok(v)
}

fn hwv_word(ty: TypeTriple) -> ExactVector {
    let word = |digits: &[u8]| Vertex::new(digits.to_vec()).expect("valid digits").index();
    if ty.t > 0 {
        let mut alt = Vec::new();
        for (perm, sign) in [
            ([0u8, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([1, 0, 2], -1),
            ([2, 1, 0], -1),
        ] {
            alt.push((word(&perm), scalar_from_i64(sign)));
        }
        let prefix = ExactVector::from_entries(27, alt).expect("in range");
        let rest = TypeTriple {
            r: ty.r - 1,
            s: ty.s - 1,
            t: ty.t - 1,
        };
        return prefix.kron(&hwv_word(rest));
    }
    if ty.s > 0 {
        let prefix = ExactVector::from_entries(
            9,
            [(word(&[1, 0]), scalar_from_i64(1)), (word(&[0, 1]), scalar_from_i64(-1))],
        )
        .expect("in range");
        let rest = TypeTriple {
            r: ty.r - 1,
            s: ty.s - 1,
            t: 0,
        };
        return prefix.kron(&hwv_word(rest));
    }
    ExactVector::unit(3usize.pow(ty.r as u32), 0)
}

/// Checks that `R2^j R1^i v` is nonzero for `0 <= i <= m1`, `0 <= j <= m2 + i`
/// and `R1^i R2^j v` is nonzero for `0 <= j <= m2`, `0 <= i <= m1 + j`.
/// Returns the number of words checked and the first vanishing one, if any.
pub fn check_string_nonvanishing(v: &ExactVector, ops: &OperatorSet) -> Result<(usize, Option<String>)> {
    let w = weight_of(v, ops)?;
    let mut checked = 0;
    let mut r1v = v.clone();
    for i in 0..=w.m1 {
        let mut x = r1v.clone();
        for j in 0..=(w.m2 + i) {
            checked += 1;
            if x.is_zero() {
                return Ok((checked, Some(format!("R2^{j} R1^{i} v = 0"))));
            }
            x = ops.r2.apply(&x)?;
        }
        r1v = ops.r1.apply(&r1v)?;
    }
    let mut r2v = v.clone();
    for j in 0..=w.m2 {
        let mut x = r2v.clone();
        for i in 0..=(w.m1 + j) {
            checked += 1;
            if x.is_zero() {
                return Ok((checked, Some(format!("R1^{i} R2^{j} v = 0"))));
            }
            x = ops.r1.apply(&x)?;
        }
        r2v = ops.r2.apply(&r2v)?;
    }
    Ok((checked, None))
}

/// Compares the spans of `{R3^k R2^j R1^i v}` and `{R3^k R1^i R2^j v}` over
/// all `i, j, k >= 0` (finite since the raising operators are nilpotent).
/// Returns `(rank of first, rank of second, rank of union)`.
pub fn compare_spanning_families(v: &ExactVector, ops: &OperatorSet) -> Result<(usize, usize, usize)> {
    let d = ops.d;
    let words = |first: &ExactMatrix, second: &ExactMatrix| -> Result<Vec<ExactVector>> {
        let mut out = Vec::new();
        let mut a = v.clone();
        while !a.is_zero() {
            let mut b = a.clone();
            while !b.is_zero() {
                let mut c = b.clone();
                while !c.is_zero() {
                    out.push(c.clone());
                    c = ops.r3.apply(&c)?;
                }
                b = second.apply(&b)?;
            }
            a = first.apply(&a)?;
        }
        Ok(out)
    };
    let fam1 = words(&ops.r1, &ops.r2)?;
    let fam2 = words(&ops.r2, &ops.r1)?;
    let union: Vec<ExactVector> = fam1.iter().chain(&fam2).cloned().collect();
    Ok((rank_by_shell(d, &fam1), rank_by_shell(d, &fam2), rank_by_shell(d, &union)))
}

/// Projection onto the isotypic component `index` of `decomposition`, along
/// the others: `P = B diag(selected) B^-1` with `B` the full basis.
pub fn isotypic_projection(decomposition: &ModuleDecomposition, index: usize) -> Result<ExactMatrix> {
    let n = 3usize.pow(decomposition.report.d as u32);
    let mut columns = Vec::with_capacity(n);
    let mut selected = Vec::with_capacity(n);
    for (ci, c) in decomposition.components.iter().enumerate() {
        for b in &c.bases {
            for v in &b.vectors {
                columns.push(v.clone());
                selected.push(ci == index);
            }
        }
    }
    let basis = ExactMatrix::from_row_vectors(n, &columns)?.transpose();
    let inv = crate::linalg::inverse(&basis)?;
    let mask = ExactMatrix::diagonal(
        selected
            .iter()
            .map(|s| if *s { scalar_from_i64(1) } else { ExactScalar::from_integer(0.into()) }),
    );
    Ok(&(&basis * &mask) * &inv)
}
