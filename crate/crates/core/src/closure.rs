//! The Terwilliger algebra as an explicit linear span of flattened matrices,
//! computed by multiplicative closure.
//!
//! Closure runs breadth first from `{I} ∪ generators`. Each newly found
//! element is multiplied on the left by every generator; products already in
//! the span are dropped. Left multiples suffice: every word in the
//! generators is reached from `I` by left multiplication, and if `g x` lies
//! in the span of earlier elements then so do all its left multiples.

use num_integer::binomial;
use rayon::prelude::*;

use crate::digraph::{shells, Vertex};
use crate::error::{Error, Result};
use crate::lie::{build_operators, OperatorSet};
use crate::limits::Limits;
use crate::linalg::{EchelonBasis, ExactMatrix, ExactVector};

/// A basis of the unital algebra generated by `generators`.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    n: usize,
    generators: Vec<ExactMatrix>,
    echelon: EchelonBasis,
    members: Vec<ExactMatrix>,
}

impl AlgebraBasis {
    /// Side length of the matrices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }

    pub fn generators(&self) -> &[ExactMatrix] {
        &self.generators
    }

    /// The products that raised the rank, in discovery order. They form a
    /// basis, not in echelon form.
    pub fn members(&self) -> &[ExactMatrix] {
        &self.members
    }

    /// Flattened basis in reduced row echelon form.
    pub fn basis(&self) -> Vec<ExactVector> {
        self.echelon.to_rref()
    }

    pub fn contains(&self, m: &ExactMatrix) -> Result<bool> {
        if m.shape() != (self.n, self.n) {
            return Err(Error::Shape {
                op: "algebra membership",
                left: (self.n, self.n),
                right: m.shape(),
            });
        }
        Ok(self.echelon.contains(&m.flatten()))
    }

    /// True iff both bases span the same subspace.
    pub fn same_span(&self, other: &AlgebraBasis) -> bool {
        self.n == other.n && self.dim() == other.dim() && self.basis() == other.basis()
    }
}

#[derive(Clone, Debug, Default)]
pub struct SpanOptions {
    /// Stop with a resource error once the rank exceeds this.
    pub max_dim: Option<usize>,
    /// Known upper bound on the final dimension; exceeding it mid-run is an
    /// integrity error.
    pub bound: Option<usize>,
    /// Block label of each index. When set, every product is split into its
    /// `(label(row), label(col))` blocks before insertion. Only valid when the
    /// diagonal 0/1 projector of every label class lies in the algebra.
    pub grading: Option<Vec<usize>>,
}

pub fn algebra_span(generators: &[ExactMatrix]) -> Result<AlgebraBasis> {
    algebra_span_with(generators, &SpanOptions::default())
}

pub fn algebra_span_with(generators: &[ExactMatrix], options: &SpanOptions) -> Result<AlgebraBasis> {
    let Some(first) = generators.first() else {
        return Err(Error::domain("closure needs at least one generator"));
    };
    let n = first.nrows();
    for g in generators {
        if g.shape() != (n, n) {
            return Err(Error::Shape {
                op: "algebra generators",
                left: (n, n),
                right: g.shape(),
            });
        }
    }
    if let Some(grading) = &options.grading {
        if grading.len() != n {
            return Err(Error::domain("grading length differs from matrix size"));
        }
    }
    let split = |m: ExactMatrix| -> Vec<ExactMatrix> {
        match &options.grading {
            None => vec![m],
            Some(grading) => split_blocks(&m, grading),
        }
    };

    let mut state = AlgebraBasis {
        n,
        generators: generators.to_vec(),
        echelon: EchelonBasis::new(n * n),
        members: Vec::new(),
    };
    let seeds: Vec<ExactMatrix> = std::iter::once(ExactMatrix::identity(n))
        .chain(generators.iter().cloned())
        .flat_map(split)
        .collect();
    let mut frontier = absorb(&mut state, seeds, options)?;
    while !frontier.is_empty() {
        let products: Vec<ExactMatrix> = frontier
            .par_iter()
            .flat_map_iter(|x| generators.iter().map(move |g| g * x))
            .flat_map_iter(split)
            .filter(|p| !p.is_zero())
            .collect();
        frontier = absorb(&mut state, products, options)?;
    }
    Ok(state)
}

/// Reduces candidates against the current span in parallel, then inserts
/// them in order. Returns those that raised the rank.
fn absorb(state: &mut AlgebraBasis, candidates: Vec<ExactMatrix>, options: &SpanOptions) -> Result<Vec<ExactMatrix>> {
    let residuals: Vec<_> = {
        let echelon = &state.echelon;
        candidates
            .par_iter()
            .map(|m| echelon.residual(&m.flatten()))
            .collect()
    };
    let mut fresh = Vec::new();
    for (m, residual) in candidates.into_iter().zip(residuals) {
        if residual.is_empty() || !state.echelon.insert_reduced(residual) {
            continue;
        }
        state.members.push(m.clone());
        fresh.push(m);
        let rank = state.echelon.rank();
        if let Some(bound) = options.bound {
            if rank > bound {
                return Err(Error::integrity(format!("closure rank {rank} exceeds the bound {bound}")));
            }
        }
        if let Some(cap) = options.max_dim {
            if rank > cap {
                return Err(Error::Resource {
                    what: "algebra closure dimension".into(),
                    limit: cap,
                    partial: Some(rank),
                });
            }
        }
    }
    Ok(fresh)
}

fn split_blocks(m: &ExactMatrix, grading: &[usize]) -> Vec<ExactMatrix> {
    let mut blocks: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize, _)>> = Default::default();
    for (i, j, v) in m.triplets() {
        blocks
            .entry((grading[i], grading[j]))
            .or_default()
            .push((i, j, v.clone()));
    }
    blocks
        .into_values()
        .map(|t| ExactMatrix::from_triplets(m.nrows(), m.ncols(), t).expect("indices in range"))
        .collect()
}

/// Shell label of every vertex, used to grade Terwilliger closures.
pub fn shell_grading(d: usize) -> Vec<usize> {
    let order: Vec<(usize, usize)> = shells(d).collect();
    (0..3usize.pow(d as u32))
        .map(|i| {
            let ty = Vertex::from_index(d, i).type_triple();
            order
                .iter()
                .position(|&(s, t)| (s, t) == (ty.s, ty.t))
                .expect("every vertex lies in a shell")
        })
        .collect()
}

/// `A`, `A^T` and every `E*_[s,t]`.
pub fn terwilliger_generators(ops: &OperatorSet) -> Vec<ExactMatrix> {
    let mut g = vec![ops.a.clone(), ops.at.clone()];
    g.extend(ops.projectors.iter().map(|(_, p)| p.clone()));
    g
}

/// `L1, L2, R1, R2`.
pub fn llrr_generators(ops: &OperatorSet) -> Vec<ExactMatrix> {
    vec![ops.l1.clone(), ops.l2.clone(), ops.r1.clone(), ops.r2.clone()]
}

/// `C(d+8, 8)`, the expected algebra dimension.
pub fn expected_dim(d: usize) -> u64 {
    binomial(d as u64 + 8, 8)
}

/// Closure of the full generator set, graded by shell pairs.
pub fn terwilliger_algebra(d: usize, limits: &Limits) -> Result<AlgebraBasis> {
    limits.check_closure_d(d)?;
    let ops = build_operators(d, limits)?;
    terwilliger_algebra_of(&ops, limits)
}

pub fn terwilliger_algebra_of(ops: &OperatorSet, limits: &Limits) -> Result<AlgebraBasis> {
    limits.check_closure_d(ops.d)?;
    let options = SpanOptions {
        bound: Some(expected_dim(ops.d) as usize),
        grading: Some(shell_grading(ops.d)),
        ..Default::default()
    };
    algebra_span_with(&terwilliger_generators(ops), &options)
}

pub fn terwilliger_dim(d: usize, limits: &Limits) -> Result<usize> {
    Ok(terwilliger_algebra(d, limits)?.dim())
}

/// Outcome of the Bose–Mesner membership test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoseMesnerReport {
    /// Highest power of `A` used.
    pub max_power: usize,
    /// Rank of `{A^0, ..., A^max_power}`.
    pub power_span_dim: usize,
    pub transpose_in_span: bool,
}

/// Whether `A^T` lies in the span of `A^0, ..., A^K` with
/// `K = (d+1)(d+2)/2`, the number of two-way distance classes.
pub fn check_bose_mesner(ops: &OperatorSet) -> Result<BoseMesnerReport> {
    let d = ops.d;
    let max_power = (d + 1) * (d + 2) / 2;
    let n = ops.n();
    let mut echelon = EchelonBasis::new(n * n);
    let mut power = ExactMatrix::identity(n);
    for k in 0..=max_power {
        echelon.insert(&power.flatten());
        if k < max_power {
            power = &ops.a * &power;
        }
    }
    Ok(BoseMesnerReport {
        max_power,
        power_span_dim: echelon.rank(),
        transpose_in_span: echelon.contains(&ops.at.flatten()),
    })
}

#[derive(Clone, Debug)]
pub struct GeneratorEquivalence {
    pub full_dim: usize,
    pub llrr_dim: usize,
    pub identical: bool,
}

/// Compares the closures of `{A, A^T, E*}` and `{L1, L2, R1, R2}` as row
/// spaces. Both closures are ungraded so neither leans on the projectors.
pub fn check_generator_equivalence(ops: &OperatorSet, limits: &Limits) -> Result<GeneratorEquivalence> {
    limits.check_closure_d(ops.d)?;
    let full = algebra_span(&terwilliger_generators(ops))?;
    let llrr = algebra_span(&llrr_generators(ops))?;
    Ok(GeneratorEquivalence {
        full_dim: full.dim(),
        llrr_dim: llrr.dim(),
        identical: full.same_span(&llrr),
    })
}

/// Closure dimension with `A^T` dropped from the generators.
pub fn dim_without_transpose(ops: &OperatorSet, limits: &Limits) -> Result<usize> {
    limits.check_closure_d(ops.d)?;
    let mut gens = vec![ops.a.clone()];
    gens.extend(ops.projectors.iter().map(|(_, p)| p.clone()));
    Ok(algebra_span(&gens)?.dim())
}

/// Re-running the closure on a computed basis adds nothing.
pub fn is_idempotent(basis: &AlgebraBasis) -> Result<bool> {
    let again = algebra_span(basis.members())?;
    Ok(again.same_span(basis))
}

/// Every member times every generator, on either side, stays in the span.
pub fn is_two_sided_closed(basis: &AlgebraBasis) -> Result<bool> {
    let ok = basis.members().par_iter().all(|x| {
        basis.generators().iter().all(|g| {
            basis.echelon.contains(&(g * x).flatten()) && basis.echelon.contains(&(x * g).flatten())
        })
    });
    Ok(ok && basis.contains(&ExactMatrix::identity(basis.n()))?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ops(d: usize) -> OperatorSet {
        build_operators(d, &Limits::default()).unwrap()
    }

    #[test]
    fn identity_alone_spans_a_line() {
        let b = algebra_span(&[ExactMatrix::identity(3)]).unwrap();
        assert_eq!(b.dim(), 1);
    }

    #[test]
    fn small_terwilliger_dims() {
        let limits = Limits::default();
        assert_eq!(terwilliger_dim(1, &limits).unwrap(), 9);
        assert_eq!(terwilliger_dim(2, &limits).unwrap(), 45);
    }

    #[test]
    fn graded_matches_ungraded() {
        for d in 1..=2 {
            let o = ops(d);
            let graded = terwilliger_algebra_of(&o, &Limits::default()).unwrap();
            let plain = algebra_span(&terwilliger_generators(&o)).unwrap();
            assert!(graded.same_span(&plain));
        }
    }

    #[test]
    fn cap_reports_partial_rank() {
        let o = ops(2);
        let opts = SpanOptions {
            max_dim: Some(10),
            ..Default::default()
        };
        match algebra_span_with(&terwilliger_generators(&o), &opts) {
            Err(Error::Resource { limit, partial, .. }) => {
                assert_eq!(limit, 10);
                assert_eq!(partial, Some(11));
            }
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn closure_cap_from_limits() {
        let limits = Limits {
            max_vertex_d: 8,
            max_closure_d: 1,
        };
        assert!(matches!(terwilliger_dim(2, &limits), Err(Error::Resource { .. })));
    }

    #[test]
    fn bose_mesner_d1_transpose_is_square() {
        let o = ops(1);
        assert_eq!(&o.a * &o.a, o.at);
        assert!(check_bose_mesner(&o).unwrap().transpose_in_span);
    }

    #[test]
    fn bose_mesner_dimension_is_class_count() {
        for d in 1..=3 {
            let r = check_bose_mesner(&ops(d)).unwrap();
            assert!(r.transpose_in_span);
            assert_eq!(r.power_span_dim, (d + 1) * (d + 2) / 2);
        }
    }

    #[test]
    fn generator_sets_agree_d2() {
        let r = check_generator_equivalence(&ops(2), &Limits::default()).unwrap();
        assert_eq!((r.full_dim, r.llrr_dim, r.identical), (45, 45, true));
    }

    #[test]
    fn closure_invariants_d2() {
        let o = ops(2);
        let b = terwilliger_algebra_of(&o, &Limits::default()).unwrap();
        assert!(is_idempotent(&b).unwrap());
        assert!(is_two_sided_closed(&b).unwrap());
        assert_eq!(dim_without_transpose(&o, &Limits::default()).unwrap(), 45);
    }

    #[test]
    fn mismatched_generators_rejected() {
        let r = algebra_span(&[ExactMatrix::identity(3), ExactMatrix::identity(9)]);
        assert!(matches!(r, Err(Error::Shape { .. })));
    }
}
