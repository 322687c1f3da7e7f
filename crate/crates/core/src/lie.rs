//! The sl3 operators H_i, R_i, L_i built from the adjacency matrix by
//! shell sandwiching, and the exact relation checks among them.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::digraph::{adjacency, dual_idempotent, shells, undirected_adjacency};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{scalar_from_i64, ExactMatrix, ExactScalar, ExactVector};

/// The nine sl3 operators of H*(d,3) together with `A` and `A^T`.
#[derive(Clone, Debug)]
pub struct OperatorSet {
    pub d: usize,
    pub h1: ExactMatrix,
    pub h2: ExactMatrix,
    pub h3: ExactMatrix,
    pub r1: ExactMatrix,
    pub r2: ExactMatrix,
    pub r3: ExactMatrix,
    pub l1: ExactMatrix,
    pub l2: ExactMatrix,
    pub l3: ExactMatrix,
    pub a: ExactMatrix,
    pub at: ExactMatrix,
    /// `E*_[s,t]` for every shell, in [`shells`] order.
    pub projectors: Vec<((usize, usize), ExactMatrix)>,
}

impl OperatorSet {
    pub fn n(&self) -> usize {
        3usize.pow(self.d as u32)
    }

    pub fn projector(&self, s: isize, t: isize) -> Option<&ExactMatrix> {
        if s < 0 || t < 0 {
            return None;
        }
        self.projectors
            .iter()
            .find(|((ps, pt), _)| *ps == s as usize && *pt == t as usize)
            .map(|(_, m)| m)
    }
}

/// Builds every operator from its defining shell-sandwich sum.
pub fn build_operators(d: usize, limits: &Limits) -> Result<OperatorSet> {
    if d == 0 {
        return Err(Error::domain("operators need d >= 1"));
    }
    let a = adjacency(d, limits)?;
    let at = a.transpose();
    let projectors = shells(d)
        .map(|(s, t)| {
            dual_idempotent(d, s as isize, t as isize, limits).map(|p| ((s, t), p.matrix))
        })
        .collect::<Result<Vec<_>>>()?;

    // sum over shells of E*_[s+ds, t+dt] * m * E*_[s,t]; out-of-range shells are zero
    let sandwich = |m: &ExactMatrix, ds: isize, dt: isize| -> ExactMatrix {
        let n = m.nrows();
        let lookup = |s: isize, t: isize| {
            projectors
                .iter()
                .find(|((ps, pt), _)| s >= 0 && t >= 0 && *ps == s as usize && *pt == t as usize)
                .map(|(_, p)| p)
        };
        projectors
            .iter()
            .filter_map(|((s, t), right)| {
                let left = lookup(*s as isize + ds, *t as isize + dt)?;
                Some(&(left * m) * right)
            })
            .fold(ExactMatrix::zeros(n, n), |acc, term| &acc + &term)
    };
    let diagonal = |weight: &dyn Fn(usize, usize, usize) -> i64| -> ExactMatrix {
        projectors.iter().fold(
            ExactMatrix::zeros(a.nrows(), a.ncols()),
            |acc, ((s, t), p)| {
                let r = d - s - t;
                &acc + &p.scale_i64(weight(r, *s, *t))
            },
        )
    };

    let h1 = diagonal(&|r, s, _| r as i64 - s as i64);
    let h2 = diagonal(&|_, s, t| s as i64 - t as i64);
    let h3 = diagonal(&|r, _, t| r as i64 - t as i64);
    let r1 = sandwich(&a, 1, 0);
    let r2 = sandwich(&a, -1, 1);
    let r3 = sandwich(&at, 0, 1);
    let l1 = sandwich(&at, -1, 0);
    let l2 = sandwich(&at, 1, -1);
    let l3 = sandwich(&a, 0, -1);

    Ok(OperatorSet {
        d,
        h1,
        h2,
        h3,
        r1,
        r2,
        r3,
        l1,
        l2,
        l3,
        a,
        at,
        projectors,
    })
}

/// Outcome of comparing two matrices that an identity claims are equal.
#[derive(Clone)]
pub struct RelationReport {
    pub name: String,
    pub lhs: ExactMatrix,
    pub rhs: ExactMatrix,
    pub pass: bool,
    /// Largest absolute entry of `lhs - rhs`; zero on pass.
    pub max_abs_discrepancy: ExactScalar,
    /// `lhs - rhs`, kept only on failure.
    pub discrepancy: Option<ExactMatrix>,
}

impl RelationReport {
    pub fn compare(name: impl Into<String>, lhs: ExactMatrix, rhs: ExactMatrix) -> Self {
        let diff = lhs.try_sub(&rhs);
        let (pass, max_abs, discrepancy) = match diff {
            Ok(diff) if diff.is_zero() => (true, ExactScalar::zero(), None),
            Ok(diff) => (false, diff.max_abs(), Some(diff)),
            // shape mismatch: never equal
            Err(_) => (false, ExactScalar::one(), None),
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            pass,
            max_abs_discrepancy: max_abs,
            discrepancy,
        }
    }

    pub fn detail(&self) -> String {
        if self.pass {
            "exact equality".to_string()
        } else {
            let nnz = self.discrepancy.as_ref().map_or(0, ExactMatrix::nnz);
            format!(
                "discrepancy: {nnz} nonzero entries, max |entry| = {}",
                self.max_abs_discrepancy
            )
        }
    }
}

impl fmt::Debug for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] {}", self.name, if self.pass { "pass" } else { "FAIL" }, self.detail())
    }
}

fn br(x: &ExactMatrix, y: &ExactMatrix) -> ExactMatrix {
    &(x * y) - &(y * x)
}

fn zero_like(m: &ExactMatrix) -> ExactMatrix {
    ExactMatrix::zeros(m.nrows(), m.ncols())
}

type Identity<'a> = (&'static str, Box<dyn Fn() -> (ExactMatrix, ExactMatrix) + Send + Sync + 'a>);

fn run_identities(list: Vec<Identity<'_>>) -> Vec<RelationReport> {
    list.into_par_iter()
        .map(|(name, f)| {
            let (lhs, rhs) = f();
            RelationReport::compare(name, lhs, rhs)
        })
        .collect()
}

/// The three sl2 triples: `[L_i,R_i] = H_i`, `[H_i,L_i] = 2L_i`, `[H_i,R_i] = -2R_i`.
pub fn check_sl2_triples(ops: &OperatorSet) -> Vec<RelationReport> {
    let o = ops;
    let list: Vec<Identity> = vec![
        ("[L1,R1] = H1", Box::new(|| (br(&o.l1, &o.r1), o.h1.clone()))),
        ("[H1,L1] = 2L1", Box::new(|| (br(&o.h1, &o.l1), o.l1.scale_i64(2)))),
        ("[H1,R1] = -2R1", Box::new(|| (br(&o.h1, &o.r1), o.r1.scale_i64(-2)))),
        ("[L2,R2] = H2", Box::new(|| (br(&o.l2, &o.r2), o.h2.clone()))),
        ("[H2,L2] = 2L2", Box::new(|| (br(&o.h2, &o.l2), o.l2.scale_i64(2)))),
        ("[H2,R2] = -2R2", Box::new(|| (br(&o.h2, &o.r2), o.r2.scale_i64(-2)))),
        ("[L3,R3] = H3", Box::new(|| (br(&o.l3, &o.r3), o.h3.clone()))),
        ("[H3,L3] = 2L3", Box::new(|| (br(&o.h3, &o.l3), o.l3.scale_i64(2)))),
        ("[H3,R3] = -2R3", Box::new(|| (br(&o.h3, &o.r3), o.r3.scale_i64(-2)))),
    ];
    run_identities(list)
}

/// Decomposition of A and A^T, the Cartan, cross and Serre relations.
pub fn check_cross_relations(ops: &OperatorSet) -> Vec<RelationReport> {
    let o = ops;
    let z = || zero_like(&o.a);
    let list: Vec<Identity> = vec![
        ("A = R1 + R2 + L3", Box::new(|| (o.a.clone(), &(&o.r1 + &o.r2) + &o.l3))),
        ("A^T = L1 + L2 + R3", Box::new(|| (o.at.clone(), &(&o.l1 + &o.l2) + &o.r3))),
        ("H3 = H1 + H2", Box::new(|| (o.h3.clone(), &o.h1 + &o.h2))),
        ("[H1,H2] = O", Box::new(move || (br(&o.h1, &o.h2), z()))),
        ("[H1,H3] = O", Box::new(move || (br(&o.h1, &o.h3), z()))),
        ("[H2,H3] = O", Box::new(move || (br(&o.h2, &o.h3), z()))),
        ("[L1,L2] = L3", Box::new(|| (br(&o.l1, &o.l2), o.l3.clone()))),
        ("[R1,R2] = -R3", Box::new(|| (br(&o.r1, &o.r2), o.r3.scale_i64(-1)))),
        ("[L1,R2] = O", Box::new(move || (br(&o.l1, &o.r2), z()))),
        ("[L2,R1] = O", Box::new(move || (br(&o.l2, &o.r1), z()))),
        ("[H1,L2] = -L2", Box::new(|| (br(&o.h1, &o.l2), o.l2.scale_i64(-1)))),
        ("[H2,L1] = -L1", Box::new(|| (br(&o.h2, &o.l1), o.l1.scale_i64(-1)))),
        ("[L1,L3] = O", Box::new(move || (br(&o.l1, &o.l3), z()))),
        ("[L2,L3] = O", Box::new(move || (br(&o.l2, &o.l3), z()))),
        ("[L1,[L1,L2]] = O", Box::new(move || (br(&o.l1, &br(&o.l1, &o.l2)), z()))),
        ("[L2,[L2,L1]] = O", Box::new(move || (br(&o.l2, &br(&o.l2, &o.l1)), z()))),
        ("[R1,[R1,R2]] = O", Box::new(move || (br(&o.r1, &br(&o.r1, &o.r2)), z()))),
        ("[R2,[R2,R1]] = O", Box::new(move || (br(&o.r2, &br(&o.r2, &o.r1)), z()))),
    ];
    run_identities(list)
}

/// Structural invariants of the operator set: diagonal H's and `R_i = L_i^T`.
pub fn check_structure(ops: &OperatorSet) -> Vec<RelationReport> {
    let diag = |m: &ExactMatrix| {
        let d = ExactMatrix::diagonal((0..m.nrows()).map(|i| m.get(i, i)));
        (m.clone(), d)
    };
    vec![
        RelationReport::compare("R1 = L1^T", ops.r1.clone(), ops.l1.transpose()),
        RelationReport::compare("R2 = L2^T", ops.r2.clone(), ops.l2.transpose()),
        RelationReport::compare("R3 = L3^T", ops.r3.clone(), ops.l3.transpose()),
        {
            let (l, r) = diag(&ops.h1);
            RelationReport::compare("H1 diagonal", l, r)
        },
        {
            let (l, r) = diag(&ops.h2);
            RelationReport::compare("H2 diagonal", l, r)
        },
        {
            let (l, r) = diag(&ops.h3);
            RelationReport::compare("H3 diagonal", l, r)
        },
    ]
}

/// Hamming weight `s + t` of a shell.
fn weight(shell: (usize, usize)) -> usize {
    shell.0 + shell.1
}

/// Part of `m` mapping shell `b` into a shell `a` with `!allowed(w(a), w(b))`.
fn off_grade_part(ops: &OperatorSet, m: &ExactMatrix, allowed: impl Fn(usize, usize) -> bool) -> ExactMatrix {
    let mut acc = zero_like(m);
    for (sa, pa) in &ops.projectors {
        for (sb, pb) in &ops.projectors {
            if !allowed(weight(*sa), weight(*sb)) {
                acc = &acc + &(&(pa * m) * pb);
            }
        }
    }
    acc
}

/// The undirected graph H(d,3) and its raising, flat and lowering parts.
pub fn check_undirected_operators(ops: &OperatorSet) -> Result<Vec<RelationReport>> {
    let d = ops.d;
    let tilde_a = &ops.a + &ops.at;
    let reference = undirected_adjacency(d, &Limits {
        max_vertex_d: d,
        ..Limits::default()
    })?;
    let n = ops.n();
    let pattern = ExactMatrix::from_triplets(
        n,
        n,
        tilde_a.triplets().map(|(i, j, _)| (i, j, ExactScalar::one())),
    )?;
    let row_sums = ExactMatrix::diagonal(tilde_a.row_sums());
    let raising = &ops.r1 + &ops.r3;
    let flat = &ops.r2 + &ops.l2;
    let lowering = &ops.l1 + &ops.l3;
    let zero = zero_like(&ops.a);

    Ok(vec![
        RelationReport::compare("A + A^T = adjacency of H(d,3)", tilde_a.clone(), reference),
        RelationReport::compare("A~ symmetric", tilde_a.clone(), tilde_a.transpose()),
        RelationReport::compare("A~ is 0/1", tilde_a.clone(), pattern),
        RelationReport::compare(
            "A~ row sums = 2d",
            row_sums,
            ExactMatrix::identity(n).scale_i64(2 * d as i64),
        ),
        RelationReport::compare(
            "R~ + F~ + L~ = A~",
            &(&raising + &flat) + &lowering,
            tilde_a,
        ),
        RelationReport::compare(
            "R~ = R1 + R3 raises weight by 1",
            off_grade_part(ops, &raising, |wa, wb| wa == wb + 1),
            zero.clone(),
        ),
        RelationReport::compare(
            "F~ = R2 + L2 preserves weight",
            off_grade_part(ops, &flat, |wa, wb| wa == wb),
            zero.clone(),
        ),
        RelationReport::compare(
            "L~ = L1 + L3 lowers weight by 1",
            off_grade_part(ops, &lowering, |wa, wb| wa + 1 == wb),
            zero,
        ),
    ])
}

/// The complete relation suite: sl2 triples plus cross relations.
pub fn check_all_relations(ops: &OperatorSet) -> Vec<RelationReport> {
    let mut out = check_sl2_triples(ops);
    out.extend(check_cross_relations(ops));
    out
}

fn factorial(k: u32) -> i64 {
    (1..=k as i64).product()
}

fn binom(n: u32, k: u32) -> i64 {
    crate::digraph::binomial(n as u64, k as u64) as i64
}

/// Higher commutators of raising-operator powers:
/// `[R2^j, R1^i] = sum_{k=1..j} k! C(i,k) C(j,k) R3^k R1^(i-k) R2^(j-k)` and
/// `[R1^i, R2^j] = sum_{k=1..i} (-1)^k k! C(i,k) C(j,k) R3^k R2^(j-k) R1^(i-k)`.
pub fn check_higher_commutators(ops: &OperatorSet, i: u32, j: u32) -> Result<[RelationReport; 2]> {
    if i == 0 || j == 0 {
        return Err(Error::domain("higher commutator exponents must be >= 1"));
    }
    let powers = |m: &ExactMatrix, up_to: u32| -> Result<Vec<ExactMatrix>> {
        let mut out = vec![ExactMatrix::identity(m.nrows())];
        for _ in 0..up_to {
            let next = out.last().unwrap().matmul(m)?;
            out.push(next);
        }
        Ok(out)
    };
    let r1p = powers(&ops.r1, i)?;
    let r2p = powers(&ops.r2, j)?;
    let r3p = powers(&ops.r3, i.max(j))?;
    let (i_, j_) = (i as usize, j as usize);

    let lhs3 = br(&r2p[j_], &r1p[i_]);
    let mut rhs3 = zero_like(&ops.a);
    for k in 1..=j.min(i) {
        let c = factorial(k) * binom(i, k) * binom(j, k);
        let term = &(&r3p[k as usize] * &r1p[(i - k) as usize]) * &r2p[(j - k) as usize];
        rhs3 = &rhs3 + &term.scale_i64(c);
    }

    let lhs4 = br(&r1p[i_], &r2p[j_]);
    let mut rhs4 = zero_like(&ops.a);
    for k in 1..=i.min(j) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = sign * factorial(k) * binom(i, k) * binom(j, k);
        let term = &(&r3p[k as usize] * &r2p[(j - k) as usize]) * &r1p[(i - k) as usize];
        rhs4 = &rhs4 + &term.scale_i64(c);
    }

    Ok([
        RelationReport::compare(format!("[R2^{j},R1^{i}] expansion"), lhs3, rhs3),
        RelationReport::compare(format!("[R1^{i},R2^{j}] expansion"), lhs4, rhs4),
    ])
}

/// Which product ordering an L3-action check evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum L3Ordering {
    /// `L3 R1^i R2^j v` against `R1^(i-1) R2^(j-1) v`, magnitude `ij(m2-j+1)`.
    R1First,
    /// `L3 R2^j R1^i v` against `R2^(j-1) R1^(i-1) v`, magnitude `ij(m1-i+1)`.
    R2First,
}

/// Sign of a measured L3-action coefficient relative to its magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientSign {
    Positive,
    Negative,
    /// Coefficient and predicted magnitude are both zero.
    Zero,
    /// Not proportional, or `|c|` differs from the predicted magnitude.
    Mismatch,
}

#[derive(Clone, Debug)]
pub struct L3ActionReport {
    pub ordering: L3Ordering,
    pub i: u32,
    pub j: u32,
    pub m1: i64,
    pub m2: i64,
    /// `c` with `lhs = c * base`; `None` when no such scalar exists.
    pub coefficient: Option<ExactScalar>,
    /// Predicted `|c|`.
    pub magnitude: i64,
    pub sign: CoefficientSign,
    /// `lhs` versus `c * base` (or versus zero when `i` or `j` is zero).
    pub relation: RelationReport,
}

fn apply_power(m: &ExactMatrix, k: u32, v: &ExactVector) -> Result<ExactVector> {
    let mut out = v.clone();
    for _ in 0..k {
        out = m.apply(&out)?;
    }
    Ok(out)
}

/// Evaluates `L3` on `R1^i R2^j v` (or the reversed ordering) for a highest
/// weight vector `v` and measures the scalar relating it to the shorter word.
pub fn check_l3_action(
    ops: &OperatorSet,
    v: &ExactVector,
    m1: i64,
    m2: i64,
    i: u32,
    j: u32,
    ordering: L3Ordering,
) -> Result<L3ActionReport> {
    if v.is_zero()
        || !ops.l1.apply(v)?.is_zero()
        || !ops.l2.apply(v)?.is_zero()
        || ops.h1.apply(v)? != v.scale(&scalar_from_i64(m1))
        || ops.h2.apply(v)? != v.scale(&scalar_from_i64(m2))
    {
        return Err(Error::precondition(format!(
            "vector is not a highest weight vector of weight ({m1}, {m2})"
        )));
    }
    let word = |a: u32, b: u32| -> Result<ExactVector> {
        match ordering {
            L3Ordering::R1First => apply_power(&ops.r1, a, &apply_power(&ops.r2, b, v)?),
            L3Ordering::R2First => apply_power(&ops.r2, b, &apply_power(&ops.r1, a, v)?),
        }
    };
    let lhs = ops.l3.apply(&word(i, j)?)?;
    let magnitude = match ordering {
        L3Ordering::R1First => i as i64 * j as i64 * (m2 - j as i64 + 1),
        L3Ordering::R2First => i as i64 * j as i64 * (m1 - i as i64 + 1),
    };
    let as_column = |x: &ExactVector| {
        ExactMatrix::from_row_vectors(x.dim(), std::slice::from_ref(x))
            .expect("dimension matches")
            .transpose()
    };
    let name = match ordering {
        L3Ordering::R1First => format!("L3 R1^{i} R2^{j} v"),
        L3Ordering::R2First => format!("L3 R2^{j} R1^{i} v"),
    };

    let (coefficient, rhs) = if i == 0 || j == 0 {
        (Some(ExactScalar::zero()), ExactVector::zeros(v.dim()))
    } else {
        let base = word(i - 1, j - 1)?;
        match lhs.ratio_to(&base) {
            Some(c) => {
                let scaled = base.scale(&c);
                (Some(c), scaled)
            }
            None => (None, base),
        }
    };
    let relation = RelationReport::compare(name, as_column(&lhs), as_column(&rhs));
    let sign = match &coefficient {
        Some(c) if c.is_zero() && (magnitude == 0 || i == 0 || j == 0) => CoefficientSign::Zero,
        Some(c) if *c == scalar_from_i64(magnitude.abs()) && magnitude != 0 => {
            if magnitude > 0 {
                CoefficientSign::Positive
            } else {
                CoefficientSign::Negative
            }
        }
        Some(c) if *c == scalar_from_i64(-magnitude.abs()) && magnitude != 0 => {
            if magnitude > 0 {
                CoefficientSign::Negative
            } else {
                CoefficientSign::Positive
            }
        }
        _ => CoefficientSign::Mismatch,
    };
    Ok(L3ActionReport {
        ordering,
        i,
        j,
        m1,
        m2,
        coefficient,
        magnitude,
        sign,
        relation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::Vertex;

    fn ops(d: usize) -> OperatorSet {
        build_operators(d, &Limits::default()).unwrap()
    }

    #[test]
    fn d1_operators_by_hand() {
        let o = ops(1);
        assert_eq!(o.r1, ExactMatrix::unit(3, 3, 1, 0));
        assert_eq!(o.l1, ExactMatrix::unit(3, 3, 0, 1));
        assert_eq!(o.h1, ExactMatrix::from_i64_rows(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 0]]));
        assert_eq!(o.r2, ExactMatrix::unit(3, 3, 2, 1));
        assert_eq!(o.l3, ExactMatrix::unit(3, 3, 0, 2));
        assert_eq!(o.r3, ExactMatrix::unit(3, 3, 2, 0));
    }

    #[test]
    fn h1_scales_by_r_minus_s() {
        let o = ops(3);
        for idx in 0..27 {
            let tt = Vertex::from_index(3, idx).type_triple();
            let v = ExactVector::unit(27, idx);
            let expected = v.scale(&scalar_from_i64(tt.r as i64 - tt.s as i64));
            assert_eq!(o.h1.apply(&v).unwrap(), expected);
        }
    }

    #[test]
    fn adjacency_splits_into_operators() {
        for d in 1..=4 {
            let o = ops(d);
            assert_eq!(&(&o.r1 + &o.r2) + &o.l3, o.a);
        }
    }

    #[test]
    fn relation_suite_passes_small_d() {
        for d in 1..=3 {
            let o = ops(d);
            let reports = check_all_relations(&o);
            assert_eq!(reports.len(), 27);
            for r in &reports {
                assert!(r.pass, "d={d}: {r:?}");
            }
            for r in check_structure(&o) {
                assert!(r.pass, "d={d}: {r:?}");
            }
        }
    }

    #[test]
    fn named_relation_examples() {
        let o2 = ops(2);
        assert!(br(&o2.l1, &o2.r1) == o2.h1);
        assert!(br(&o2.l1, &o2.l2) == o2.l3);
        let o3 = ops(3);
        assert!(br(&o3.h2, &o3.l2) == o3.l2.scale_i64(2));
        assert!(br(&o3.l1, &o3.r2).is_zero());
        assert!(br(&o3.l1, &br(&o3.l1, &o3.l2)).is_zero());
        let o1 = ops(1);
        assert!((&br(&o1.h3, &o1.r3) + &o1.r3.scale_i64(2)).is_zero());
    }

    #[test]
    fn failing_relation_reports_discrepancy() {
        let o = ops(1);
        let r = RelationReport::compare("bogus", o.l1.clone(), o.r1.clone());
        assert!(!r.pass);
        assert_eq!(r.max_abs_discrepancy, scalar_from_i64(1));
        assert_eq!(r.discrepancy.unwrap().nnz(), 2);
    }

    #[test]
    fn undirected_checks() {
        let o1 = ops(1);
        let tilde = &o1.a + &o1.at;
        assert_eq!(tilde, ExactMatrix::from_i64_rows(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        for d in [3, 4] {
            for r in check_undirected_operators(&ops(d)).unwrap() {
                assert!(r.pass, "d={d}: {r:?}");
            }
        }
    }

    #[test]
    fn support_grading_of_raising_and_lowering() {
        let o = ops(3);
        let shifts: [(&ExactMatrix, (isize, isize)); 6] = [
            (&o.r1, (1, 0)),
            (&o.r2, (-1, 1)),
            (&o.r3, (0, 1)),
            (&o.l1, (-1, 0)),
            (&o.l2, (1, -1)),
            (&o.l3, (0, -1)),
        ];
        for (m, (ds, dt)) in shifts {
            for ((s, t), right) in &o.projectors {
                for ((s2, t2), left) in &o.projectors {
                    let expected = *s2 as isize == *s as isize + ds && *t2 as isize == *t as isize + dt;
                    if !expected {
                        assert!((&(left * m) * right).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn first_higher_commutator() {
        let o = ops(2);
        let [iii, iv] = check_higher_commutators(&o, 1, 1).unwrap();
        assert!(iii.pass && iv.pass);
        // [R2, R1] = R3
        assert_eq!(iii.rhs, o.r3);
    }

    #[test]
    fn higher_commutators_small() {
        let o = ops(3);
        for (i, j) in [(2, 1), (1, 2), (2, 2)] {
            let [iii, iv] = check_higher_commutators(&o, i, j).unwrap();
            assert!(iii.pass, "{iii:?}");
            assert!(iv.pass, "{iv:?}");
        }
        assert!(check_higher_commutators(&o, 0, 1).is_err());
    }

    #[test]
    fn l3_action_rejects_non_hwv() {
        let o = ops(2);
        let v = ExactVector::unit(9, 4);
        assert!(matches!(
            check_l3_action(&o, &v, 0, 0, 1, 1, L3Ordering::R1First),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn l3_action_vanishes_on_pure_strings() {
        let o = ops(3);
        let base = ExactVector::unit(27, 0);
        for (i, j) in [(0, 1), (2, 0), (0, 0)] {
            let rep = check_l3_action(&o, &base, 3, 0, i, j, L3Ordering::R1First).unwrap();
            assert!(rep.relation.pass);
            assert_eq!(rep.sign, CoefficientSign::Zero);
        }
    }
}
