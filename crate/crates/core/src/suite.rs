//! Check suites shared by the CLI and the acceptance tests. Each suite
//! returns named pass/fail records; errors become failed records so a
//! suite never aborts its siblings.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::closure::{
    check_bose_mesner, check_generator_equivalence, dim_without_transpose, expected_dim, is_idempotent,
    is_two_sided_closed, terwilliger_algebra_of, AlgebraBasis,
};
use crate::decomposition::{
    basis_family, block_keys, build_hwv_recursive, check_string_nonvanishing, compare_spanning_families,
    decompose, decompose_with_bases, diff_against_reference, dim_formula, highest_weight_vectors,
    isotypic_projection, weight_of, IndexBox,
};
use crate::digraph::{shell_size, shells, TypeTriple};
use crate::error::Result;
use crate::lie::{
    check_all_relations, check_higher_commutators, check_l3_action, check_structure, check_undirected_operators,
    CoefficientSign, L3Ordering, OperatorSet,
};
use crate::limits::Limits;
use crate::linalg::{in_span, nullspace_basis};
use crate::report::Check;
use crate::sym_tensor::{
    adjudicate_g, blocks_match_module_dims, check_h_suite, check_tensor_identities, check_lift_suite, check_symmetrization,
    check_tensor_power_suite, counting_identity, wedderburn_profile,
};

/// Largest `d` at which the `h` tensors are built (they sum over `S_d`).
pub const MAX_H_D: usize = 6;

fn prefixed(d: usize, checks: impl IntoIterator<Item = Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|mut c| {
            if !c.name.starts_with("d=") {
                c.name = format!("d={d} {}", c.name);
            }
            c
        })
        .collect()
}

/// Relation identities, structure, undirected grading and the higher
/// commutator expansions for `1 <= i, j <= 3`.
pub fn relations_suite(ops: &OperatorSet) -> Vec<Check> {
    let d = ops.d;
    let mut out: Vec<Check> = check_all_relations(ops).iter().map(Check::from).collect();
    out.extend(check_structure(ops).iter().map(Check::from));
    match check_undirected_operators(ops) {
        Ok(rs) => out.extend(rs.iter().map(Check::from)),
        Err(e) => out.push(Check::new("undirected operators", false, e.to_string())),
    }
    for i in 1..=3 {
        for j in 1..=3 {
            match check_higher_commutators(ops, i, j) {
                Ok(rs) => out.extend(rs.iter().map(Check::from)),
                Err(e) => out.push(Check::new(format!("higher commutators ({i},{j})"), false, e.to_string())),
            }
        }
    }
    prefixed(d, out)
}

/// Outcome of one ambiguity test: the verdict string is meant to be
/// compared across `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Adjudication {
    pub topic: String,
    /// `None` when `d` offers no test case.
    pub verdict: Option<String>,
    pub consistent: bool,
    pub evidence: String,
}

impl Adjudication {
    pub fn check(&self, d: usize) -> Check {
        let verdict = self.verdict.as_deref().unwrap_or("no test case at this d");
        Check::new(
            format!("d={d} adjudication: {}", self.topic),
            self.consistent,
            format!("{verdict}; {}", self.evidence),
        )
    }
}

/// Measures the sign of the `L3` action coefficient on every highest weight
/// vector for `1 <= i <= m1`, `1 <= j <= m2`, in both orderings.
pub fn adjudicate_l3_sign(ops: &OperatorSet) -> Result<Adjudication> {
    let mut tally: BTreeMap<(&'static str, &'static str), usize> = BTreeMap::new();
    let mut cases = 0;
    for (t, m2) in block_keys(ops.d) {
        for v in highest_weight_vectors(ops, m2 + t, t)? {
            let w = weight_of(&v, ops)?;
            for i in 1..=w.m1 as u32 {
                for j in 1..=w.m2 as u32 {
                    for (ordering, label) in [(L3Ordering::R1First, "R1^i R2^j"), (L3Ordering::R2First, "R2^j R1^i")] {
                        let r = check_l3_action(ops, &v, w.m1, w.m2, i, j, ordering)?;
                        let sign = match r.sign {
                            CoefficientSign::Positive => "+",
                            CoefficientSign::Negative => "-",
                            CoefficientSign::Zero => "0",
                            CoefficientSign::Mismatch => "mismatch",
                        };
                        *tally.entry((label, sign)).or_default() += 1;
                        cases += 1;
                    }
                }
            }
        }
    }
    if cases == 0 {
        return Ok(Adjudication {
            topic: "L3 action sign".into(),
            verdict: None,
            consistent: true,
            evidence: "no highest weight vector with m1, m2 >= 1".into(),
        });
    }
    let per_ordering = |label: &str| -> Vec<&str> {
        tally
            .keys()
            .filter(|(l, _)| *l == label)
            .map(|(_, s)| *s)
            .collect()
    };
    let r1 = per_ordering("R1^i R2^j");
    let r2 = per_ordering("R2^j R1^i");
    let consistent = r1.len() == 1 && r2.len() == 1 && !r1.contains(&"mismatch") && !r2.contains(&"mismatch");
    let verdict = format!(
        "L3 R1^i R2^j v = {}ij(m2-j+1) R1^(i-1) R2^(j-1) v; L3 R2^j R1^i v = {}ij(m1-i+1) R2^(j-1) R1^(i-1) v",
        r1.join("/"),
        r2.join("/")
    );
    let evidence = tally
        .iter()
        .map(|((l, s), n)| format!("{l} {s}: {n}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Adjudication {
        topic: "L3 action sign".into(),
        verdict: Some(verdict),
        consistent,
        evidence,
    })
}

/// Evaluates both index boxes on every highest weight vector and records
/// which one yields a full-rank family of the right size.
pub fn adjudicate_index_box(ops: &OperatorSet) -> Result<Adjudication> {
    let mut passes = BTreeMap::from([("i <= m1, j <= m2", 0usize), ("i <= m2, j <= m1", 0usize)]);
    let mut total = 0;
    for (t, m2) in block_keys(ops.d) {
        for v in highest_weight_vectors(ops, m2 + t, t)? {
            total += 1;
            for bx in [IndexBox::Standard, IndexBox::Swapped] {
                let fam = basis_family(&v, ops, bx)?;
                let dim = dim_formula(fam.weight)? as usize;
                if fam.vectors.len() == dim && fam.rank == dim {
                    *passes.get_mut(bx.to_string().as_str()).expect("both boxes tallied") += 1;
                }
            }
        }
    }
    let full: Vec<&str> = passes.iter().filter(|(_, n)| **n == total).map(|(k, _)| *k).collect();
    let verdict = match full.as_slice() {
        [] => "neither box gives a basis".to_string(),
        [one] => format!("{one} gives a basis"),
        _ => "both boxes give a basis".to_string(),
    };
    Ok(Adjudication {
        topic: "basis index box".into(),
        verdict: Some(verdict),
        consistent: passes[IndexBox::Standard.to_string().as_str()] == total,
        evidence: passes
            .iter()
            .map(|(k, n)| format!("{k}: {n}/{total}"))
            .collect::<Vec<_>>()
            .join(", "),
    })
}

pub fn adjudicate_g_variant() -> Adjudication {
    let g = adjudicate_g();
    let verdict = if g.variants_coincide {
        "variants coincide".to_string()
    } else {
        format!("{} variant kept", g.chosen)
    };
    Adjudication {
        topic: "g variant".into(),
        verdict: Some(verdict),
        consistent: g.determinant_passes || g.printed_passes,
        evidence: format!(
            "determinant passes: {}, printed passes: {}, equal after symmetrization: {}",
            g.determinant_passes, g.printed_passes, g.variants_coincide
        ),
    }
}

pub fn adjudications(ops: &OperatorSet) -> Vec<Adjudication> {
    let failed = |topic: &str, e: crate::Error| Adjudication {
        topic: topic.into(),
        verdict: None,
        consistent: false,
        evidence: e.to_string(),
    };
    vec![
        adjudicate_l3_sign(ops).unwrap_or_else(|e| failed("L3 action sign", e)),
        adjudicate_g_variant(),
        adjudicate_index_box(ops).unwrap_or_else(|e| failed("basis index box", e)),
    ]
}

/// Multiplicity of each admissible `(t, m2)` from the nullity of the
/// unrestricted stacked `[L1; L2] E*_[s,t]` minus the vectors outside the
/// shell.
pub fn unrestricted_multiplicities(ops: &OperatorSet) -> Result<Vec<((usize, usize), usize)>> {
    let n = ops.n();
    block_keys(ops.d)
        .into_iter()
        .map(|(t, m2)| {
            let s = m2 + t;
            let e = ops.projector(s as isize, t as isize).expect("admissible shell");
            let stacked = (&ops.l1 * e).vstack(&(&ops.l2 * e))?;
            let nullity = nullspace_basis(&stacked).len();
            let outside = n - shell_size(ops.d, s, t)? as usize;
            Ok(((t, m2), nullity - outside))
        })
        .collect()
}

/// Decomposition, reference table, partition, recursive highest weight
/// vectors, string nonvanishing and, when `with_bases`, complete
/// reducibility by exact rank.
pub fn decomposition_suite(ops: &OperatorSet, with_bases: bool) -> Vec<Check> {
    let d = ops.d;
    let mut out = Vec::new();
    let report = match decompose(ops) {
        Ok(r) => r,
        Err(e) => return vec![Check::new(format!("d={d} decompose"), false, e.to_string())],
    };
    out.push(Check::new(
        format!("d={d} sum dim*mult = 3^d"),
        report.total == 3u64.pow(d as u32),
        format!("{}", report.total),
    ));
    if d <= 5 {
        let diffs = diff_against_reference(&report);
        out.push(Check::new(
            format!("d={d} reference table"),
            diffs.is_empty(),
            if diffs.is_empty() { format!("{} blocks match", report.blocks.len()) } else { diffs.join("; ") },
        ));
    }
    for b in &report.blocks {
        let ty = b.hwv_type;
        out.push(Check::from_result(
            format!("d={d} recursive hwv {ty}"),
            build_hwv_recursive(ops, ty.s, ty.t).and_then(|v| {
                let basis = highest_weight_vectors(ops, ty.s, ty.t)?;
                Ok(Check::new(format!("d={d} recursive hwv {ty}"), in_span(&v, &basis)?, "in the nullspace span"))
            }),
        ));
    }
    let stray: Vec<String> = shells(d)
        .filter_map(|(s, t)| {
            let ty = TypeTriple::of_shell(d, s, t).expect("shell");
            if ty.r >= ty.s && ty.s >= ty.t {
                return None;
            }
            match highest_weight_vectors(ops, s, t) {
                Ok(v) if v.is_empty() => None,
                Ok(v) => Some(format!("{ty}: {}", v.len())),
                Err(e) => Some(format!("{ty}: {e}")),
            }
        })
        .collect();
    out.push(Check::new(
        format!("d={d} no hwv outside r >= s >= t"),
        stray.is_empty(),
        if stray.is_empty() { "none".to_string() } else { stray.join("; ") },
    ));
    let mut nonvanishing = (0usize, Vec::new());
    for (t, m2) in block_keys(d) {
        for v in highest_weight_vectors(ops, m2 + t, t).unwrap_or_default() {
            match check_string_nonvanishing(&v, ops) {
                Ok((n, None)) => nonvanishing.0 += n,
                Ok((_, Some(w))) => nonvanishing.1.push(w),
                Err(e) => nonvanishing.1.push(e.to_string()),
            }
        }
    }
    out.push(Check::new(
        format!("d={d} raising strings nonvanishing"),
        nonvanishing.1.is_empty(),
        if nonvanishing.1.is_empty() { format!("{} words nonzero", nonvanishing.0) } else { nonvanishing.1.join("; ") },
    ));
    if d <= 3 {
        let mut bad = Vec::new();
        for (t, m2) in block_keys(d) {
            for v in highest_weight_vectors(ops, m2 + t, t).unwrap_or_default() {
                match compare_spanning_families(&v, ops) {
                    Ok((a, b, u)) if a == b && b == u => {}
                    Ok(r) => bad.push(format!("{r:?}")),
                    Err(e) => bad.push(e.to_string()),
                }
            }
        }
        out.push(Check::new(format!("d={d} R1-first and R2-first families span alike"), bad.is_empty(), bad.join("; ")));
        out.push(Check::from_result(
            format!("d={d} multiplicities from unrestricted nullity"),
            unrestricted_multiplicities(ops).map(|ms| {
                let mismatches: Vec<String> = ms
                    .iter()
                    .filter_map(|&((t, m2), m)| {
                        let got = report
                            .blocks
                            .iter()
                            .find(|b| b.hwv_type.t == t && b.weight.m2 == m2 as i64)
                            .map_or(0, |b| b.multiplicity);
                        (got != m).then(|| format!("(t={t}, m2={m2}): {got} vs {m}"))
                    })
                    .collect();
                Check::new(
                    format!("d={d} multiplicities from unrestricted nullity"),
                    mismatches.is_empty(),
                    if mismatches.is_empty() { format!("{} blocks agree", ms.len()) } else { mismatches.join("; ") },
                )
            }),
        ));
    }
    if with_bases {
        out.push(Check::from_result(
            format!("d={d} union of irreducible bases has rank 3^d"),
            decompose_with_bases(ops).map(|dec| {
                let rank = dec.union_rank();
                let n = ops.n();
                Check::new(format!("d={d} union of irreducible bases has rank 3^d"), rank == n, format!("rank {rank} of {n}"))
            }),
        ));
    }
    out
}

/// Closure dimension, Bose–Mesner membership, generator equivalence and
/// the closure invariants. Returns the algebra for reuse.
pub fn closure_suite(ops: &OperatorSet, limits: &Limits) -> (Vec<Check>, Option<AlgebraBasis>) {
    let d = ops.d;
    let mut out = Vec::new();
    let algebra = match terwilliger_algebra_of(ops, limits) {
        Ok(a) => a,
        Err(e) => return (vec![Check::new(format!("d={d} closure"), false, e.to_string())], None),
    };
    let expected = expected_dim(d) as usize;
    out.push(Check::new(
        format!("d={d} dim T = C(d+8,8)"),
        algebra.dim() == expected,
        format!("{} vs {expected}", algebra.dim()),
    ));
    out.push(Check::from_result(
        format!("d={d} A^T in C[A]"),
        check_bose_mesner(ops).map(|r| {
            Check::new(
                format!("d={d} A^T in C[A]"),
                r.transpose_in_span,
                format!("powers 0..={}, span dim {}", r.max_power, r.power_span_dim),
            )
        }),
    ));
    out.push(Check::from_result(
        format!("d={d} <L1,L2,R1,R2> = <A,A^T,E*>"),
        check_generator_equivalence(ops, limits).map(|r| {
            Check::new(
                format!("d={d} <L1,L2,R1,R2> = <A,A^T,E*>"),
                r.identical,
                format!("dims {} and {}", r.llrr_dim, r.full_dim),
            )
        }),
    ));
    out.push(Check::from_result(
        format!("d={d} dropping A^T keeps dim"),
        dim_without_transpose(ops, limits)
            .map(|n| Check::new(format!("d={d} dropping A^T keeps dim"), n == algebra.dim(), format!("{n}"))),
    ));
    out.push(Check::from_result(
        format!("d={d} closure idempotent"),
        is_idempotent(&algebra).map(|ok| Check::new(format!("d={d} closure idempotent"), ok, "")),
    ));
    out.push(Check::from_result(
        format!("d={d} closed under both-sided products"),
        is_two_sided_closed(&algebra).map(|ok| Check::new(format!("d={d} closed under both-sided products"), ok, "")),
    ));
    if d <= 2 {
        out.push(Check::from_result(
            format!("d={d} algebra commutes with isotypic projections"),
            isotypic_commutation(ops, &algebra),
        ));
    }
    (out, Some(algebra))
}

fn isotypic_commutation(ops: &OperatorSet, algebra: &AlgebraBasis) -> Result<Check> {
    let d = ops.d;
    let dec = decompose_with_bases(ops)?;
    let mut failures = 0;
    for k in 0..dec.components.len() {
        let p = isotypic_projection(&dec, k)?;
        failures += algebra.members().iter().filter(|x| (*x * &p) != (&p * *x)).count();
    }
    Ok(Check::new(
        format!("d={d} algebra commutes with isotypic projections"),
        failures == 0,
        format!("{} components, {} basis elements, {failures} failures", dec.components.len(), algebra.dim()),
    ))
}

/// Symmetrization identities, the annihilation and eigenvalue identities,
/// `h` weights, the Wedderburn profile and, given the algebra, lift and
/// tensor-power membership.
pub fn sym_suite(d: usize, algebra: Option<&AlgebraBasis>, limits: &Limits) -> Vec<Check> {
    let mut out = Vec::new();
    match check_symmetrization(d, limits) {
        Ok(cs) => out.extend(cs),
        Err(e) => out.push(Check::new(format!("d={d} symmetrization"), false, e.to_string())),
    }
    out.extend(check_tensor_identities());
    if d <= MAX_H_D {
        out.extend(check_h_suite(d, limits));
    } else {
        out.push(Check::info(format!("d={d} h tensors"), format!("skipped above d={MAX_H_D}")));
    }
    out.extend(wedderburn_checks(d));
    if let Some(alg) = algebra {
        match check_lift_suite(alg, d) {
            Ok(cs) => out.extend(cs),
            Err(e) => out.push(Check::new(format!("d={d} lift membership"), false, e.to_string())),
        }
        match check_tensor_power_suite(alg, d, limits) {
            Ok(cs) => out.extend(cs),
            Err(e) => out.push(Check::new(format!("d={d} tensor power membership"), false, e.to_string())),
        }
    }
    prefixed(d, out)
}

pub fn wedderburn_checks(d: usize) -> Vec<Check> {
    let (lhs, rhs) = counting_identity(d);
    vec![
        Check::from_result(
            format!("d={d} sum of squared block sizes = C(d+8,8)"),
            wedderburn_profile(d).map(|p| {
                Check::new(
                    format!("d={d} sum of squared block sizes = C(d+8,8)"),
                    true,
                    format!("{} blocks, total {}", p.blocks.len(), p.total_dim),
                )
            }),
        ),
        Check::new(format!("d={d} counting identity"), lhs == rhs, format!("{lhs} = {rhs}")),
        Check::from_result(
            format!("d={d} block sizes = module dimensions"),
            blocks_match_module_dims(d).map(|ok| Check::new(format!("d={d} block sizes = module dimensions"), ok, "")),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_operators;

    fn ops(d: usize) -> OperatorSet {
        build_operators(d, &Limits::default()).unwrap()
    }

    fn assert_all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.pass, "{c:?}");
        }
    }

    #[test]
    fn suites_pass_at_d3() {
        let o = ops(3);
        let limits = Limits::default();
        assert_all_pass(&relations_suite(&o));
        assert_all_pass(&decomposition_suite(&o, true));
        let (cs, alg) = closure_suite(&o, &limits);
        assert_all_pass(&cs);
        assert_all_pass(&sym_suite(3, alg.as_ref(), &limits));
    }

    #[test]
    fn isotypic_projections_commute_d2() {
        let o = ops(2);
        let (cs, _) = closure_suite(&o, &Limits::default());
        assert!(cs.iter().any(|c| c.name.contains("isotypic") && c.pass));
    }

    #[test]
    fn l3_sign_is_determined() {
        let a = adjudicate_l3_sign(&ops(3)).unwrap();
        assert!(a.consistent, "{a:?}");
        assert!(a.verdict.is_some());
        assert!(adjudicate_l3_sign(&ops(2)).unwrap().verdict.is_none());
    }

    #[test]
    fn index_box_verdict() {
        let a = adjudicate_index_box(&ops(4)).unwrap();
        assert!(a.consistent, "{a:?}");
    }

    #[test]
    fn unrestricted_nullity_matches() {
        for d in 1..=3 {
            let o = ops(d);
            let r = decompose(&o).unwrap();
            for ((t, m2), m) in unrestricted_multiplicities(&o).unwrap() {
                let got = r
                    .blocks
                    .iter()
                    .find(|b| b.hwv_type.t == t && b.weight.m2 == m2 as i64)
                    .map_or(0, |b| b.multiplicity);
                assert_eq!(got, m);
            }
        }
    }
}
