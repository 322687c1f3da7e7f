//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::collections::{BTreeMap, VecDeque};
use std::process::ExitCode;
use std::time::Instant;

use twalg::closure::{check_bose_mesner, check_generator_equivalence, terwilliger_algebra_of, terwilliger_dim};
use twalg::decomposition::{decompose, decompose_with_bases, diff_against_reference, dim_formula, highest_weight_vectors, Weight};
use twalg::digraph::{adjacency, two_way_distance, Vertex};
use twalg::lie::{build_operators, check_all_relations, check_higher_commutators, OperatorSet};
use twalg::report::Check;
use twalg::suite::{adjudications, unrestricted_multiplicities};
use twalg::sym_tensor::{
    block_dim, check_h_suite, check_tensor_identities, check_lift_suite, check_symmetrization, check_tensor_power_suite,
    counting_identity, wedderburn_profile,
};
use twalg::Limits;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ops(d: usize) -> OperatorSet {
    build_operators(d, &Limits::default()).expect("operators build")
}

fn fail_on<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn first_failure(checks: &[Check]) -> Option<String> {
    checks.iter().find(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.detail))
}

fn relations() -> Outcome {
    let mut count = 0;
    for d in 1..=5 {
        let reports = check_all_relations(&ops(d));
        if reports.len() != 27 {
            return Err(format!("d={d}: {} identities, expected 27", reports.len()));
        }
        if let Some(r) = reports.iter().find(|r| !r.pass) {
            return Err(format!("d={d} {}: {}", r.name, r.detail()));
        }
        count += reports.len();
    }
    Ok(format!("{count} zero discrepancies over d=1..5"))
}

fn higher_commutators() -> Outcome {
    let mut count = 0;
    for d in [3, 4] {
        let o = ops(d);
        for i in 1..=3 {
            for j in 1..=3 {
                for r in check_higher_commutators(&o, i, j).map_err(fail_on)? {
                    if !r.pass {
                        return Err(format!("d={d} {}: {}", r.name, r.detail()));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} identities exact at d=3,4"))
}

fn golden_table() -> Outcome {
    for d in 1..=5 {
        let report = decompose(&ops(d)).map_err(fail_on)?;
        let diff = diff_against_reference(&report);
        if !diff.is_empty() {
            return Err(format!("d={d}: {}", diff.join("; ")));
        }
        if report.total != 3u64.pow(d as u32) {
            return Err(format!("d={d}: total {}", report.total));
        }
        if d == 5 {
            let got: Vec<((i64, i64), u64, usize)> = report
                .blocks
                .iter()
                .map(|b| ((b.weight.m1, b.weight.m2), b.dim, b.multiplicity))
                .collect();
            let mut want = vec![((5, 0), 21, 1), ((3, 1), 24, 4), ((1, 2), 15, 5), ((2, 0), 6, 6), ((0, 1), 3, 5)];
            let mut got_sorted = got.clone();
            got_sorted.sort();
            want.sort();
            if got_sorted != want {
                return Err(format!("d=5 blocks {got:?}"));
            }
        }
    }
    Ok("d=1..5 match, totals 3^d".into())
}

fn complete_reducibility() -> Outcome {
    let mut parts = Vec::new();
    for d in [6, 7] {
        let dec = decompose_with_bases(&ops(d)).map_err(fail_on)?;
        let rank = dec.union_rank();
        let n = 3usize.pow(d as u32);
        if rank != n {
            return Err(format!("d={d}: union rank {rank} != {n}"));
        }
        parts.push(format!("d={d} rank {rank}"));
    }
    Ok(parts.join(", "))
}

fn wedderburn_dimension() -> Outcome {
    let limits = Limits::default();
    let expected = [9, 45, 165, 495];
    for (d, want) in (1..=4).zip(expected) {
        let got = terwilliger_dim(d, &limits).map_err(fail_on)?;
        if got != want {
            return Err(format!("d={d}: dim {got} != {want}"));
        }
    }
    for d in 1..=3 {
        let o = ops(d);
        let eq = check_generator_equivalence(&o, &limits).map_err(fail_on)?;
        if !eq.identical {
            return Err(format!("d={d}: generator spans differ ({} vs {})", eq.full_dim, eq.llrr_dim));
        }
        let bm = check_bose_mesner(&o).map_err(fail_on)?;
        if !bm.transpose_in_span {
            return Err(format!("d={d}: A^T outside span of powers of A"));
        }
    }
    Ok("dims 9, 45, 165, 495; generator sets agree and A^T in <A> for d=1..3".into())
}

fn counting() -> Outcome {
    let mut blocks = 0;
    for d in 0..=30 {
        let (lhs, rhs) = counting_identity(d);
        if lhs != rhs {
            return Err(format!("d={d}: {lhs} != {rhs}"));
        }
        let profile = wedderburn_profile(d).map_err(fail_on)?;
        for b in &profile.blocks {
            let w = Weight {
                m1: (d - 3 * b.ell - 2 * b.m) as i64,
                m2: b.m as i64,
            };
            let want = dim_formula(w).map_err(fail_on)?;
            if block_dim(d, b.ell, b.m) != want {
                return Err(format!("d={d} (l={}, m={}): {} != {want}", b.ell, b.m, b.block_dim));
            }
            blocks += 1;
        }
    }
    Ok(format!("identity for d=0..30, {blocks} block sizes match"))
}

fn tensor_suite() -> Outcome {
    let limits = Limits::default();
    let mut checks = Vec::new();
    for d in 2..=4 {
        checks.extend(check_symmetrization(d, &limits).map_err(fail_on)?);
    }
    for d in [2, 3] {
        let o = ops(d);
        let algebra = terwilliger_algebra_of(&o, &limits).map_err(fail_on)?;
        checks.extend(check_lift_suite(&algebra, d).map_err(fail_on)?);
        let powers = check_tensor_power_suite(&algebra, d, &limits).map_err(fail_on)?;
        for name in ["A1", "e13"] {
            if !powers.iter().any(|c| c.name.starts_with(&format!("d={d} {name}^"))) {
                return Err(format!("d={d}: no tensor power check for {name}"));
            }
        }
        checks.extend(powers);
    }
    checks.extend(check_tensor_identities());
    let h = check_h_suite(3, &limits);
    if h.len() != 3 {
        return Err(format!("d=3: {} h tensors built, expected 3", h.len()));
    }
    checks.extend(h);
    match first_failure(&checks) {
        Some(f) => Err(f),
        None => Ok(format!("{} exact checks", checks.len())),
    }
}

/// Directed distances from `src` by breadth-first search over arcs that add
/// one to a single coordinate mod 3.
fn bfs(d: usize, src: usize) -> Vec<usize> {
    let n = 3usize.pow(d as u32);
    let mut dist = vec![usize::MAX; n];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(x) = queue.pop_front() {
        let mut place = 1;
        for _ in 0..d {
            let digit = (x / place) % 3;
            let y = if digit == 2 { x - 2 * place } else { x + place };
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
            place *= 3;
        }
    }
    dist
}

fn oracles() -> Outcome {
    let mut pairs = 0;
    for d in 1..=4 {
        let n = 3usize.pow(d as u32);
        let a = adjacency(d, &Limits::default()).map_err(fail_on)?;
        let table: Vec<Vec<usize>> = (0..n).map(|x| bfs(d, x)).collect();
        for (y, x, _) in a.triplets() {
            if table[x][y] != 1 {
                return Err(format!("d={d}: arc {x}->{y} missing from BFS graph"));
            }
        }
        if a.nnz() != n * d {
            return Err(format!("d={d}: {} arcs, expected {}", a.nnz(), n * d));
        }
        for (x, from_x) in table.iter().enumerate() {
            let vx = Vertex::from_index(d, x);
            for (y, to_x) in table.iter().map(|row| row[x]).enumerate() {
                let w = two_way_distance(&vx, &Vertex::from_index(d, y)).map_err(fail_on)?;
                if (w.forward, w.backward) != (from_x[y], to_x) {
                    return Err(format!("d={d}: pair ({vx}, {y}) gives {w:?}"));
                }
                pairs += 1;
            }
        }
    }
    for d in 1..=3 {
        let o = ops(d);
        for ((t, m2), nullity) in unrestricted_multiplicities(&o).map_err(fail_on)? {
            let restricted = highest_weight_vectors(&o, m2 + t, t).map_err(fail_on)?.len();
            if restricted != nullity {
                return Err(format!("d={d} (t={t}, m2={m2}): {restricted} vs nullity {nullity}"));
            }
        }
    }
    Ok(format!("{pairs} vertex pairs match BFS; multiplicities match unrestricted nullity for d=1..3"))
}

fn adjudication() -> Outcome {
    let mut verdicts: BTreeMap<String, Vec<(usize, String)>> = BTreeMap::new();
    let mut lines = Vec::new();
    for d in 1..=6 {
        for adj in adjudications(&ops(d)) {
            let c = adj.check(d);
            lines.push(format!("\n      {}: {}", c.name, c.detail));
            if !adj.consistent {
                return Err(format!("d={d} {}: {}", adj.topic, adj.evidence));
            }
            if let Some(v) = adj.verdict {
                verdicts.entry(adj.topic).or_default().push((d, v));
            }
        }
    }
    let mut summary = Vec::new();
    for (topic, seen) in &verdicts {
        let first = &seen[0].1;
        if let Some((d, v)) = seen.iter().find(|(_, v)| v != first) {
            return Err(format!("{topic}: verdict at d={d} is {v:?}, earlier {first:?}"));
        }
        let ds: Vec<String> = seen.iter().map(|(d, _)| d.to_string()).collect();
        summary.push(format!("{topic} stable over d={}", ds.join(",")));
    }
    if verdicts.len() != 3 {
        return Err(format!("{} topics produced verdicts, expected 3", verdicts.len()));
    }
    Ok(summary.join("; ") + &lines.concat())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("sl3 relation suite, d=1..5", relations),
        ("higher commutators, d=3,4", higher_commutators),
        ("golden decomposition table, d=1..5", golden_table),
        ("complete reducibility, d=6,7", complete_reducibility),
        ("algebra dimension by closure, d=1..4", wedderburn_dimension),
        ("counting identity and block sizes, d<=30", counting),
        ("symmetric tensor suite", tensor_suite),
        ("distance and nullity oracles", oracles),
        ("ambiguity adjudications", adjudication),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        if outcome.is_err() {
            failed += 1;
        }
        println!("{tag} criterion {}: {name} ({ms} ms): {detail}", k + 1);
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
