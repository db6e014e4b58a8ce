//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every comparison is exact.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    bfs_solvable, connected_graphs, direct_holds, isomorphic, random_connected, rooted_trees,
};
use pebble::harness::{
    pebbling_number_par, verify_cover_lemma, verify_graham, GrahamMode, LemmaId,
};
use pebble_core::families::{build_mstar_with_reading, complete, cycle, path, MSTAR_READING};
use pebble_core::{
    check_herscovici_inequality, check_property_with, check_two_pebbling, cycle_formula,
    middle_cycle_formula, middle_graph, pebbling_number_with, rooted_number, solvable,
    tree_formula, weight_bound, DemandVector, Distribution, EngineOptions, Graph, Mode, Property,
    SymmetryGroup, VertexId,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f(g: &Graph) -> Result<u64, String> {
    pebbling_number_par(g, 1, &EngineOptions::default())
        .map(|r| r.value)
        .map_err(|e| e.to_string())
}

fn cycles() -> Check {
    let mut got = Vec::new();
    for n in 3..=8 {
        let engine = f(&cycle(n).unwrap())?;
        let formula = cycle_formula(n).map_err(|e| e.to_string())?;
        ensure(engine == formula, || {
            format!("C{n}: engine {engine}, formula {formula}")
        })?;
        got.push(engine);
    }
    ensure(got == [3, 4, 5, 8, 11, 16], || format!("{got:?}"))?;
    Ok(format!("f(C3..C8) = {got:?}"))
}

fn middle() -> Check {
    let v = f(&middle_graph(&cycle(4).unwrap()).unwrap())?;
    ensure(v == 10 && middle_cycle_formula(2, false) == Ok(10), || {
        format!("f(M(C4)) = {v}")
    })?;
    // the larger case is cheap enough to always run
    let v6 = f(&middle_graph(&cycle(6).unwrap()).unwrap())?;
    ensure(v6 == 20 && middle_cycle_formula(3, false) == Ok(20), || {
        format!("f(M(C6)) = {v6}")
    })?;
    Ok(format!("f(M(C4)) = {v}, f(M(C6)) = {v6}"))
}

fn mstar() -> Check {
    let g = build_mstar_with_reading(2, MSTAR_READING).unwrap();
    ensure(g.is_connected() && g.n() == 8, || {
        "not a connected spanning subgraph".into()
    })?;
    let v = rooted_number(&g, VertexId(0), 1, Mode::Discover)
        .map_err(|e| e.to_string())?
        .value;
    ensure(v == 10, || format!("f(M*(C4), v0) = {v}"))?;
    Ok(format!("f(M*(C4), v0) = {v} under {MSTAR_READING:?}"))
}

fn trees() -> Check {
    let mut count = 0;
    for n in 1..=7 {
        for (t_graph, root) in rooted_trees(n) {
            for t in 1..=2 {
                let formula =
                    tree_formula(&t_graph, VertexId(root), t).map_err(|e| e.to_string())?;
                let engine = rooted_number(&t_graph, VertexId(root), t, Mode::Discover)
                    .map_err(|e| e.to_string())?
                    .value;
                ensure(formula == engine, || {
                    format!(
                        "{:?} root {root} t {t}: formula {formula}, engine {engine}",
                        t_graph.edges()
                    )
                })?;
                count += 1;
            }
        }
    }
    ensure(count == 170, || format!("{count} cases"))?;
    Ok(format!("{} rooted trees x t in {{1,2}}", count / 2))
}

fn two_pebbling() -> Check {
    let mut unrooted: Vec<Graph> = Vec::new();
    for n in 1..=6 {
        for (t, _) in rooted_trees(n) {
            if !unrooted.iter().any(|u| isomorphic(u, &t)) {
                unrooted.push(t);
            }
        }
    }
    ensure(unrooted.len() == 14, || format!("{} trees", unrooted.len()))?;
    let mut graphs = unrooted;
    graphs.push(middle_graph(&cycle(4).unwrap()).unwrap());
    let mut checked = 0;
    for g in &graphs {
        let r = check_two_pebbling(g).map_err(|e| e.to_string())?;
        ensure(r.holds, || {
            format!("fails on {:?}: {:?}", g.edges(), r.counterexample)
        })?;
        checked += r.search_size;
    }
    Ok(format!(
        "14 trees and M(C4), {checked} frontier distributions"
    ))
}

fn graham() -> Check {
    let names = ["complete:2", "path:3", "cycle:3", "cycle:4", "cycle:5"];
    let graphs = [complete(2), path(3), cycle(3), cycle(4), cycle(5)].map(Result::unwrap);
    let mut pairs = 0;
    for i in 0..graphs.len() {
        for j in i + 1..graphs.len() {
            let r = verify_graham(
                &graphs[i],
                &graphs[j],
                GrahamMode::Exact,
                &EngineOptions::default(),
            )
            .map_err(|e| e.to_string())?;
            ensure(r.verified(), || {
                format!(
                    "{} x {}: {} {:?}",
                    names[i],
                    names[j],
                    r.verdict.as_str(),
                    r.params
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs"))
}

fn lemmas() -> Check {
    let k1 = complete(1).unwrap();
    let opts = EngineOptions {
        no_symmetry: true,
        ..Default::default()
    };
    let a =
        verify_cover_lemma(LemmaId::L2_5, 2, &k1, Some(10), &opts).map_err(|e| e.to_string())?;
    ensure(a.verified() && a.distributions_checked == 286, || {
        format!(
            "lemma 2.5: {} after {}",
            a.verdict.as_str(),
            a.distributions_checked
        )
    })?;
    let b = verify_cover_lemma(LemmaId::L3_7, 3, &k1, Some(8), &opts).map_err(|e| e.to_string())?;
    ensure(b.verified() && b.distributions_checked == 495, || {
        format!(
            "lemma 3.7: {} after {}",
            b.verdict.as_str(),
            b.distributions_checked
        )
    })?;
    Ok("286 and 495 distributions".into())
}

fn inequality() -> Check {
    let mut out = Vec::new();
    for (g, expect) in [
        (cycle(5).unwrap(), true),
        (cycle(7).unwrap(), true),
        (path(5).unwrap(), false),
        (cycle(6).unwrap(), false),
    ] {
        let r = check_herscovici_inequality(&g).map_err(|e| e.to_string())?;
        let f4 = r.f4_value.unwrap();
        ensure(r.holds == expect, || {
            format!("{}: holds = {}", g.family(), r.holds)
        })?;
        if g.is_tree() {
            // f_4 of a path is its rooted value at an end
            let formula = tree_formula(&g, VertexId(0), 4).map_err(|e| e.to_string())?;
            ensure(formula == f4, || {
                format!("f4(P5): engine {f4}, formula {formula}")
            })?;
        }
        out.push(format!("{} f={} f4={}", g.family(), r.f_value, f4));
    }
    Ok(out.join("; "))
}

fn property_suite() -> Check {
    let mut rng = StdRng::seed_from_u64(0xacce);
    let mut mismatches = Vec::new();
    for i in 0..1000 {
        let n = rng.gen_range(1..=6);
        let g = random_connected(&mut rng, n);
        let p = rng.gen_range(0..=10);
        let mut counts = vec![0u32; n];
        for _ in 0..p {
            counts[rng.gen_range(0..n)] += 1;
        }
        let mut req = vec![0u32; n];
        let v = rng.gen_range(0..n);
        req[v] = rng.gen_range(1..=2);
        let d = Distribution::new(counts.clone());
        let demand = DemandVector::new(req.clone()).unwrap();
        let cert = solvable(&g, &d, &demand);
        if cert.is_solvable() != bfs_solvable(&g, &counts, &req) {
            mismatches.push(i);
        }
        // certificate replay
        ensure(cert.check(&g, &d, &demand), || {
            format!("instance {i}: bad certificate")
        })?;
        // weight necessity
        ensure(
            !cert.is_solvable() || weight_bound(&g, &d, VertexId(v)).at_least(req[v] as u64),
            || format!("instance {i}: solvable below the weight bound"),
        )?;
        // monotonicity
        let mut more = counts.clone();
        more[rng.gen_range(0..n)] += 1;
        ensure(
            !cert.is_solvable() || solvable(&g, &Distribution::new(more), &demand).is_solvable(),
            || format!("instance {i}: adding a pebble broke solvability"),
        )?;
        // symmetry soundness
        for perm in SymmetryGroup::of_graph(&g).elements().take(8) {
            let mut preq = vec![0u32; n];
            preq[perm.image(v)] = req[v];
            let moved = solvable(&g, &d.permuted(&perm), &DemandVector::new(preq).unwrap());
            ensure(moved.is_solvable() == cert.is_solvable(), || {
                format!("instance {i}: automorphism changed the verdict")
            })?;
        }
    }
    ensure(mismatches.is_empty(), || {
        format!("oracle disagrees on {mismatches:?}")
    })?;

    let no_sym = EngineOptions {
        no_symmetry: true,
        ..Default::default()
    };
    for n in 3..=6 {
        let g = cycle(n).unwrap();
        let a =
            pebbling_number_with(&g, 2, &EngineOptions::default()).map_err(|e| e.to_string())?;
        let b = pebbling_number_with(&g, 2, &no_sym).map_err(|e| e.to_string())?;
        ensure(a.value == b.value, || {
            format!("C{n}: {} with symmetry, {} without", a.value, b.value)
        })?;
    }

    let mut compared = 0;
    for g in connected_graphs(5) {
        let fv = f(&g)?;
        if fv > 6 {
            continue;
        }
        for property in [Property::TwoPebbling, Property::OddTwoPebbling] {
            let r = check_property_with(&g, property, &EngineOptions::default(), Some(fv))
                .map_err(|e| e.to_string())?;
            let direct = direct_holds(&g, fv, property);
            ensure(r.holds == direct, || {
                format!(
                    "{:?} {}: frontier {}, direct {direct}",
                    g.edges(),
                    property.name(),
                    r.holds
                )
            })?;
            compared += 1;
        }
    }
    Ok(format!(
        "1000 oracle instances, {compared} frontier comparisons"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cycle formulas", 120, cycles),
        ("middle graphs M(C4), M(C6)", 60, middle),
        ("M* reading", 60, mstar),
        ("tree formula", 600, trees),
        ("two-pebbling", 600, two_pebbling),
        ("product bound instances", 1200, graham),
        ("cover lemmas on K1", 60, lemmas),
        ("inequality on C5, C7, P5, C6", 600, inequality),
        ("property suite", 600, property_suite),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the {limit} s limit")),
            Err(e) => (false, e),
        };
        failed += usize::from(!ok);
        println!(
            "{} {}. {name} ({:.2} s / {limit} s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
