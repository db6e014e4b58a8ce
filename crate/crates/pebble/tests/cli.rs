use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pebble(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pebble"))
        .args(args)
        .env_remove("PEBBLE_CACHE")
        .output()
        .unwrap()
}

fn record(out: &Output) -> Value {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(text.lines().count(), 1, "{text}");
    serde_json::from_str(text.trim()).unwrap()
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn spec_examples() {
    let out = pebble(&[
        "check",
        "--property",
        "two-pebbling",
        "--graph",
        "middle(cycle:4)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r["result"]["holds"], true);
    assert_eq!(r["result"]["f"], 10);

    let out = pebble(&[
        "graham", "--g", "cycle:3", "--h", "path:2", "--mode", "exact",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r["result"]["outcome"], "verified");
    assert_eq!(r["result"]["f_product"], 6);
}

#[test]
fn exit_codes() {
    let out = pebble(&["number", "--graph", "cycle:7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r["result"]["value"], 11);
    let witness = r["witness"].as_object().unwrap();
    assert_eq!(
        witness.values().map(|c| c.as_u64().unwrap()).sum::<u64>(),
        10
    );

    let verify = |expect: &str| {
        pebble(&[
            "number", "--graph", "cycle:7", "--mode", "verify", "--expect", expect,
        ])
    };
    assert_eq!(verify("11").status.code(), Some(0));
    assert_eq!(verify("12").status.code(), Some(1));
    assert_eq!(verify("10").status.code(), Some(1));

    let out = pebble(&["check", "--property", "herscovici", "--graph", "cycle:6"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(record(&out)["result"]["holds"], false);

    for bad in [
        &["number", "--graph", "cycle:2"][..],
        &["number", "--graph", "nonsense"],
        &["number", "--graph", "cycle:5", "--target", "zz"],
        &["frobnicate"],
        &["check", "--property", "herscovici", "--graph", "cycle:4"],
        &["lemma", "--id", "2.5", "--k", "2", "--pebbles", "9"],
        &["lemma", "--id", "3.7", "--k", "1"],
        &[
            "solvable", "--graph", "path:3", "--dist", "x9=1", "--demand", "x1=1",
        ],
    ] {
        let out = pebble(bad);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(out.stdout.is_empty(), "{bad:?}");
        assert!(!out.stderr.is_empty());
    }

    let out = pebble(&["--budget", "3", "number", "--graph", "cycle:7"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn solvable_reports_replayable_moves() {
    let out = pebble(&[
        "solvable", "--graph", "path:3", "--dist", "x3=4", "--demand", "x1=1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = record(&out);
    assert_eq!(r["result"]["solvable"], true);
    assert_eq!(r["result"]["moves"].as_array().unwrap().len(), 3);

    let out = pebble(&[
        "solvable", "--graph", "path:3", "--dist", "x3=3", "--demand", "x1=1",
    ]);
    assert_eq!(record(&out)["result"]["solvable"], false);

    // product labels contain commas
    let out = pebble(&[
        "solvable",
        "--graph",
        "prod(path:2,path:2)",
        "--dist",
        "(x1,x1)=2",
        "--demand",
        "(x2,x1)=1",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(record(&out)["result"]["solvable"], true);
}

#[test]
fn dist_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d.txt");
    std::fs::write(&path, "v3=8\n").unwrap();
    let out = pebble(&[
        "solvable",
        "--graph",
        "cycle:6",
        "--dist",
        path.to_str().unwrap(),
        "--demand",
        "v0=1",
    ]);
    assert_eq!(record(&out)["result"]["solvable"], true);
}

fn cached(cache: &Path, args: &[&str]) -> Value {
    let mut full = vec!["--cache", cache.to_str().unwrap()];
    full.extend_from_slice(args);
    let out = pebble(&full);
    assert!(out.status.success());
    without_elapsed(record(&out))
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache.jsonl");
    let queries: [&[&str]; 4] = [
        &["number", "--graph", "middle(cycle:4)"],
        &["number", "--graph", "cycle:6", "--target", "v2", "--t", "2"],
        &[
            "check",
            "--property",
            "odd-two-pebbling",
            "--graph",
            "cycle:5",
        ],
        &["number", "--graph", "prod(path:2,cycle:3)"],
    ];
    for q in queries {
        let plain = without_elapsed(record(&pebble(q)));
        let cold = cached(&cache, q);
        let warm = cached(&cache, q);
        assert_eq!(plain, cold);
        assert_eq!(cold, warm);
    }
    let lines = std::fs::read_to_string(&cache).unwrap();
    assert!(lines.lines().count() >= 3);

    // a damaged cache is repaired, not fatal
    std::fs::write(&cache, format!("{lines}garbage\n")).unwrap();
    let out = pebble(&[
        "--cache",
        cache.to_str().unwrap(),
        "number",
        "--graph",
        "cycle:6",
    ]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
}

#[test]
fn thread_count_does_not_change_output() {
    for q in [
        &["graham", "--g", "cycle:3", "--h", "cycle:4"][..],
        &["lemma", "--id", "3.7", "--k", "3"],
        &["number", "--graph", "prod(path:3,path:3)"],
    ] {
        let one = without_elapsed(record(&pebble(&[&["--jobs", "1"][..], q].concat())));
        let four = without_elapsed(record(&pebble(&[&["--jobs", "4"][..], q].concat())));
        assert_eq!(one, four, "{q:?}");
    }
}

#[test]
fn lemma_counts_without_symmetry() {
    // with no symmetry every distribution of the right size is checked
    for (id, k, host_n, pebbles) in [("2.5", 2, 4, 10u64), ("3.7", 3, 5, 8), ("3.5", 3, 3, 7)] {
        let count = pebble_core::stars_and_bars(host_n, pebbles) as u64;
        let out = pebble(&["--no-symmetry", "lemma", "--id", id, "--k", &k.to_string()]);
        assert_eq!(out.status.code(), Some(0));
        let r = record(&out);
        assert_eq!(r["result"]["pebbles"], pebbles);
        assert_eq!(r["checked"], count, "{id}");
    }
}

#[test]
fn formulas() {
    let out = pebble(&["formula", "--kind", "cycle", "--n", "8"]);
    assert_eq!(record(&out)["result"]["value"], 16);
    let out = pebble(&["formula", "--kind", "middle", "--n", "2", "--rooted-mstar"]);
    assert_eq!(record(&out)["result"]["value"], 10);
    let out = pebble(&[
        "formula",
        "--kind",
        "tree",
        "--graph",
        "tree:[0,0,1]",
        "--t",
        "2",
    ]);
    assert_eq!(record(&out)["result"]["value"], 9);
    let out = pebble(&["formula", "--kind", "tree", "--graph", "cycle:4"]);
    assert_eq!(out.status.code(), Some(2));
}
