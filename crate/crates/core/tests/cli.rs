use std::process::{Command, Output};

use serde_json::Value;

fn coverforge(args: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coverforge"))
        .args(args.split_whitespace())
        .env_remove("COVERFORGE_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "radius --n 6 --nonsense",
        "theorem1 --n 6 --t 3 --c 2",
        "build",
        "frobnicate --n 3",
        "gv --n 4 --format xml",
        "fraction --n 4",
    ] {
        let out = coverforge(args);
        assert_eq!(out.status.code(), Some(2), "{args}");
        assert!(!out.stderr.is_empty(), "{args}");
        assert!(out.stdout.is_empty(), "{args}");
    }
}

#[test]
fn guard_rejection_exits_1_with_diagnostic() {
    let out = coverforge(
        "fraction --n 20 --family random --k 4 --radius 2 --max-bitmap-dim 24 --max-syndrome-dim 20",
    );
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("blocklength 40"), "{err}");
    assert!(err.contains("redundancy 36"), "{err}");
}

#[test]
fn help_exits_0() {
    let out = coverforge("--help");
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("--ball-volume"));
}

#[test]
fn theorem1_is_byte_identical_across_runs_and_thread_counts() {
    let a = coverforge("theorem1 --n 10 --c 3 --trials 50 --seed 1");
    let b = coverforge("theorem1 --n 10 --c 3 --trials 50 --seed 1 --threads 1");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["name"], "theorem1");
    assert_eq!(v["trials"].as_array().unwrap().len(), 50);
}

#[test]
fn seed_env_is_overridden_by_flag() {
    let run = |env: Option<&str>, args: &str| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_coverforge"));
        c.args(args.split_whitespace()).env_remove("COVERFORGE_SEED");
        if let Some(s) = env {
            c.env("COVERFORGE_SEED", s);
        }
        json(&c.output().unwrap())["master_seed"].clone()
    };
    assert_eq!(run(None, "gv --n 4 --trials 2"), "1592639710");
    assert_eq!(run(Some("0x10"), "gv --n 4 --trials 2"), "16");
    assert_eq!(run(Some("0x10"), "gv --n 4 --trials 2 --seed 3"), "3");
}

#[test]
fn csv_and_json_carry_the_same_numbers() {
    let j = json(&coverforge("lemma1 --n 8 --trials 12 --seed 5"));
    let csv = coverforge("lemma1 --n 8 --trials 12 --seed 5 --format csv");
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let trials = j["trials"].as_array().unwrap();
    for (row, rec) in lines.zip(trials) {
        for (key, cell) in header.iter().zip(row.split(',')) {
            let expect = match &rec[*key] {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            assert_eq!(cell, expect, "{key}");
        }
    }
    assert_eq!(trials.len(), 12);
}

#[test]
fn sweep_has_one_row_per_n() {
    let v = json(&coverforge("sweep --ns 8,10,12 --trials 10"));
    let ns: Vec<u64> = v["trials"].as_array().unwrap().iter().map(|r| r["n"].as_u64().unwrap()).collect();
    assert_eq!(ns, [8, 10, 12]);
}

#[test]
fn out_file_and_rerun_reproduce_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("lemma2.json");
    let out = coverforge(&format!(
        "lemma2 --m 10 --t 12 --trials 20 --exact-starts 3 --seed 9 --out {}",
        path.display()
    ));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let saved = std::fs::read(&path).unwrap();
    let again = coverforge(&format!("rerun --report {}", path.display()));
    assert!(again.status.success());
    assert_eq!(again.stdout, saved);

    let csv = dir.path().join("gv.csv");
    assert!(coverforge(&format!("gv --n 6 --trials 5 --format csv --out {}", csv.display())).status.success());
    let summary = std::fs::read_to_string(dir.path().join("gv.summary.csv")).unwrap();
    assert!(summary.starts_with("key,value\nvarshamov_threshold,"));
}

#[test]
fn code_commands() {
    let v = json(&coverforge("radius --n 6 --seed 7"));
    assert_eq!(v["blocklength"], 12);
    assert!(v["radius"].as_u64().unwrap() <= 6);

    let v = json(&coverforge("radius --n 4 --family augmented --t 8 --seed 2"));
    assert_eq!(v["dimension"], 8);
    assert_eq!(v["radius"], 0);

    let v = json(&coverforge("fraction --n 5 --alpha 0 --radius 2"));
    // {(x, 0)} + B_2: the second half within distance 2 of 0
    assert_eq!(v["fraction"], "1/2");

    let v = json(&coverforge("field --n 8"));
    assert_eq!(v["modulus_hex"], "11b");

    let v = json(&coverforge("build --n 4 --family truncated --k 2 --alpha 3"));
    assert_eq!(v["code"]["generator"]["rows"], 4);
    assert_eq!(v["code"]["generator"]["cols"], 6);
}
