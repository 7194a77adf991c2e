use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use fano_toric_cli::{parse_problem, run, Report, RunOptions, Task};
use fano_toric_core::divisors::ToricDivisor;
use fano_toric_core::Configuration;

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn load(name: &str) -> fano_toric_cli::ProblemFile {
    parse_problem(&std::fs::read(example(name)).unwrap()).unwrap()
}

fn run_task(name: &str, task: Task) -> fano_toric_cli::Outcome {
    let opts = RunOptions {
        task: Some(task),
        ..Default::default()
    };
    run(&load(name), &opts).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fano-toric"))
}

#[test]
fn parses_the_blowup_matrix() {
    let p = load("bl_p2_p5.json");
    assert_eq!(p.points.len(), 5);
    assert!(p.points.iter().all(|r| r.len() == 15));
    assert_eq!(p.task, Some(Task::Analyze));
    assert_eq!(p.class_names, vec!["8H-3E".to_string()]);
}

#[test]
fn empty_matrix_is_rejected() {
    let errs = parse_problem(br#"{"points": [[]], "task": "faces"}"#).unwrap_err();
    assert_eq!(errs.0, vec!["empty configuration".to_string()]);
}

#[test]
fn multiples_of_declared_classes() {
    let src = br#"{
        "points": [[0, 1, 0], [0, 0, 1]],
        "basis": {"H": {"coefficients": [0, 0, 1]}},
        "classes": ["3H", "H"]
    }"#;
    let p = parse_problem(src).unwrap();
    let cfg = Configuration::from_columns(&p.points).unwrap();
    let classes = p.resolve_classes(&cfg).unwrap();
    assert_eq!(classes[0].representative().coeffs(), &[0, 0, 3]);
    assert_eq!(
        classes[0].representative(),
        &ToricDivisor::new(&cfg, vec![0, 0, 1]).unwrap().scale(3)
    );
}

#[test]
fn unresolvable_facets_are_validation_errors() {
    let src = br#"{
        "points": [[0, 1, 0], [0, 0, 1]],
        "basis": {"H": {"terms": [{"normal": [1, 1]}]}, "G": {"coefficients": [1]}},
        "classes": ["H + G"]
    }"#;
    let p = parse_problem(src).unwrap();
    let err = run(
        &p,
        &RunOptions {
            task: Some(Task::Degrees),
            ..Default::default()
        },
    )
    .unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("no facet has inner normal"));
    assert!(err.to_string().contains("expected 3 facet coefficients"));
}

#[test]
fn analyze_totals() {
    for (name, total, counts) in [
        ("bl_p2_p5.json", 78064, vec![189, 77875]),
        ("p2xp2.json", 378, vec![189, 189]),
        ("quintic.json", 2875, vec![2875]),
        ("cubic.json", 27, vec![27]),
        ("conic.json", 0, vec![0]),
    ] {
        let out = run_task(name, Task::Analyze);
        assert_eq!(out.exit_code, 0);
        assert_eq!(out.report.total, Some(total), "{name}");
        let got: Vec<i128> = out
            .report
            .components
            .iter()
            .filter_map(|c| c.count)
            .collect();
        assert_eq!(got, counts, "{name}");
    }
}

#[test]
fn blowup_degree_table() {
    let out = run_task("bl_p2_p5.json", Task::ExpectedDim);
    let rows: Vec<(usize, Vec<i64>, i64)> = out
        .report
        .components
        .iter()
        .map(|c| (c.length, c.deltas.clone().unwrap(), c.phi.unwrap()))
        .collect();
    assert_eq!(rows, vec![(2, vec![3], 0), (3, vec![5], 0)]);
}

#[test]
fn cayley_task_marks_maximal_structures() {
    let out = run_task("bl_p2_p5.json", Task::Cayley);
    let maximal: Vec<usize> = out
        .report
        .structures
        .iter()
        .filter(|s| s.maximal)
        .map(|s| s.length)
        .collect();
    assert_eq!(maximal, vec![2, 3]);
}

#[test]
fn count_exit_codes() {
    let ok = bin()
        .args(["count", "--input"])
        .arg(example("quintic.json"))
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let rep: Report = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(rep.total, Some(2875));

    let no = bin()
        .args(["count", "--input"])
        .arg(example("fig2_q1.json"))
        .output()
        .unwrap();
    assert_eq!(no.status.code(), Some(3));
    let rep: Report = serde_json::from_slice(&no.stdout).unwrap();
    assert_eq!(rep.total, None);
    assert!(!rep.warnings.is_empty());
}

#[test]
fn validation_and_budget_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"points": [[0, 1.5]], "classes": ["2Q"]}"#).unwrap();
    let out = bin()
        .args(["analyze", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("non-integer"));
    assert!(stderr.contains("unknown basis name 'Q'"));

    let out = bin()
        .args(["cayley", "--budget-nodes", "3", "--input"])
        .arg(example("bl_p2_p5.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));

    let out = bin()
        .args(["analyze", "--budget-fixed-points", "5", "--input"])
        .arg(example("bl_p2_p5.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reports_are_byte_identical_across_runs_and_threads() {
    for task in ["analyze", "cayley", "faces"] {
        let outputs: Vec<Vec<u8>> = ["1", "4", "1", "0"]
            .iter()
            .map(|t| {
                let out = bin()
                    .args([task, "--threads", t, "--input"])
                    .arg(example("bl_p2_p5.json"))
                    .output()
                    .unwrap();
                assert!(out.status.success());
                out.stdout
            })
            .collect();
        assert!(outputs.windows(2).all(|w| w[0] == w[1]), "{task}");
    }
}

#[test]
fn json_round_trips() {
    for name in ["bl_p2_p5.json", "p2xp2.json", "fig2_q1.json"] {
        for task in Task::ALL {
            let rep = match run(
                &load(name),
                &RunOptions {
                    task: Some(task),
                    ..Default::default()
                },
            ) {
                Ok(o) => o.report,
                Err(e) => panic!("{name} {task}: {e}"),
            };
            let json = rep.to_json();
            let back: Report = serde_json::from_str(&json).unwrap();
            assert_eq!(back, rep);
            assert_eq!(back.to_json(), json);
        }
    }
}

fn integers(s: &str) -> BTreeSet<String> {
    s.split(|c: char| !c.is_ascii_digit())
        .filter(|t| !t.is_empty())
        .map(|t| t.trim_start_matches('0').to_string())
        .collect()
}

#[test]
fn text_numbers_appear_in_json() {
    for name in ["bl_p2_p5.json", "p2xp2.json", "conic.json", "fig2_q1.json"] {
        for task in Task::ALL {
            let rep = run(
                &load(name),
                &RunOptions {
                    task: Some(task),
                    ..Default::default()
                },
            )
            .unwrap()
            .report;
            let json = integers(&rep.to_json());
            let missing: Vec<String> = integers(&rep.to_text())
                .difference(&json)
                .cloned()
                .collect();
            assert!(missing.is_empty(), "{name} {task}: {missing:?}");
        }
    }
}
