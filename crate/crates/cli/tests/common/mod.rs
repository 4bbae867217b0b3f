#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_trustgame")
}

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

pub fn data(name: &str) -> String {
    tests_dir().join("data").join(name).display().to_string()
}

pub fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .env_remove("TRUSTGAME_MAX_N")
        .output()
        .expect("binary runs")
}

pub fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

/// Golden name and argument list, relative to `tests/data`.
pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<String>,
}

fn case(name: &'static str, args: &[&str]) -> GoldenCase {
    let args = args
        .iter()
        .map(|a| {
            if a.ends_with(".txt") || a.ends_with(".json") {
                data(a)
            } else {
                a.to_string()
            }
        })
        .collect();
    GoldenCase { name, args }
}

pub fn golden_cases() -> Vec<GoldenCase> {
    let mut cases = Vec::new();
    for g in ["g2", "g3", "gf"] {
        let file: &'static str = Box::leak(format!("{g}.txt").into_boxed_str());
        for verb in ["shapley", "banzhaf"] {
            let name = Box::leak(format!("{g}_{verb}.json").into_boxed_str());
            cases.push(case(name, &[verb, file, "--oracle"]));
        }
        for verb in ["core", "decompose", "props", "verify"] {
            let name = Box::leak(format!("{g}_{verb}.json").into_boxed_str());
            cases.push(case(name, &[verb, file]));
        }
    }
    cases.push(case(
        "g2_value.json",
        &["value", "g2.txt", "--coalition", "2"],
    ));
    cases.push(case(
        "g3_value.json",
        &["value", "g3.txt", "--coalition", "1,2"],
    ));
    cases.push(case(
        "g3_marginal.json",
        &["marginal", "g3.txt", "--edge", "2,1", "--target", "3"],
    ));
    cases.push(case(
        "gf_marginal_banzhaf.json",
        &[
            "marginal", "gf.txt", "--edge", "k2,j", "--target", "k1", "--method", "banzhaf",
        ],
    ));
    cases.push(case(
        "gf_sweep.tsv",
        &["sweep", "gf.txt", "--edge", "i,j", "--targets", "i,j,k2"],
    ));
    cases.push(case(
        "gf_sweep.json",
        &[
            "sweep",
            "gf.txt",
            "--edge",
            "i,j",
            "--targets",
            "i,j,k2",
            "--steps",
            "21",
            "--json",
        ],
    ));
    cases
}

pub fn golden_path(name: &str) -> PathBuf {
    tests_dir().join("golden").join(name)
}

/// Runs a golden case with an optional thread cap.
pub fn golden_output(c: &GoldenCase, threads: Option<usize>) -> String {
    let mut args: Vec<String> = Vec::new();
    if let Some(t) = threads {
        args.push("--threads".into());
        args.push(t.to_string());
    }
    args.extend(c.args.iter().cloned());
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    stdout(&refs)
}
