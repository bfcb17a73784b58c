//! Golden cases shared by the golden test and the acceptance gate.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

impl Case {
    pub fn expected_path(&self) -> PathBuf {
        golden_dir().join("expected").join(format!("{}.json", self.name))
    }
}

/// Reads `cases.txt`: `name | exit | args`, `@file` resolving to an
/// instance under `instances/`.
pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    let instances = golden_dir().join("instances");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut parts = line.splitn(3, '|').map(str::trim);
            let name = parts.next().expect("name").to_string();
            let exit = parts.next().expect("exit code").parse().expect("numeric exit code");
            let args = parts
                .next()
                .expect("arguments")
                .split_whitespace()
                .map(|a| match a.strip_prefix('@') {
                    Some(file) => instances.join(file).display().to_string(),
                    None => a.to_string(),
                })
                .collect();
            Case { name, exit, args }
        })
        .collect()
}

pub fn paveset(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paveset")).args(args).output().expect("binary runs")
}

pub fn run_json(case: &Case) -> Output {
    let mut args = vec!["--json".to_string()];
    args.extend(case.args.iter().cloned());
    paveset(&args)
}

/// Mismatches between the binary and the stored outputs. With
/// `PAVESET_BLESS=1` the stored outputs are rewritten instead.
pub fn check_golden(case: &Case) -> Vec<String> {
    let out = run_json(case);
    let mut problems = Vec::new();
    let code = out.status.code().unwrap_or(-1);
    if code != case.exit {
        problems.push(format!("{}: exit code {code}, expected {}", case.name, case.exit));
    }
    let path = case.expected_path();
    if std::env::var_os("PAVESET_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().expect("parent")).expect("mkdir");
        std::fs::write(&path, &out.stdout).expect("write expected output");
        return problems;
    }
    match std::fs::read(&path) {
        Ok(expected) if expected == out.stdout => {}
        Ok(_) => problems.push(format!(
            "{}: output differs from {}:\n{}",
            case.name,
            path.display(),
            String::from_utf8_lossy(&out.stdout)
        )),
        Err(e) => problems.push(format!("{}: cannot read {}: {e}", case.name, path.display())),
    }
    problems
}
