//! Golden corpus runner shared by the golden and acceptance targets.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

pub struct Case {
    pub name: String,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

/// Parses `cases.txt`: `name | arg | arg ...`, with `@file` resolved relative
/// to the crate root so that recorded messages do not depend on the checkout path.
pub fn load_cases() -> Vec<Case> {
    let text = fs::read_to_string(golden_dir().join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split('|').map(str::trim);
            let name = parts.next().unwrap().to_string();
            let args = parts
                .map(|a| match a.strip_prefix('@') {
                    Some(file) => format!("tests/golden/{file}"),
                    None => a.to_string(),
                })
                .collect();
            Case { name, args }
        })
        .collect()
}

/// Runs one case in-process and renders exit code, stdout and stderr.
pub fn render(case: &Case) -> String {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).expect("crate root");
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("saito".to_string()).chain(case.args.iter().cloned());
    let code = saito_cli::run(argv, &mut out, &mut err);
    format!(
        "exit: {code}\n--- stdout\n{}--- stderr\n{}",
        String::from_utf8(out).expect("utf-8 stdout"),
        String::from_utf8(err).expect("utf-8 stderr")
    )
}

pub fn expected_path(case: &Case) -> PathBuf {
    golden_dir().join(format!("{}.out", case.name))
}

pub struct Outcome {
    pub name: String,
    pub exit_code: Option<i32>,
    pub failure: Option<String>,
}

/// Runs every case twice, compares both runs with each other and with the
/// recorded output. With `update` the recorded output is rewritten instead.
pub fn run_corpus(update: bool) -> Vec<Outcome> {
    load_cases()
        .iter()
        .map(|case| {
            let first = render(case);
            let second = render(case);
            let exit_code = first
                .lines()
                .next()
                .and_then(|l| l.strip_prefix("exit: "))
                .and_then(|c| c.parse().ok());
            let path = expected_path(case);
            if update && first == second {
                fs::write(&path, &first).expect("write golden file");
            }
            let failure = if first != second {
                Some("output differs between two runs".to_string())
            } else {
                match fs::read_to_string(&path) {
                    Ok(expected) if expected == first => None,
                    Ok(expected) => Some(format!("expected:\n{expected}\nactual:\n{first}")),
                    Err(_) => Some(format!("missing {}", path.display())),
                }
            };
            Outcome {
                name: case.name.clone(),
                exit_code,
                failure,
            }
        })
        .collect()
}
