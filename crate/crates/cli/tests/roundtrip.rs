use saito_cli::problem::ProblemFile;
use saito_core::depth::QuotientContext;
use saito_core::exterior::{apply_a, parse_form_of_degree};

fn run_json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["saito", "--json"]
        .iter()
        .chain(args)
        .map(|s| s.to_string());
    let code = saito_cli::run(argv, &mut out, &mut err);
    (code, serde_json::from_slice(&out).expect("JSON output"))
}

fn golden(name: &str) -> String {
    format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Printed `γ` re-parse to forms that reproduce `η` modulo `J`.
#[test]
fn printed_solutions_reparse_and_reverify() {
    for (file, extra) in [
        ("koszul3_p1.problem", vec![]),
        ("koszul3_p2.problem", vec![]),
        ("koszul3_p2.problem", vec!["--inductive"]),
        ("quotient_z.problem", vec!["--inductive"]),
        ("lex_order.problem", vec![]),
    ] {
        let path = golden(file);
        let mut args = vec!["divide", path.as_str()];
        args.extend(extra);
        let (code, json) = run_json(&args);
        assert_eq!(code, 0, "{file}");
        assert_eq!(json["headline"], "SOLVED");
        let problem = ProblemFile::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let eta = problem.eta.clone().unwrap();
        let rank = problem.rank.unwrap();
        let gammas: Vec<_> = (1..=problem.omegas.len())
            .map(|j| {
                let text = json[format!("gamma[{j}]")].as_str().unwrap();
                parse_form_of_degree(text, &problem.ring, rank, eta.degree() - 1).unwrap()
            })
            .collect();
        let ctx = QuotientContext::new(&problem.ring, problem.quotient.clone()).unwrap();
        let image = apply_a(&problem.omegas, &gammas).unwrap();
        assert!(image.sub(&eta).unwrap().is_zero_mod(ctx.ideal()), "{file}");
    }
}

#[test]
fn json_and_text_share_keys_in_order() {
    let path = golden("two_omegas.problem");
    let mut out = Vec::new();
    let code = saito_cli::run(
        ["saito", "check-exact", path.as_str()],
        &mut out,
        &mut Vec::new(),
    );
    let (json_code, json) = run_json(&["check-exact", &path]);
    assert_eq!(code, json_code);
    let text = String::from_utf8(out).unwrap();
    let text_keys: Vec<&str> = text
        .lines()
        .skip(1)
        .filter_map(|l| l.split_once(" = ").map(|(k, _)| k))
        .collect();
    let json_keys: Vec<&str> = json
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .filter(|k| !["command", "exit_code", "headline"].contains(k))
        .collect();
    assert_eq!(text_keys, json_keys);
}

#[test]
fn help_and_version_exit_cleanly() {
    for flag in ["--help", "--version"] {
        let mut out = Vec::new();
        assert_eq!(
            saito_cli::run(["saito", flag], &mut out, &mut Vec::new()),
            0
        );
        assert!(!out.is_empty());
    }
}
