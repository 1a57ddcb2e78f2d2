mod support;

use std::collections::BTreeSet;

#[test]
fn golden_corpus_matches_and_is_deterministic() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let outcomes = support::run_corpus(update);
    assert!(outcomes.len() >= 12);
    let failures: Vec<String> = outcomes
        .iter()
        .filter_map(|o| o.failure.as_ref().map(|f| format!("{}: {f}", o.name)))
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n\n"));
    let codes: BTreeSet<i32> = outcomes.iter().filter_map(|o| o.exit_code).collect();
    assert_eq!(codes, BTreeSet::from([0, 1, 2]));
}

#[test]
fn every_subcommand_is_covered() {
    let cases = support::load_cases();
    for sub in [
        "wedge",
        "omega",
        "depth",
        "regseq",
        "divide",
        "localize-divide",
        "check-exact",
        "kernel",
    ] {
        assert!(
            cases.iter().any(|c| c.args.iter().any(|a| a == sub)),
            "no case for {sub}"
        );
    }
}
