use std::fs;
use std::path::PathBuf;

use paintcat_core::dsl::{parse_source, pretty_print, run_source, EvalOptions, QUICKSTART};

fn corpus() -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scripts");
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "paint"))
        .collect();
    files.sort();
    files.into_iter().map(|p| (p.clone(), fs::read_to_string(p).unwrap())).collect()
}

#[test]
fn corpus_round_trips() {
    let scripts = corpus();
    assert!(scripts.len() >= 10);
    assert!(scripts.iter().any(|(_, text)| text == QUICKSTART));
    for (path, text) in &scripts {
        let ast = parse_source(text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = pretty_print(&ast);
        assert_eq!(parse_source(&printed).unwrap(), ast, "{}", path.display());
        // Canonical text is a fixpoint.
        assert_eq!(pretty_print(&parse_source(&printed).unwrap()), printed);
    }
}

#[test]
fn corpus_runs_and_is_deterministic() {
    let opts = EvalOptions { seed: 5, samples: 4 };
    for (path, text) in corpus() {
        let a = run_source(&text, &opts).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let b = run_source(&text, &opts).unwrap();
        assert!(a.laws_passed(), "{}", path.display());
        assert_eq!(a.stdout_text(), b.stdout_text());
    }
}

#[test]
fn printed_canvases() {
    let opts = EvalOptions::default();
    let text =
        fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scripts/11_dominance.paint")).unwrap();
    let out = run_source(&text, &opts).unwrap().stdout_text();
    assert_eq!(
        out,
        "{\"R1\":{\"color\":\"#38000000C7FF\",\"texture\":\"smooth\"}}\n{\"R1\":{\"color\":\"#C7FF00003800\",\"texture\":\"smooth\"}}\n"
    );

    let text =
        fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scripts/05_units.paint")).unwrap();
    let lines: Vec<String> = run_source(&text, &opts).unwrap().stdout_text().lines().map(String::from).collect();
    assert_eq!(lines[0], lines[1]);
    assert_eq!(lines[1], lines[2]);
    assert_eq!(lines[3], "{}");
}
