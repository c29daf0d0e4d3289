use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use segalkit::hom::is_isomorphic;
use segalkit::standard::standard;
use segalkit_cli::builtin;
use segalkit_cli::document::{parse, serialize, Document};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn segalkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_segalkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden_files() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(golden(""))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "sk"))
        .collect();
    out.sort();
    out
}

#[test]
fn golden_files_are_canonical() {
    let files = golden_files();
    assert!(files.len() >= 6);
    for f in files {
        let text = std::fs::read_to_string(&f).unwrap();
        let doc = parse(&text).unwrap_or_else(|e| panic!("{}: {e}", f.display()));
        assert_eq!(serialize(&doc), text, "{}", f.display());
    }
}

#[test]
fn golden_files_match_builders() {
    let cases: [(&str, &[&str]); 6] = [
        ("F2.sk", &["build", "F", "2"]),
        ("disc-poset2.sk", &["build", "nerve", "ordinal-2", "--disc", "--max-dim", "3"]),
        ("simplex-2.sk", &["build", "simplex", "2"]),
        ("horn-3-1.sk", &["build", "horn", "3", "1"]),
        ("G3.sk", &["build", "G", "3"]),
        ("chaotic-1.sk", &["build", "chaotic", "1", "--max-dim", "3"]),
    ];
    for (file, args) in cases {
        let o = segalkit(args);
        assert!(o.status.success());
        assert_eq!(stdout(&o), std::fs::read_to_string(golden(file)).unwrap(), "{file}");
    }
    let builtin = serialize(&builtin::lookup("disc-poset2").unwrap());
    assert_eq!(builtin, std::fs::read_to_string(golden("disc-poset2.sk")).unwrap());
}

#[test]
fn f2_golden_has_the_cells_of_a_triangle() {
    let Document::Bisimplicial(x, None) = parse(&std::fs::read_to_string(golden("F2.sk")).unwrap()).unwrap() else {
        panic!("F2 is bisimplicial and exact");
    };
    let counts: Vec<usize> = (0..=2).map(|p| x.count([p, 0])).collect();
    assert_eq!(counts, vec![3, 3, 1]);
    assert_eq!(x.len(), 7);
}

#[test]
fn discrete_nerve_is_segal() {
    let path = golden("disc-poset2.sk");
    let o = segalkit(&["check", "segal", "--input", path.to_str().unwrap(), "--strategy", "iso", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status   holds"));
    let by_name = segalkit(&["check", "segal", "--input", "disc-poset2", "--strategy", "iso", "--bound", "3"]);
    assert_eq!(by_name.status.code(), Some(0));
}

#[test]
fn t_shriek_of_f2_is_a_triangle() {
    let o = segalkit(&["apply", "t-shriek", "--input", "F2", "--max-dim", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let Document::Simplicial(x, _) = parse(&stdout(&o)).unwrap() else { panic!("simplicial output") };
    assert!(is_isomorphic(&x, &Arc::new(standard(2))));
}

#[test]
fn exit_statuses_follow_verdicts() {
    assert_eq!(segalkit(&["check", "kan", "--input", "simplex-0"]).status.code(), Some(0));
    assert_eq!(segalkit(&["check", "kan", "--input", "simplex-2"]).status.code(), Some(1));
    assert_eq!(segalkit(&["check", "segal", "--input", "I@3", "--bound", "5"]).status.code(), Some(2));
    assert_eq!(segalkit(&["check", "segal", "--input", "Fhat2"]).status.code(), Some(1));
    assert_eq!(segalkit(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(segalkit(&["check", "kan", "--input", "simplex-0", "--strategy", "psychic"]).status.code(), Some(3));
    assert_eq!(segalkit(&["check", "kan", "--input", "no-such-thing"]).status.code(), Some(3));
    assert_eq!(segalkit(&["apply", "k-shriek", "--input", "simplex-1"]).status.code(), Some(3));
    assert_eq!(segalkit(&["check", "segal", "--input", "simplex-1"]).status.code(), Some(3));
}

#[test]
fn reports_are_deterministic() {
    let args = ["check", "qcat", "--input", "chaotic-1@2", "--bound", "3", "--format", "machine"];
    let a = segalkit(&args);
    let b = segalkit(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["verdicts"][0]["check"], "qcat");
    assert!(v.get("elapsed_ms").is_none());
    let raw = stdout(&a);
    let at: Vec<usize> = ["\"check\"", "\"status\"", "\"strategy\"", "\"bound\"", "\"detail\""]
        .iter()
        .map(|k| raw.find(k).unwrap())
        .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "{raw}");
    let timed = segalkit(&["check", "kan", "--input", "simplex-0", "--timing"]);
    assert!(stdout(&timed).contains("elapsed"));
}

#[test]
fn parse_errors_name_the_problem() {
    let dir = std::env::temp_dir().join(format!("segalkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let dangling = dir.join("dangling.sk");
    std::fs::write(&dangling, "segalkit 1\nkind simplicial\ncell a 0\ncell e 1 : a ghost\n").unwrap();
    let o = segalkit(&["check", "kan", "--input", dangling.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4, column 14") && err.contains("ghost"), "{err}");
    let bad_word = dir.join("word.sk");
    std::fs::write(&bad_word, "segalkit 1\nkind simplicial\ncell a 0\ncell e 1 : a@s0s0 a\n").unwrap();
    let err = String::from_utf8(segalkit(&["check", "kan", "--input", bad_word.to_str().unwrap()]).stderr).unwrap();
    assert!(err.contains("strictly decreasing"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn every_builtin_round_trips() {
    for name in builtin::names() {
        let doc = builtin::lookup(&name).unwrap();
        let text = serialize(&doc);
        assert_eq!(serialize(&parse(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn apply_commands_produce_documents() {
    let cases: [&[&str]; 7] = [
        &["apply", "k-shriek", "--input", "boundary-2", "--max-dim", "3"],
        &["apply", "k-upper", "--input", "simplex-1", "--max-dim", "3"],
        &["apply", "k-upper", "--input", "ordinal-1", "--max-dim", "3"],
        &["apply", "t-upper", "--input", "ordinal-1", "--max-dim", "2"],
        &["apply", "core-J", "--input", "nerve-ordinal-2"],
        &["apply", "diagonal", "--input", "box-1-1"],
        &["apply", "core-J", "--input", "slices-F2"],
    ];
    for args in cases {
        let o = segalkit(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        parse(&stdout(&o)).unwrap();
    }
    let h = stdout(&segalkit(&["apply", "homology", "--input", "circle"]));
    assert!(h.contains("H0 Z\nH1 Z\n"));
}

#[test]
fn corpus_runs_a_suite() {
    let o = segalkit(&["corpus", "run", "--suite", "coequalizer", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS coequalizer"));
    assert_eq!(segalkit(&["corpus", "run", "--suite", "nope"]).status.code(), Some(3));
}
