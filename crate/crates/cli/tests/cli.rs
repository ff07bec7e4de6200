use std::fs;
use std::process::{Command, Output};

fn uninorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uninorm"))
        .args(args)
        .env_remove("UNINORM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn negation_of_top_fiber() {
    let o = uninorm(&["eval", "--term", "PLP2(Z;R)", "--a", "(0,T)", "--op", "neg"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(-1,T)\n");
}

#[test]
fn binary_operations() {
    let o = uninorm(&["eval", "--term", "PLP2(Z;R)", "--op", "res", "--a", "(1,2)", "--b", "(0,0)"]);
    assert_eq!(stdout(&o), "(-1,-2)\n");
    let o = uninorm(&["eval", "--term", "PLP2(Z;R)", "--op", "compare", "--a", "(0,T)", "--b", "(1,-5)"]);
    assert_eq!(stdout(&o), "<\n");
    let o = uninorm(&["eval", "--term", "R", "--op", "real", "--a", "0.75", "--b", "0.75"]);
    assert_eq!(stdout(&o), "0.85241638235\n");
}

#[test]
fn idempotent_listing() {
    let o = uninorm(&["idempotents", "--term", "PLP1(R;1*Zint;R)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(0,B)\n(0,0)\n(0,T)\npositive=2 negative=2\n");
}

#[test]
fn check_passes_on_basic_algebra() {
    let o = uninorm(&["check", "--term", "PLP2(Z;R)", "--samples", "10000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("seed: 7"));
    for law in ["involution", "oddness", "commutativity", "associativity", "monotonicity", "adjointness", "closure"] {
        let line = out.lines().find(|l| l.starts_with(law)).unwrap();
        assert!(line.contains("PASS"), "{line}");
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_uninorm"))
        .args(["check", "--term", "R", "--samples", "50"])
        .env("UNINORM_SEED", "42")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed: 42"));
}

#[test]
fn corrupted_term_file_is_invalid() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let bad = dir.path().join("bad.json");
    let json = stdout(&uninorm(&["parse", "--term", "PLP2(Z;R)", "--json"]));
    let tree: serde_json::Value = serde_json::from_str(&json).unwrap();
    let text = tree["tree"].to_string();
    fs::write(&good, &text).unwrap();
    fs::write(&bad, text.replace("\"Z\"", "\"R\"")).unwrap();
    let o = uninorm(&["parse", "--term-file", good.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "PLP2(Z;R)\n".to_string()));
    let o = uninorm(&["parse", "--term-file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn invalid_terms_exit_three() {
    for t in ["PLP2(R;R)", "PLP2(PLP2(Z;R);R)", "PLP1(Z;1/2*Zint;R)"] {
        let o = uninorm(&["parse", "--term", t]);
        assert_eq!(o.status.code(), Some(3), "{t}");
        assert!(!o.stderr.is_empty());
    }
    let o = uninorm(&["grid", "--term", "PLP3(R;full;1*Zint;R)"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn broken_negation_is_caught() {
    let o = uninorm(&["check", "--term", "PLP2(Z;R)", "--samples", "200", "--debug-break-neg"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn parse_errors_exit_two() {
    assert_eq!(uninorm(&["parse", "--term", "PLP2(Z;"]).status.code(), Some(2));
    let o = uninorm(&["parse", "--term", "PLP2(Z;PLP2(Z;R))", "--a", "(1/2,5)"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(uninorm(&["eval", "--term", "R", "--op", "frobnicate"]).status.code(), Some(2));
    assert_eq!(uninorm(&["check"]).status.code(), Some(2));
}

#[test]
fn element_round_trip() {
    let o = uninorm(&["parse", "--term", "PLP2(Z;PLP2(Z;R))", "--a", "( 1 , ( -2 , 2/3 ) )"]);
    assert_eq!(stdout(&o), "PLP2(Z;PLP2(Z;R))\n(1,(-2,2/3))\n");
}

#[test]
fn normalize_and_certify() {
    let o = uninorm(&["normalize", "--term", "PLP2(PLP1(R;1*Zint;Z);R)"]);
    assert!(stdout(&o).starts_with("form: [(0, 1*Zint), (1)]\nterm: PLP1(R;1*Zint;PLP2(Z;R))\n"));
    let o = uninorm(&["certify", "--term", "PLP2(PLP1(R;1*Zint;Z);R)", "--samples", "300"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn grid_files_match_stdout() {
    let dir = tempfile::tempdir().unwrap();
    for (format, name) in [("csv", "g.csv"), ("pgm", "g.pgm"), ("json", "g.json")] {
        let path = dir.path().join(name);
        let args = ["grid", "--term", "PLP2(Z;R)", "--resolution", "9", "--format", format];
        let direct = stdout(&uninorm(&args));
        let mut with_out = args.to_vec();
        with_out.extend(["--out", path.to_str().unwrap()]);
        assert_eq!(uninorm(&with_out).status.code(), Some(0));
        assert_eq!(fs::read_to_string(&path).unwrap(), direct);
    }
    let pgm = stdout(&uninorm(&["grid", "--term", "R", "--resolution", "3", "--format", "pgm"]));
    assert_eq!(pgm, "P2\n3 3\n255\n0 0 0\n0 128 255\n0 255 255\n");
}

#[test]
fn repeated_runs_are_identical() {
    let runs: [&[&str]; 4] = [
        &["check", "--term", "PLP1(R;1*Zint;PLP2(Z;R))", "--samples", "2000", "--seed", "3"],
        &["certify", "--term", "PLP2(PLP1(R;1*Zint;Z);R)", "--samples", "500", "--json"],
        &["grid", "--term", "PLP1(R;1*Zint;R)", "--resolution", "16"],
        &["analyze", "--term", "PLP3(R;full;1*Zint;R)", "--json"],
    ];
    for args in runs {
        let first = uninorm(args);
        let second = uninorm(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), second.status.code());
    }
}
