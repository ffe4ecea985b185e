use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extconv")).args(args).current_dir(root()).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn theta_of_p2_file() {
    assert_eq!(ok(&["theta", "fans/p2.json"]), "{0, -1, -2}\n");
}

#[test]
fn theta_presets_match_files() {
    for name in ["p1", "p2", "p3", "p1xp1", "f2", "blp2"] {
        assert_eq!(ok(&["theta", name]), ok(&["theta", &format!("fans/{name}.json")]), "{name}");
    }
}

#[test]
fn zero_times_infinity() {
    assert_eq!(ok(&["convolve", "pA:k2", "sky[1,0]", "sky[0,1]"]), "O + O(-1)[1]\n");
    assert_eq!(ok(&["convolve", "P1", "sky[1,0]", "sky[0,1]"]), "O + O(-1)[1]\n");
    assert_eq!(ok(&["convolve", "pA:algebras/k2.json", "sky[ 1 , 0 ]", "sky[0,1]"]), "O + O(-1)[1]\n");
}

#[test]
fn skyscraper_products_on_k3() {
    assert_eq!(ok(&["convolve", "pA:k3", "sky[1,2,3]", "sky[1,1,2]"]), "sky[1,2,6]\n");
    assert_eq!(ok(&["convolve", "pA:k3", "sky[1,0,0]", "sky[0,1,0]"]), "O + Omega^1(1)[1] + O(-1)[2]\n");
}

#[test]
fn selftest_passes() {
    let out = ok(&["selftest"]);
    assert!(out.ends_with("14 of 14 checks passed\n"), "{out}");
}

#[test]
fn golden_outputs() {
    let cases: [(&[&str], &str); 8] = [
        (&["check-br", "f2"], "check_br_f2.txt"),
        (&["transparency", "p1", "--weights", "(0),(2)"], "transparency_p1_gap.txt"),
        (&["stratify", "p2"], "stratify_p2.txt"),
        (&["--format", "svg", "stratify", "p1xp1"], "stratify_p1xp1.svg"),
        (&["quiver", "p2", "--weights", "0,1,2"], "quiver_p2.txt"),
        (&["invariants", "--algebra", "k2", "--field", "fp:3"], "invariants_k2_f3.txt"),
        (&["sky-table", "--algebra", "k2", "--field", "fp:3", "--all-points-fp"], "sky_table_k2_f3.txt"),
        (&["--format", "json", "convolve", "pA:k2", "sky[1,0]", "sky[0,1]"], "convolve_k2.json"),
    ];
    for (args, file) in cases {
        assert_eq!(ok(args), golden(file), "{args:?}");
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["sky-table", "--algebra", "mat2", "--seed", "7"][..],
        &["--format", "json", "stratify", "blp2"],
        &["--format", "json", "selftest", "--seed", "3"],
    ] {
        assert_eq!(ok(args), ok(args), "{args:?}");
    }
}

#[test]
fn svg_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p1xp1.svg");
    ok(&["stratify", "p1xp1", "--svg", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), golden("stratify_p1xp1.svg"));
}

#[test]
fn json_documents_parse() {
    for args in [
        &["--format", "json", "theta", "f2"][..],
        &["--format", "json", "check-br", "p2"],
        &["--format", "json", "cohomology", "p2", "--divisor", "(0,0,-3)"],
        &["--format", "json", "quiver", "dual3", "--weights", "0,2"],
        &["--format", "json", "invariants", "--algebra", "msq", "--field", "fp:5"],
        &["--format", "json", "pic-count", "--algebra", "dual3", "--prime", "5"],
    ] {
        let v: serde_json::Value = serde_json::from_str(&ok(args)).unwrap();
        assert_eq!(v["ok"], true, "{args:?}");
    }
}

#[test]
fn cohomology_of_divisors() {
    assert_eq!(ok(&["cohomology", "p2", "--divisor", "(0,0,-3)"]), "class: -3\nH^0 = 0\nH^1 = 0\nH^2 = 1\n");
    assert_eq!(ok(&["cohomology", "p1", "--divisor", "0,2"]), "class: 2\nH^0 = 3\nH^1 = 0\n");
}

#[test]
fn pic_counts() {
    assert_eq!(ok(&["pic-count", "--algebra", "k2", "--prime", "3"]), "units: 4\norder: 2\n");
    assert_eq!(ok(&["pic-count", "--algebra", "algebras/dual2.json", "--prime", "3"]), "units: 6\norder: 3\n");
    let a = ok(&["pic-count", "--algebra", "dual3", "--prime", "5"]);
    let b = ok(&["pic-count", "--algebra", "msq", "--prime", "5"]);
    assert_eq!(a, b);
}

#[test]
fn rescale_scalars() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.json");
    std::fs::write(&two, r#"[["2", 0], [0, "2"]]"#).unwrap();
    assert_eq!(ok(&["rescale", "--from", "k2", "--to", "k2", "--matrix", two.to_str().unwrap()]), "c = 1/2\n");
    let swap = dir.path().join("swap.json");
    std::fs::write(&swap, "[[0, 1], [1, 0]]").unwrap();
    assert_eq!(ok(&["rescale", "--from", "k2", "--to", "k2", "--matrix", swap.to_str().unwrap()]), "c = 1\n");
    let o = run(&["rescale", "--from", "k2", "--to", "dual2", "--matrix", swap.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("witness (0, 0)"));
}

fn fails(args: &[&str], code: i32, needle: &str) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(code), "{args:?}");
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains(needle), "{args:?}: {err}");
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let fan = dir.path().join("fan.json");
    std::fs::write(&fan, r#"{"lattice_rank":1,"rays":[[1],[-1]],"max_cones":[[0],[1]],"colour":1}"#).unwrap();
    fails(&["theta", fan.to_str().unwrap()], 1, "unknown field `colour`");
    let alg = dir.path().join("alg.json");
    std::fs::write(&alg, r#"{"dim":1,"unit":["1"],"structure_constants":[[["x"]]]}"#).unwrap();
    fails(&["invariants", "--algebra", alg.to_str().unwrap()], 1, "structure_constants[0][0][0]");
    fails(&["theta", "p2", "--bogus"], 1, "--bogus");
    fails(&["theta", "nosuch"], 1, "fan");
    fails(&["transparency", "p2", "--weights", "(0),(1,x)"], 1, "weights: offset 7");
    fails(&["convolve", "pA:k2", "sky[1,0", "O(0)"], 1, "expr1: parse error at offset 7");
    fails(&["pic-count", "--algebra", "k3", "--prime", "4"], 1, "--prime");
    fails(&["cohomology", "p2", "--divisor", "(1,2)"], 1, "divisor");
    fails(&["--field", "r", "invariants", "--algebra", "k2"], 1, "--field");
    fails(&["--format", "svg", "theta", "p2"], 1, "--format");
    fails(&["sky-table", "--algebra", "k2", "--all-points-fp"], 1, "--all-points-fp");
}

#[test]
fn computational_errors_exit_two() {
    fails(&["pic-count", "--algebra", "mat2", "--prime", "37"], 2, "enumeration bound");
    fails(&["stratify", "p3", "--format", "svg"], 2, "rank");
}

#[test]
fn json_errors_are_documents() {
    let o = run(&["--format", "json", "theta", "nosuch"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["ok"], false);
    assert_eq!(v["error"]["kind"], "validation");
}
