use std::io::Write;
use std::process::{Command, Output};

use thetacut::cli::report::{BasisReport, BoundReport, CompareReport, ExactReport, Report, ReproReport};

fn thetacut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thetacut"))
        .args(args)
        .env_remove("THETACUT_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn bound_on_c5_with_brute_force() {
    let o = thetacut(&["bound", "--zoo", "C5", "--k", "1", "--brute", "--json", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let r: BoundReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.schema, 1);
    assert!((r.bound - 5.0).abs() <= 1e-4);
    assert_eq!(r.brute, Some(4.0));
    assert!((r.gap.unwrap() - 1.0).abs() <= 1e-4);
}

#[test]
fn k5_is_exact_at_level_two() {
    let o = thetacut(&["bound", "--zoo", "K5", "--k", "2", "--brute", "--json"]);
    let r: BoundReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.gap.unwrap().abs() <= 1e-4, "{r:?}");
    assert!(r.timestamp.is_some());
}

#[test]
fn exact_on_c5() {
    let o = thetacut(&["exact", "--zoo", "C5", "--json", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "not-exact");
    assert_eq!(v["reason"], "chordless circuit length 5");
}

#[test]
fn json_round_trips_and_is_deterministic() {
    fn check<R: Report + PartialEq + std::fmt::Debug>(args: &[&str]) {
        let a = stdout(&thetacut(args));
        let b = stdout(&thetacut(args));
        assert_eq!(a, b, "{args:?}");
        let parsed: R = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed.to_json(), a.trim_end(), "{args:?}");
    }
    check::<BoundReport>(&["bound", "--zoo", "W4", "--k", "1", "--gw", "--q2", "--brute", "--json", "--no-timestamp"]);
    check::<BoundReport>(&["bound", "--zoo", "F7", "--min", "--brute", "--json", "--no-timestamp"]);
    check::<ExactReport>(&["exact", "--zoo", "R10", "--json", "--no-timestamp"]);
    check::<ExactReport>(&["exact", "--zoo", "W7", "--k", "2", "--json", "--no-timestamp"]);
    check::<BasisReport>(&["basis", "--zoo", "K4", "--template", "--json", "--no-timestamp"]);
    check::<CompareReport>(&["compare", "--zoo", "C5", "--json", "--no-timestamp"]);
}

#[test]
fn graph_and_weight_files() {
    let g = file("4 4\n0 1\n1 2\n2 3\n3 0\n");
    let w = file("1\n2\n-1\n3\n");
    let o = thetacut(&[
        "bound",
        "--graph",
        g.path().to_str().unwrap(),
        "--weights",
        w.path().to_str().unwrap(),
        "--brute",
        "--json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r: BoundReport = serde_json::from_str(&stdout(&o)).unwrap();
    // cuts of C4 have an even number of edges; {1, 3} weighs 5
    assert_eq!(r.brute, Some(5.0));
    assert!(r.gap.unwrap().abs() <= 1e-4);

    let inline = file("3 3\n0 1 2\n1 2 2\n0 2 2\n");
    let o = thetacut(&["compare", "--graph", inline.path().to_str().unwrap(), "--json"]);
    let r: CompareReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.brute, 4.0);
    assert!((r.gw - 4.5).abs() <= 1e-4);

    let short = file("1\n");
    let o = thetacut(&["bound", "--graph", g.path().to_str().unwrap(), "--weights", short.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn matroid_file_with_cocycle_rows() {
    let r10 = thetacut::matroid::zoo::r10_matrix();
    let mut text = format!("{} {}\n", r10.nrows(), r10.ncols());
    for row in r10.to_dense() {
        let cells: Vec<String> = row.iter().map(u8::to_string).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    let f = file(&text);
    let path = f.path().to_str().unwrap();
    let o = thetacut(&["exact", "--matroid", path, "--rows", "cocycles", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
    assert_eq!(v["instance"]["cycle_rank"], 5);
    let o = thetacut(&["bound", "--matroid", path, "--rows", "cocycles", "--brute", "--json"]);
    let r: BoundReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.brute, Some(10.0));
}

#[test]
fn exit_codes() {
    assert_eq!(thetacut(&["bound", "--graph", "/no/such/file"]).status.code(), Some(1));
    let bad = file("3 2\n0 1\n");
    assert_eq!(thetacut(&["exact", "--graph", bad.path().to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(thetacut(&["bound", "--zoo", "Nope"]).status.code(), Some(1));
    assert_eq!(thetacut(&["bound", "--zoo", "C5", "--graph", "x"]).status.code(), Some(1));
    assert_eq!(thetacut(&["bound"]).status.code(), Some(1));
    assert_eq!(thetacut(&["--help"]).status.code(), Some(0));

    let budget = |value: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_thetacut"))
            .args(args)
            .env("THETACUT_BUDGET", value)
            .output()
            .unwrap()
    };
    let o = budget("100", &["basis", "--zoo", "K8", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    assert_eq!(budget("minor=2", &["exact", "--zoo", "M(K5)"]).status.code(), Some(2));
    assert_eq!(budget("bogus=1", &["exact", "--zoo", "C5"]).status.code(), Some(1));
}

#[test]
fn repro_filtering() {
    let o = thetacut(&["repro", "--only", "r10,k5", "--json", "--no-timestamp"]);
    assert_eq!(o.status.code(), Some(0));
    let r: ReproReport = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = r.rows.iter().map(|r| r.name.as_str()).collect();
    assert_eq!(names, ["k5", "r10"]);
    assert!(r.all_pass);

    let o = thetacut(&["repro", "--only", "gf2"]);
    assert!(stdout(&o).contains("PASS"));
    assert_eq!(thetacut(&["repro", "--only", "unknown"]).status.code(), Some(1));
}

#[test]
fn zoo_listing() {
    let o = thetacut(&["zoo"]);
    let names: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert!(names.contains(&"R10".to_string()) && names.contains(&"Petersen".to_string()));
}
