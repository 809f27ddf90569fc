use std::process::{Command, Output};

use tempfile::tempdir;

fn qav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qav")).args(args).output().expect("qav runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reduce_straightens_e1_f1() {
    let o = qav(&["reduce", "--expr", "e1*f1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "f1*e1 + (k1 - k1^-1)/(q - q^-1)");
}

#[test]
fn reduce_output_is_a_normal_form() {
    let first = stdout(&qav(&["reduce", "--expr", "e2*e1*f2*f1"]));
    let again = stdout(&qav(&["reduce", "--expr", first.trim()]));
    assert_eq!(first, again);
}

#[test]
fn inverse_pairs_cancel() {
    assert_eq!(stdout(&qav(&["reduce", "--expr", "k1*k1^-1"])).trim(), "1");
}

#[test]
fn parse_errors_are_usage_errors() {
    let o = qav(&["reduce", "--expr", "e1**f1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stderr.is_empty());
}

#[test]
fn unknown_subcommand_and_check_exit_3() {
    assert_eq!(qav(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(qav(&["verify", "--check", "NOPE"]).status.code(), Some(3));
}

#[test]
fn help_exits_0() {
    assert_eq!(qav(&["--help"]).status.code(), Some(0));
}

#[test]
fn single_check_passes() {
    let o = qav(&["verify", "--check", "L3_10", "--params", "eq=3.6,m=0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn out_of_table_check_is_inconclusive() {
    let o = qav(&["verify", "--check", "THM2_8", "--params", "n=9,line=1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("inconclusive"));
}

#[test]
fn failing_current_comparison_exits_1() {
    assert_eq!(qav(&["currents", "--check", "C7"]).status.code(), Some(1));
}

#[test]
fn braid_image_of_e2() {
    let o = qav(&["map", "--name", "T1", "--apply", "e2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("e1*e1*e2") || s.contains("e1^2"), "{s}");
}

#[test]
fn root_vector_prints() {
    let o = qav(&["roots", "--family", "Edelta", "--n", "1", "--print"]);
    assert_eq!(stdout(&o).trim(), "Edelta(1) = -q^-2*e2*e1 + e1*e2");
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempdir().unwrap();
    let files: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let f = dir.path().join(format!("r{i}.json"));
            let o = qav(&["verify", "--suite", "structural", "--maxdeg", "8", "--json", f.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0));
            std::fs::read(f).unwrap()
        })
        .collect();
    assert_eq!(files[0], files[1]);
    let v: serde_json::Value = serde_json::from_slice(&files[0]).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn saved_basis_reloads() {
    let dir = tempdir().unwrap();
    let f = dir.path().join("uq.json");
    let f = f.to_str().unwrap();
    assert_eq!(qav(&["build", "--maxdeg", "6", "--basis", f]).status.code(), Some(0));
    let o = qav(&["reduce", "--basis", f, "--expr", "e1*f1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "f1*e1 + (k1 - k1^-1)/(q - q^-1)");
    // a basis for another presentation is refused
    assert_eq!(qav(&["reduce", "--preset", "uq2", "--basis", f, "--expr", "e1"]).status.code(), Some(3));
}

fn matches_golden(args: &[&str], golden: &str) {
    let dir = tempdir().unwrap();
    let f = dir.path().join("out.json");
    let mut all = args.to_vec();
    all.extend(["--json", f.to_str().unwrap()]);
    qav(&all);
    let want = std::fs::read(format!("{}/tests/golden/{golden}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    assert!(std::fs::read(&f).unwrap() == want, "{golden} drifted");
}

#[test]
fn structural_report_matches_golden() {
    matches_golden(&["verify", "--suite", "structural", "--maxdeg", "8"], "structural_maxdeg8.json");
}

#[test]
fn c8_report_matches_golden() {
    matches_golden(&["currents", "--check", "C8"], "currents_c8.json");
}
