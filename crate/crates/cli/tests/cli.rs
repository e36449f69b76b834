use std::path::PathBuf;
use std::process::{Command, Output};

use prdesign::designs::{parse_table_csv, BlockMultiset};
use prdesign::harmonics::WeightEnumeratorVector;
use prdesign::jacobi::JacobiPolynomial;
use prdesign::reference::BINARY_31;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prdesign"))
        .args(args)
        .env_remove("PRDESIGN_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn status(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(format!("cli-{}-{name}", std::process::id()))
}

const P13: [&str; 6] = ["--p", "13", "--m", "3", "--q", "5"];
const P31: [&str; 6] = ["--p", "31", "--m", "3", "--q", "2"];

fn with<'a>(base: &[&'a str], rest: &[&'a str]) -> Vec<&'a str> {
    base.iter().chain(rest).copied().collect()
}

#[test]
fn jacobi_at_published_pair() {
    let o = run(&with(&["jacobi"], &with(&P13, &["--rep-of", "6,12"])));
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "168 w^2 x^7 y^4"));
    let j = JacobiPolynomial::from_text(&text).unwrap();
    assert_eq!(j.evaluate_at_ones(), 5u128.pow(9));
}

#[test]
fn jacobi_json_matches_text() {
    let text = stdout(&run(&with(&["jacobi"], &with(&P13, &["--rep-of", "4,7"]))));
    let o = run(&with(&["jacobi", "--format", "json"], &with(&P13, &["--rep-of", "4,7"])));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entry = &v["entries"][0];
    assert_eq!(entry["T"], serde_json::json!([4, 7]));
    assert_eq!(entry["orbit_size"], 26);
    let j = JacobiPolynomial::from_json(&entry["polynomial"].to_string()).unwrap();
    assert_eq!(j, JacobiPolynomial::from_text(&text).unwrap());
}

#[test]
fn jacobi_per_orbit() {
    let o = run(&with(&["jacobi"], &P13));
    assert_eq!(status(&o), 0);
    let text = stdout(&o);
    let headers: Vec<&str> = text.lines().filter(|l| l.starts_with("# T = ")).collect();
    assert_eq!(headers.len(), 3);
    assert!(headers.iter().all(|h| h.ends_with("H-orbit of 26 sets")));
}

#[test]
fn empty_shell_is_vacuous() {
    let o = run(&with(&["design-check"], &with(&P31, &["--ell", "1"])));
    assert_eq!(status(&o), 0);
    assert_eq!(stdout(&o), "ℓ = 1: empty; vacuously consistent\n");
}

#[test]
fn design_check_csv() {
    let o = run(&with(&["design-check", "--format", "csv"], &with(&P13, &["--ell-range", "1..5"])));
    assert_eq!(status(&o), 0);
    let rows = parse_table_csv(&stdout(&o)).unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows[..3].iter().all(|r| !r.non_empty()));
    assert_eq!((rows[3].lambda, rows[3].block_count), (Some(84), 1092));
}

#[test]
fn single_shells_are_one_designs() {
    let o = run(&with(&["design-check", "--single", "--t", "1", "--delsarte"], &with(&P13, &["--ell-range", "4..13"])));
    assert_eq!(status(&o), 0, "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains("1-(13,")).count(), 10);
}

#[test]
fn table1_csv() {
    let o = run(&["reproduce", "table1"]);
    let csv = stdout(&o);
    assert!(csv.starts_with("ell,lambda,blocks,is_design\n"));
    let rows = parse_table_csv(&csv).unwrap();
    assert_eq!(rows.len(), 22);
    assert!(rows.iter().all(|r| r.is_design));
    let r24 = rows.iter().find(|r| r.ell == 24).unwrap();
    assert_eq!(r24.lambda, Some(4140));
    // Exit status reports whether every row matched the published table.
    let all_match = rows.iter().all(|r| r.lambda == BINARY_31.lambda(r.ell));
    assert_eq!(status(&o), if all_match { 0 } else { 1 });
    if !all_match {
        assert!(stderr(&o).contains("published"));
    }
}

#[test]
fn table2_json() {
    let o = run(&["reproduce", "table2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    for r in rows {
        assert_eq!(r["lambda"], r["jacobi_lambda"]);
    }
    assert_eq!(rows[0]["published_lambda"], 84);
}

#[test]
fn examples_report() {
    let o = run(&["reproduce", "example52"]);
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert_eq!(text.matches(": matches published").count(), 3);
    assert!(text.contains("# conjugate sums vanish: yes"));
    assert!(text.contains("(report only)"));
}

#[test]
fn cap_exit_code() {
    let o = run(&with(&["weights", "--cap", "1000"], &P31));
    assert_eq!(status(&o), 3);
    assert!(stderr(&o).contains("cap"));
    assert!(stdout(&o).is_empty());

    let env = Command::new(env!("CARGO_BIN_EXE_prdesign"))
        .args(with(&["weights"], &P13))
        .env("PRDESIGN_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(status(&env), 3);

    // The flag wins over the environment.
    let both = Command::new(env!("CARGO_BIN_EXE_prdesign"))
        .args(with(&["weights", "--cap", "2000000"], &P13))
        .env("PRDESIGN_CAP", "1000")
        .output()
        .unwrap();
    assert_eq!(status(&both), 0);
}

#[test]
fn invalid_config_exit_code() {
    for args in [
        vec!["weights", "--p", "15", "--m", "3", "--q", "2"],
        vec!["weights", "--p", "13", "--m", "5", "--q", "2"],
        vec!["weights", "--p", "13", "--m", "3"],
        vec!["jacobi", "--p", "13", "--m", "3", "--q", "5", "--format", "csv"],
        vec!["jacobi", "--p", "13", "--m", "3", "--q", "5", "--rep-of", "1,2,3"],
        vec!["jacobi", "--p", "13", "--m", "3", "--q", "5", "--rep-of", "1,13"],
        vec!["design-check", "--p", "13", "--m", "3", "--q", "5"],
        vec!["design-check", "--p", "13", "--m", "3", "--q", "5", "--ell-range", "9..4"],
        vec!["design-check", "--p", "13", "--m", "3", "--q", "5", "--ell", "14"],
        vec!["reproduce", "table3"],
        vec!["weights", "--threads", "0", "--p", "13", "--m", "3", "--q", "5"],
    ] {
        let o = run(&args);
        assert_eq!(status(&o), 2, "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    for args in [
        with(&["weights"], &P31),
        with(&["hwe"], &P13),
        with(&["jacobi", "--format", "json"], &P13),
    ] {
        let one = run(&with(&["--threads", "1"], &args));
        let four = run(&with(&["--threads", "4"], &args));
        assert_eq!(status(&one), 0);
        assert_eq!(one.stdout, four.stdout, "{args:?}");
    }
}

#[test]
fn output_file_and_block_round_trip() {
    let path = scratch("shell4.txt");
    let p = path.to_str().unwrap();
    let o = run(&with(&["shells", "--ell", "4", "--output", p], &P13));
    assert_eq!(status(&o), 0);
    assert!(stdout(&o).is_empty());
    let blocks = BlockMultiset::from_text(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(blocks.block_count(), 1092);

    let o = run(&["design-check", "--blocks", p, "--delsarte"]);
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "ℓ = 4: 2-(13, 4, 84) design, 1092 blocks; harmonic criterion: design\n"
    );
    std::fs::remove_file(path).ok();
}

#[test]
fn non_design_prints_witness() {
    let path = scratch("nondesign.txt");
    std::fs::write(&path, "4 2\n0 1 * 1\n0 2 * 1\n").unwrap();
    let o = run(&["design-check", "--blocks", path.to_str().unwrap(), "--t", "1", "--delsarte"]);
    assert_eq!(status(&o), 1);
    assert!(stdout(&o).contains("not a 1-design"));
    assert!(stdout(&o).contains("harmonic criterion: not a design"));
    assert!(stderr(&o).contains("{3} lies in 0 blocks"));
    std::fs::remove_file(path).ok();

    let o = run(&["design-check", "--blocks", "/nonexistent/blocks.txt"]);
    assert_eq!(status(&o), 2);
}

#[test]
fn harmonic_basis_and_enumerators() {
    let o = run(&["harmonic-basis", "--p", "31", "--m", "3"]);
    assert_eq!(status(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("# degree 2, dimension 2, |H| = 310\n"));
    assert!(text.contains("# f0: orbit values 1 -1 0\n"));

    let o = run(&with(&["hwe", "--conjugate-sum", "--format", "json"], &P31));
    assert_eq!(status(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for e in v["enumerators"].as_array().unwrap() {
        assert!(e.as_array().unwrap().iter().all(|x| x == "0/1"));
    }
}

#[test]
fn hwe_of_degree_one_function() {
    // 1_{0} - 1_{1} on a cyclic code: the enumerator vanishes.
    let path = scratch("f.txt");
    std::fs::write(&path, "31 1\n0 1/1\n1 -1/1\n").unwrap();
    let o = run(&with(&["hwe", "--function", path.to_str().unwrap()], &P31));
    assert_eq!(status(&o), 0, "{}", stderr(&o));
    let e = WeightEnumeratorVector::from_text(&stdout(&o)).unwrap();
    assert_eq!(e.n(), 31);
    assert!(e.is_zero());
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_theorem_passes() {
    let o = run(&with(&["verify-theorem"], &P13));
    assert_eq!(status(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 12);
    assert!(text.ends_with("12 of 12 checks passed\n"));
}

#[test]
fn small_commands() {
    // g^(3j+i) mod 31 with g = 3
    let o = run(&["cosets", "--p", "31", "--m", "3"]);
    assert_eq!(
        stdout(&o),
        "# p = 31, m = 3, g = 3\n\
         A_0: 1 2 4 8 15 16 23 27 29 30\n\
         A_1: 3 6 7 12 14 17 19 24 25 28\n\
         A_2: 5 9 10 11 13 18 20 21 22 26\n"
    );

    let o = run(&with(&["genpoly"], &P13));
    assert_eq!(stdout(&o), "x^4 + 3x^3 + 3x + 1\n");

    let o = run(&with(&["code-info"], &P13));
    assert!(stdout(&o).starts_with("13 3 5 9\n1 3 0 3 1\n"));

    let o = run(&with(&["weights", "--format", "csv"], &P13));
    let csv = stdout(&o);
    assert!(csv.starts_with("weight,count\n0,1\n"));
    assert!(csv.contains("\n4,364\n"));
}
