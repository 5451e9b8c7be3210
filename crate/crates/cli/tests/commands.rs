use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn polarorder(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarorder"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn bounds_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = polarorder(dir.path(), &["bounds", "--n", "1-10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,M,lower_fraction,upper_fraction,upper_raw");
    assert_eq!(lines[1], "1,1,0.5,1.0,2.0");
    assert_eq!(lines[4], "4,2,0.125,0.5,8.0");
    assert!(lines[10].starts_with("10,40,0.0390625,0.221"));
}

#[test]
fn bad_range_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(polarorder(dir.path(), &["bounds", "--n", "9-3"]).status.code(), Some(2));
    assert_eq!(polarorder(dir.path(), &["bounds", "--n", "0-70"]).status.code(), Some(2));
    assert_eq!(polarorder(dir.path(), &["frobnicate"]).status.code(), Some(2));
}

#[test]
fn chains_files() {
    let dir = tempfile::tempdir().unwrap();
    for (n, k) in [(2, 1), (4, 2), (10, 40)] {
        let o = polarorder(dir.path(), &["chains", "--n", &n.to_string()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).contains(&format!("chains: {k}\nM(n): {k}\n")));
        let text = fs::read_to_string(dir.path().join(format!("chains-n{n}.txt"))).unwrap();
        assert!(text.starts_with(&format!("polarorder-chains v1 n={n} chains={k}\n")));
    }
    let o = polarorder(dir.path(), &["chains", "--n", "13"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_rate_small() {
    let dir = tempfile::tempdir().unwrap();
    let o = polarorder(dir.path(), &["construct", "bec:0.5", "--n", "2", "--rate", "0.5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(dir.path().join("selected-n2.txt")).unwrap();
    assert_eq!(text, "# n=2 rate=0.5 size=2\n2\n3\n");
    assert!(dir.path().join("chains-n2.txt").exists());
}

fn report_value(report: &str, key: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(key))
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or_else(|| panic!("no {key} in {report}"))
}

#[test]
fn construct_threshold_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = polarorder(dir.path(), &["construct", "bec:0.5", "--n", "10", "--threshold", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let report = stdout(&o);
    assert!(report.contains("(built, 40 chains)"));
    assert!(report_value(&report, "evaluations:") <= 228.0);
    assert_eq!(report_value(&report, "budget:"), 228.0);
    assert!(report_value(&report, "savings:") >= 0.75);
    let first = fs::read(dir.path().join("selected-n10.txt")).unwrap();

    // Second run reuses the cache and produces the same file.
    let o = polarorder(dir.path(), &["construct", "bec:0.5", "--n", "10", "--threshold", "0.01", "--jobs", "1"]);
    assert!(stdout(&o).contains("(cached, 40 chains)"));
    assert_eq!(fs::read(dir.path().join("selected-n10.txt")).unwrap(), first);
}

#[test]
fn construct_output_beside_cache() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("out")).unwrap();
    let o = polarorder(
        dir.path(),
        &["construct", "bec:0.3", "--n", "4", "--threshold", "0.2", "--output", "out/fp.txt"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("out/chains-n4.txt").exists());
    let explicit = polarorder(
        dir.path(),
        &[
            "construct", "bec:0.3", "--n", "4", "--threshold", "0.2", "--partition", "out/chains-n4.txt", "--output",
            "fp2.txt",
        ],
    );
    assert_eq!(explicit.status.code(), Some(0));
    assert_eq!(
        fs::read(dir.path().join("out/fp.txt")).unwrap(),
        fs::read(dir.path().join("fp2.txt")).unwrap()
    );
}

#[test]
fn construct_rejects_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad: &[&[&str]] = &[
        &["construct", "bec:0.5", "--n", "4", "--threshold", "1.5"],
        &["construct", "bec:1.5", "--n", "4", "--threshold", "0.5"],
        &["construct", "bsc:0.1", "--n", "4", "--threshold", "0.5"],
        &["construct", "bec:0.5", "--n", "4"],
        &["construct", "bec:0.5", "--n", "4", "--threshold", "0.5", "--rate", "0.5"],
        &["construct", "bec:0.5", "--n", "2", "--rate", "0.1"],
    ];
    for args in bad {
        assert_eq!(polarorder(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
    polarorder(dir.path(), &["chains", "--n", "3"]);
    let o = polarorder(
        dir.path(),
        &["construct", "bec:0.5", "--n", "4", "--threshold", "0.5", "--partition", "chains-n3.txt"],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("expected n = 4"));
}

#[test]
fn hasse_edges() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(stdout(&polarorder(dir.path(), &["hasse", "--n", "1"])), "0 1\n");
    assert_eq!(stdout(&polarorder(dir.path(), &["hasse", "--n", "2"])), "0 1\n1 2\n2 3\n");
    let four = stdout(&polarorder(dir.path(), &["hasse", "--n", "4"]));
    assert!(four.lines().any(|l| l == "1 2"));
    assert!(!four.lines().any(|l| l == "7 8"));
    assert_eq!(polarorder(dir.path(), &["hasse", "--n", "11"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_flags_a_bad_partition() {
    let dir = tempfile::tempdir().unwrap();
    let o = polarorder(dir.path(), &["verify", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for suite in ["oracle_equivalence", "dilworth_identity", "degradation_monotonicity", "fp_equivalence", "budget"] {
        assert!(text.contains(&format!("PASS {suite}")), "{text}");
    }

    fs::write(
        dir.path().join("bad.txt"),
        "polarorder-chains v1 n=4 chains=2\n0 1 2 4 8 10 9 12\n3 5 6 7 11 13 14 15\n",
    )
    .unwrap();
    let o = polarorder(dir.path(), &["verify", "--n-max", "3", "--partition", "bad.txt"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL verify_partition"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("verify_partition"));
}
