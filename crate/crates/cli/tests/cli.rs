use std::collections::BTreeSet;

use probident_cli::commands::FullReport;
use probident_cli::rows::{read_identity_csv, IdentityRow, SeriesRow};
use probident_cli::{run_with, EXIT_CHECK_FAILED, EXIT_PASS, EXIT_USAGE};
use probident_core::exact::rational::int;
use probident_core::identities::{verify, IdentityId};
use probident_core::montecarlo::SampleStats;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("probident").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn gould_at_one_prints_four_on_both_sides() {
    let (code, out, _) = run(&["verify", "--identity", "gould-6.60", "--n", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("lhs = 4; rhs = 4; equal"), "{out}");
}

#[test]
fn alternating_odd_order_is_zero() {
    let (code, out, _) =
        run(&["verify", "--identity", "alternating-convolution", "--n", "3", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["lhs"], Value::Array(vec![]));
    assert_eq!(v["rhs"], Value::Array(vec![]));
    assert_eq!(v["equal"], Value::Bool(true));
}

#[test]
fn central_convolution_reports_lower_index_note() {
    let (code, out, _) =
        run(&["verify", "--identity", "central-convolution", "--n", "5", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["note"].as_str().unwrap().contains("starts at k = 0"));
}

#[test]
fn json_schema_and_round_trip() {
    let (code, out, _) =
        run(&["verify", "--identity", "gamma-even-moment", "--n", "3", "--p", "2/7", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    for key in ["identity", "n", "p", "lhs", "rhs", "equal", "approx_lhs", "approx_rhs"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["p"], "2/7");
    assert!(v["lhs"][0][1].as_str().unwrap().contains('/'));
    let row: IdentityRow = serde_json::from_str(&out).unwrap();
    let direct = verify(IdentityId::GammaEvenMoment, 3, Some(&probident_core::exact::rational::frac(2, 7))).unwrap();
    assert_eq!(row.report, direct);
    assert_eq!(row.approx_lhs, Some(direct.approx_lhs()));
}

#[test]
fn pi_graded_json_values() {
    let (code, out, _) =
        run(&["verify", "--identity", "remark2-series", "--n", "2", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let row: IdentityRow = serde_json::from_str(&out).unwrap();
    assert_eq!(row.report.lhs.as_monomial().unwrap().0, 2);
}

#[test]
fn brychkov_sweep_csv_has_twenty_equal_rows() {
    let (code, out, _) = run(&["sweep", "--identity", "brychkov", "--n-max", "20", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let rows = read_identity_csv(out.as_bytes()).unwrap();
    assert_eq!(rows.len(), 20);
    for (i, row) in rows.iter().enumerate() {
        assert!(row.report.equal);
        assert_eq!(row.report, verify(IdentityId::Brychkov, i as u64 + 1, None).unwrap());
    }
    assert_eq!(rows[0].approx_lhs, Some(12.0));
}

#[test]
fn sweep_over_parameters_is_ordered_by_order_then_parameter() {
    let (code, out, _) = run(&[
        "sweep", "--identity", "beta-moment", "--n-max", "3", "--p-list", "1/3,1/2,1", "--format", "csv",
    ]);
    assert_eq!(code, EXIT_PASS);
    let rows = read_identity_csv(out.as_bytes()).unwrap();
    let keys: Vec<(u64, String)> =
        rows.iter().map(|r| (r.report.n, r.report.p.as_ref().unwrap().to_string())).collect();
    assert_eq!(keys.len(), 9);
    assert_eq!(keys[0], (1, "1/3".to_string()));
    assert_eq!(keys[8], (3, "1".to_string()));
}

#[test]
fn multi_convolution_takes_parts_in_p_slot() {
    let (code, out, _) = run(&["verify", "--identity", "multi-convolution", "--n", "6", "--p", "5"]);
    assert_eq!(code, EXIT_PASS, "{out}");
    let (code, _, err) = run(&["verify", "--identity", "multi-convolution", "--n", "6", "--p", "5/2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("positive integer"));
}

#[test]
fn report_covers_every_identity_once() {
    let (code, out, _) = run(&["report", "--all", "--n-max", "6", "--format", "json", "--terms", "500"]);
    assert_eq!(code, EXIT_PASS);
    let report: FullReport = serde_json::from_str(&out).unwrap();
    assert!(report.passed);
    let ids: Vec<IdentityId> = report.identities.iter().map(|g| g.identity).collect();
    assert_eq!(ids.len(), IdentityId::ALL.len());
    assert_eq!(ids.iter().collect::<BTreeSet<_>>().len(), IdentityId::ALL.len());
    assert_eq!(report.series.len(), 5);
    assert!(report.series.iter().all(|s| s.brackets_target && s.note.contains("1/k!")));
    let remark2 = report.identities.iter().find(|g| g.identity == IdentityId::Remark2Series).unwrap();
    assert!(remark2.note.as_deref().unwrap().contains("diverges"));
}

#[test]
fn sample_is_reproducible_and_serializes() {
    let args = ["sample", "--statistic", "t-ratio", "--n", "1", "--p", "1/2", "--samples", "20000", "--seed", "7", "--format", "json"];
    let (code, first, _) = run(&args);
    let (_, second, _) = run(&args);
    assert_eq!(first, second);
    let stats: SampleStats = serde_json::from_str(&first).unwrap();
    assert_eq!(stats.exact_target, 0.5);
    assert_eq!(code, if stats.z_score.abs() <= 5.0 { EXIT_PASS } else { EXIT_CHECK_FAILED });
}

#[test]
fn thread_cap_does_not_change_results() {
    let args = ["sample", "--statistic", "gamma-diff", "--n", "2", "--p", "1", "--samples", "100000", "--format", "json"];
    let (_, free, _) = run(&args);
    std::env::set_var("MIL_THREADS", "1");
    let (_, capped, _) = run(&args);
    std::env::remove_var("MIL_THREADS");
    assert_eq!(free, capped);
}

#[test]
fn series_command_brackets() {
    let (code, out, _) = run(&["series", "--n", "1", "--terms", "1", "--format", "json"]);
    assert_eq!(code, EXIT_PASS);
    let row: SeriesRow = serde_json::from_str(&out).unwrap();
    assert_eq!(row.partial_sum, "2/3");
    assert!(row.brackets_target);
}

#[test]
fn density_csv_and_failure_exit() {
    let (code, out, _) = run(&["density", "--points", "4", "--format", "csv"]);
    assert_eq!(code, EXIT_PASS);
    let mut reader = csv::Reader::from_reader(out.as_bytes());
    let header = reader.headers().unwrap().clone();
    assert!(header.iter().any(|h| h == "abs_diff"));
    assert_eq!(reader.records().count(), 4 + 7 + 24);

    // an unattainable tolerance is a failed check, not a usage error
    let (code, _, _) = run(&["density", "--points", "0", "--tol", "1e-300"]);
    assert_eq!(code, EXIT_CHECK_FAILED);
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gould.json");
    let (code, out, _) = run(&[
        "verify", "--identity", "gould-6.60", "--n", "2", "--format", "json", "--output", path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.is_empty());
    let row: IdentityRow = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(row.report.lhs.as_rational(), Some(int(36)));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--identity", "no-such-identity", "--n", "1"],
        vec!["verify", "--identity", "beta-moment", "--n", "1", "--p", "0.5"],
        vec!["verify", "--identity", "beta-moment", "--n", "1"],
        vec!["sample", "--statistic", "gamma-diff", "--n", "1", "--p", "1", "--samples", "10"],
        vec!["sample", "--statistic", "mystery", "--n", "1"],
        vec!["report", "--n-max", "3"],
        vec!["verify", "--identity", "gould-6.60", "--n", "1", "--output", "/nonexistent-dir/x.json"],
        vec!["frobnicate"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("verify"));
}
