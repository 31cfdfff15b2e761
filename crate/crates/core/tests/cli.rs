use std::process::{Command, Output};

fn gaussint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gaussint"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn verify_json_has_one_passing_line_per_record() {
    let o = gaussint(&["verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 37);
    for line in lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass", "{line}");
        assert!(v["abs_diff"].as_f64().unwrap() <= v["tol"].as_f64().unwrap());
    }
}

#[test]
fn verify_csv_has_header_and_17_digit_values() {
    let o = gaussint(&["verify", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "entry_id");
    assert_eq!(&headers[2], "closed_value");
    let rows: Vec<_> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 37);
    let mantissa = rows[0][2].split('e').next().unwrap().replace(['-', '.'], "");
    assert_eq!(mantissa.len(), 17);
}

#[test]
fn verify_markdown_carries_discrepancy_footnotes() {
    let o = gaussint(&["verify"]);
    assert_eq!(o.status.code(), Some(0));
    let md = stdout(&o);
    assert!(md.starts_with("# Verification report"));
    assert!(md.contains("37/37 records pass."));
    let qabc = md.lines().find(|l| l.starts_with("| Q.ABC")).unwrap();
    assert!(qabc.contains("[^"), "{qabc}");
    assert!(md.contains("prefactor"));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = gaussint(&["verify", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), o.stdout);
}

#[test]
fn single_entry_with_params() {
    let o = gaussint(&["verify", "--id", "GEN.N", "--param", "n=7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["entry_id"], "GEN.N");
    assert_eq!(v["params"]["n"], 7.0);
}

#[test]
fn failing_tolerance_exits_one() {
    let o = gaussint(&["verify", "--id", "T1.ACOS", "--tol", "1e-30", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_ne!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--id", "NOPE"][..],
        &["verify", "--id", "Q.A", "--param", "a=-1"],
        &["verify", "--id", "Q.A", "--param", "z=1"],
        &["verify", "--param", "n=2"],
        &["verify", "--tol", "-1"],
        &["verify", "--format", "xml"],
        &["gamma-table", "--n", "1"],
        &["frobnicate"],
    ] {
        let o = gaussint(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
}

#[test]
fn eval_certifies_a_family_member() {
    let o = gaussint(&["eval", "integral exp(-(2*x^2 + x + 0.5)) dx from 0 to inf"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("match:       Q.ABC"));
    assert!(out.contains("certified"));
}

#[test]
fn eval_without_catalog_match_still_integrates() {
    let o = gaussint(&["eval", "integral exp(-x^2)*cos(x)^2 dx from 0 to 1"]);
    let out = stdout(&o);
    assert!(out.contains("none"), "{out}");
    assert!(out.contains("oracle:"));
}

#[test]
fn eval_diagnostic_points_at_the_column() {
    let o = gaussint(&["eval", "integral exp(-x^2) dx from 0 to inf junk"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("position 37"), "{err}");
    let caret = err.lines().find(|l| l.trim_start().starts_with('^')).unwrap();
    let query_line = err.lines().find(|l| l.contains("integral exp")).unwrap();
    let offset = query_line.find("integral").unwrap();
    assert_eq!(caret.find('^').unwrap() - offset, 36);
}

#[test]
fn gamma_table_lists_requested_rows() {
    let o = gaussint(&["gamma-table", "--n", "3,10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("2.6789385347"));
    assert!(out.contains("[^1]"));
    assert_eq!(out.lines().filter(|l| l.starts_with("| 10")).count(), 1);
}

#[test]
fn list_shows_every_entry() {
    let o = gaussint(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["GEN.N", "T1.TAN", "T2.SINH", "Q.ABC", "T1.ACOSH.REAL"] {
        assert!(out.contains(&format!("| {id} ")), "{id}");
    }
}
