use std::process::{Command, Output};

use trislice::io::{
    decode_coefficients, decode_comparison, decode_kernel, decode_report, families_from_rows, Format, Status,
};

fn trislice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trislice")).args(args).output().expect("binary runs")
}

fn stdout_ok(args: &[&str]) -> String {
    let out = trislice(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn series_general_has_two_point_row() {
    let text = stdout_ok(&["series", "--family", "general", "--kmax", "5", "--order", "12"]);
    assert!(text.starts_with("family,k,n,num,den\n"));
    assert!(text.lines().any(|l| l == "Gk,0,2,4,1"));
    let families = families_from_rows(&decode_coefficients(&text, Format::Csv).unwrap()).unwrap();
    let kinds: Vec<String> = families.iter().map(|f| f.kind().to_string()).collect();
    assert_eq!(kinds, ["R", "S", "T", "Gk"]);
}

#[test]
fn series_simple_has_single_triangle() {
    let text = stdout_ok(&["series", "--family", "simple", "--kmax", "3", "--order", "8"]);
    assert!(text.lines().any(|l| l == "t,1,1,1,1"));
    assert!(!text.lines().any(|l| l.starts_with("Gk")));
}

#[test]
fn order_zero_is_constant_terms_only() {
    for family in ["general", "simple"] {
        let text = stdout_ok(&["series", "--family", family, "--order", "0", "--kmax", "3"]);
        let rows = decode_coefficients(&text, Format::Csv).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.n == 0));
    }
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        &["series", "--kmax", "4", "--order", "10"][..],
        &["series", "--family", "simple", "--format", "json"],
        &["oracle", "--fmax", "4"],
        &["kernel", "--order", "5"],
        &["verify", "--order", "6"],
    ] {
        assert_eq!(stdout_ok(args), stdout_ok(args), "{args:?}");
    }
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    for family in ["general", "simple"] {
        let base = ["series", "--family", family, "--kmax", "3", "--order", "9"];
        let csv = stdout_ok(&[&base[..], &["--format", "csv"]].concat());
        let json = stdout_ok(&[&base[..], &["--format", "json"]].concat());
        assert_eq!(
            decode_coefficients(&csv, Format::Csv).unwrap(),
            decode_coefficients(&json, Format::Json).unwrap()
        );
    }
    let csv = stdout_ok(&["oracle", "--fmax", "4"]);
    let json = stdout_ok(&["oracle", "--fmax", "4", "--format", "json"]);
    assert_eq!(decode_comparison(&csv, Format::Csv).unwrap(), decode_comparison(&json, Format::Json).unwrap());
}

#[test]
fn closed_form_agrees_with_series() {
    for family in ["general", "simple"] {
        let args = ["--family", family, "--kmax", "3", "--order", "8"];
        let closed = stdout_ok(&[&["closed-form"][..], &args].concat());
        let series = stdout_ok(&[&["series"][..], &args].concat());
        // No closed form for T_k or G_0.
        let series: Vec<&str> = series.lines().filter(|l| !l.starts_with("T,") && !l.starts_with("Gk,0,")).collect();
        assert_eq!(closed.lines().collect::<Vec<_>>(), series);
    }
}

#[test]
fn kernel_table_is_square() {
    let text = stdout_ok(&["kernel", "--order", "3"]);
    let rows = decode_kernel(&text, Format::Csv).unwrap();
    assert_eq!(rows.len(), 16);
    assert_eq!((rows[0].m, rows[0].n, rows[0].value().unwrap()), (0, 0, trislice::algebra::int(1)));
}

#[test]
fn oracle_matches_series() {
    let text = stdout_ok(&["oracle", "--fmax", "2"]);
    assert!(text.starts_with("F,k,oracle_count,series_count,match\n"));
    assert!(text.lines().any(|l| l == "2,0,4,4,true"));
    let rows = decode_comparison(&stdout_ok(&["oracle", "--fmax", "4"]), Format::Csv).unwrap();
    assert!(rows.iter().any(|r| r.f == 4));
    assert!(rows.iter().all(|r| r.matches));
}

#[test]
fn oracle_rejects_odd_and_oversized_bounds() {
    for fmax in ["3", "10"] {
        let out = trislice(&["oracle", "--fmax", fmax]);
        assert_eq!(out.status.code(), Some(2), "fmax {fmax}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn verify_default_passes() {
    let report = decode_report(&stdout_ok(&["verify"])).unwrap();
    assert_eq!(report.len(), 21);
    assert!(report.iter().all(|r| r.status == Status::Pass), "{report:?}");
    let vacuous = decode_report(&stdout_ok(&["verify", "--order", "0"])).unwrap();
    assert!(vacuous.iter().all(|r| r.status == Status::Pass), "{vacuous:?}");
}

#[test]
fn verify_reports_corrupted_kernel_entry() {
    let out = trislice(&["verify", "--corrupt-psi", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let report = decode_report(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let failed: Vec<_> = report.iter().filter(|r| r.status == Status::Fail).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].check, "kernel-three-route");
    assert!(failed[0].detail.contains("ψ_{1,2}"));
}

#[test]
fn out_file_replaces_target_without_leftovers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gk.json");
    std::fs::write(&path, "stale").unwrap();
    let args = ["series", "--kmax", "2", "--order", "6", "--format", "json"];
    let out = trislice(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), stdout_ok(&args));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(trislice(&["bogus"]).status.code(), Some(2));
    assert_eq!(trislice(&["series", "--family", "cubic"]).status.code(), Some(2));
    assert_eq!(trislice(&["verify", "--corrupt-psi", "1"]).status.code(), Some(2));
    let out = trislice(&["series", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(2));
}
