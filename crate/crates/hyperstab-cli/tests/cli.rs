use std::process::{Command, Output};

use hyperstab::arithstat::{MomentReport, TraceReport};
use hyperstab::series::SeriesReport;
use hyperstab_cli::{Report, VerifyReport};

fn hyperstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperstab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn series_example_emits_poincare_row() {
    let o = hyperstab(&["series", "--family", "braid-schur", "--lambda", "1,1", "--zmax", "8"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<SeriesReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<String> = rows[0].poincare.iter().map(|e| e.dim.to_string()).collect();
    assert_eq!(dims, ["1", "2", "2", "2", "2", "2", "2", "2", "2"]);
}

#[test]
fn traces_example_passes() {
    let o = hyperstab(&["traces", "--q", "3", "--n", "5", "--max-weight", "4"]);
    assert_eq!(code(&o), 0);
    let t: TraceReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((t.q, t.n), (3, 5));
    assert!(t.all_pass());
}

#[test]
fn json_output_round_trips() {
    let o = hyperstab(&["moments", "--q", "3", "--g", "1", "--r", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let m: MomentReport = serde_json::from_str(&text).unwrap();
    assert!(m.identity_holds());
    let again = hyperstab_cli::render(&Report::Moments(m), hyperstab_cli::Format::Json).unwrap();
    assert_eq!(again, text);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["traces", "--q", "4"][..],
        &["traces", "--q", "3", "--n", "30"],
        &["series", "--family", "nonsense"],
        &["series", "--lambda", "1,x"],
        &["moments", "--g", "0"],
        &["traces", "--workers", "0"],
        &["frobnicate"],
    ] {
        let o = hyperstab(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?} printed no message");
    }
}

#[test]
fn output_is_identical_across_worker_counts() {
    let args = ["traces", "--q", "3", "--n", "6", "--max-weight", "4"];
    let one = hyperstab(&[&args[..], &["--workers", "1"]].concat());
    let four = hyperstab(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let again = hyperstab(&[&args[..], &["--workers", "4"]].concat());
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn flags_override_the_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    std::fs::write(&path, "format = \"csv\"\nq = 5\nn = 3\nmax_weight = 2\n").unwrap();
    let p = path.to_str().unwrap();

    let from_file = hyperstab(&["--config", p, "traces"]);
    assert_eq!(code(&from_file), 0);
    let text = stdout(&from_file);
    assert!(text.starts_with("q,n,lambda,brute,stable,bound,pass"));
    assert!(text.lines().nth(1).unwrap().starts_with("5,3,"));

    let overridden = hyperstab(&["--config", p, "--format", "json", "traces", "--q", "3"]);
    let t: TraceReport = serde_json::from_str(&stdout(&overridden)).unwrap();
    assert_eq!((t.q, t.n), (3, 3));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "colour = \"blue\"\n").unwrap();
    let o = hyperstab(&["--config", path.to_str().unwrap(), "traces"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn cache_directory_is_filled_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("frob");
    let c = cache.to_str().unwrap();
    let args = ["--cache", c, "traces", "--q", "3", "--n", "5", "--max-weight", "4"];
    let cold = hyperstab(&args);
    assert_eq!(code(&cold), 0);
    let file = cache.join("frobenius-q3-n5.bin");
    assert!(file.exists());
    let warm = hyperstab(&args);
    assert_eq!(cold.stdout, warm.stdout);
    let plain = hyperstab(&["traces", "--q", "3", "--n", "5", "--max-weight", "4"]);
    assert_eq!(cold.stdout, plain.stdout);
}

#[test]
fn csv_rows_match_json_rows() {
    let json = hyperstab(&["traces", "--q", "3", "--n", "5", "--max-weight", "3"]);
    let csv = hyperstab(&["--format", "csv", "traces", "--q", "3", "--n", "5", "--max-weight", "3"]);
    let t: TraceReport = serde_json::from_str(&stdout(&json)).unwrap();
    let mut rdr = csv::Reader::from_reader(csv.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), t.rows.len());
    for (rec, row) in rows.iter().zip(&t.rows) {
        assert_eq!(&rec[2], row.lambda.to_string());
        assert_eq!(&rec[6], row.pass.to_string());
    }
}

#[test]
fn quick_verify_passes() {
    let o = hyperstab(&["verify", "--profile", "quick"]);
    assert_eq!(code(&o), 0);
    let v: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.all_pass());
    for module in ["symfunc", "series", "repchar", "ffcurves", "arithstat"] {
        assert!(v.rows.iter().any(|r| r.module == module), "no {module} rows");
    }
}

#[test]
fn injected_fault_fails_verify() {
    let o = hyperstab(&["verify", "--profile", "quick", "--inject-fault"]);
    assert_eq!(code(&o), 1);
    let v: VerifyReport = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&str> = v.rows.iter().filter(|r| !r.pass).map(|r| r.check.as_str()).collect();
    assert!(failed.iter().any(|c| c.starts_with("dual-method")), "{failed:?}");
}

#[test]
fn pretty_output_is_text() {
    let o = hyperstab(&["--format", "pretty", "moments", "--q", "3", "--g", "1", "--r", "1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("holds: true"), "{text}");
}
