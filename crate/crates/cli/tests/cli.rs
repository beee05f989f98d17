//! End-to-end CLI behavior: exit codes, output determinism, file round-trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn pgmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgmlab"))
        .args(args)
        .env_remove("PGMLAB_SEED")
        .env_remove("PGMLAB_FORMAT")
        .env_remove("PGMLAB_OUT")
        .env_remove("PGMLAB_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("pgmlab-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn code_search_emits_verified_json() {
    let out = pgmlab(&["code", "--n", "32", "--seed", "7"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["n"], 32);
    assert_eq!(doc["k"], 8);
    assert!(doc["min_distance"].as_u64().unwrap() >= 4);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 32);
}

#[test]
fn code_file_round_trips_into_pgm() {
    let path = temp_path("code.json");
    let out = pgmlab(&[
        "code",
        "--n",
        "16",
        "--seed",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = pgmlab(&[
        "pgm",
        "--kind",
        "codeword",
        "--d",
        "16",
        "--t",
        "1:16:1",
        "--code",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 16);
    for row in rows {
        assert!(row.contains(",true,"), "row not satisfied: {row}");
    }
    std::fs::remove_file(path).ok();
}

#[test]
fn pac_sweep_all_rows_satisfied() {
    let out = pgmlab(&[
        "pgm",
        "--kind",
        "pac",
        "--d",
        "16",
        "--epsilon",
        "0.04",
        "--t",
        "1:50:1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells[11], "true", "satisfied column in {row}");
        assert!(cells[12].is_empty(), "error column in {row}");
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = [
        "pgm",
        "--kind",
        "noisy",
        "--d",
        "16",
        "--epsilon",
        "0.02,0.04",
        "--eta",
        "0.1",
        "--t",
        "1:10:1",
        "--seed",
        "11",
    ];
    let a = pgmlab(&args);
    let b = pgmlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    // Output is also independent of the worker count.
    let mut serial_args: Vec<&str> = args.to_vec();
    serial_args.extend(["--jobs", "1"]);
    let c = pgmlab(&serial_args);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn empty_sweep_is_a_usage_error() {
    let out = pgmlab(&[
        "pgm",
        "--kind",
        "pac",
        "--d",
        "16",
        "--epsilon",
        "",
        "--t",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn invalid_epsilon_rows_error_without_crashing() {
    // Sweep crossing the pac validity boundary: valid rows succeed, invalid
    // ones carry an error entry and the exit code is nonzero.
    let out = pgmlab(&[
        "pgm",
        "--kind",
        "pac",
        "--d",
        "16",
        "--epsilon",
        "0.04,0.06",
        "--t",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(
        rows[0].ends_with(','),
        "first row should have no error: {}",
        rows[0]
    );
    assert!(
        rows[1].contains("accuracy must lie"),
        "second row: {}",
        rows[1]
    );
}

#[test]
fn json_format_parses_and_matches_csv_values() {
    let args_csv = [
        "fourier", "--beta", "1", "--m", "12", "--t", "1", "--q", "0:12:1",
    ];
    let csv = pgmlab(&args_csv);
    assert!(csv.status.success());
    let mut args_json = args_csv.to_vec();
    args_json.extend(["--format", "json"]);
    let json = pgmlab(&args_json);
    assert!(json.status.success());

    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(rows.len(), 13);
    for row in &rows {
        assert_eq!(row["satisfied"], serde_json::json!(true));
    }
    // Cross-check one value between the two formats.
    let csv_text = stdout(&csv);
    let first_csv_bound: f64 = csv_text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(5)
        .unwrap()
        .parse()
        .unwrap();
    let first_json_bound = rows[0]["bound"].as_f64().unwrap();
    assert_eq!(first_csv_bound, first_json_bound);
}

#[test]
fn params_file_prefills_options() {
    let path = temp_path("params.json");
    std::fs::write(
        &path,
        r#"{"kind": "pac", "d": 16, "epsilon": "0.04", "t": "1:3:1"}"#,
    )
    .unwrap();
    let from_file = pgmlab(&["pgm", "--params", path.to_str().unwrap()]);
    assert!(from_file.status.success(), "stderr: {:?}", from_file.stderr);
    let direct = pgmlab(&[
        "pgm",
        "--kind",
        "pac",
        "--d",
        "16",
        "--epsilon",
        "0.04",
        "--t",
        "1:3:1",
    ]);
    assert_eq!(from_file.stdout, direct.stdout);

    // Explicit flags win over the file.
    let overridden = pgmlab(&["pgm", "--params", path.to_str().unwrap(), "--t", "1"]);
    let text = stdout(&overridden);
    assert_eq!(text.lines().count(), 2); // header + one row
    std::fs::remove_file(path).ok();
}

#[test]
fn learn_reports_have_reproducible_rows() {
    let args = [
        "learn",
        "--experiment",
        "complexity",
        "--setting",
        "pac",
        "--d",
        "8",
        "--epsilon",
        "0.1",
        "--delta",
        "0.1",
        "--trials",
        "100",
        "--seed",
        "5",
    ];
    let a = pgmlab(&args);
    let b = pgmlab(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn resource_guard_exits_three() {
    // bv with n beyond the statevector cap trips the resource guard.
    let out = pgmlab(&["learn", "--experiment", "bv", "--n", "20", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    let out = pgmlab(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pgmlab(&["pgm", "--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn env_variables_mirror_global_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_pgmlab"))
        .args(["info", "--setting", "pac", "--d", "8", "--epsilon", "0.05"])
        .env("PGMLAB_FORMAT", "json")
        .env_remove("PGMLAB_SEED")
        .env_remove("PGMLAB_OUT")
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["classical_bits"].as_f64().unwrap(), 0.2);
}

#[test]
fn rows_are_self_describing() {
    // Re-running a row's parameters through the library reproduces its values.
    let out = pgmlab(&[
        "pgm",
        "--kind",
        "pac",
        "--d",
        "16",
        "--epsilon",
        "0.04",
        "--t",
        "3",
        "--seed",
        "21",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &rows[0];
    let (code, _) = pgmlab::codes::find_good_code(
        row["d"].as_u64().unwrap() as usize,
        row["seed"].as_u64().unwrap(),
    )
    .unwrap();
    let ens = pgmlab::Ensemble::Pac(
        pgmlab::PacEnsembleParams::new(
            row["d"].as_u64().unwrap() as usize,
            row["epsilon"].as_f64().unwrap(),
            row["t"].as_u64().unwrap() as u32,
            code,
        )
        .unwrap(),
    );
    let exact = pgmlab::pgm::pgm_success_xor(&ens.xor_profile().unwrap())
        .unwrap()
        .success_probability;
    assert_eq!(exact, row["p_pgm_fourier"].as_f64().unwrap());
}

#[test]
fn csv_floats_round_trip_exactly() {
    let out = pgmlab(&[
        "info",
        "--setting",
        "agnostic",
        "--d",
        "8",
        "--epsilon",
        "0.05",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let classical: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    // 1 - H(1/2 + 2 eps) at eps = 0.05.
    assert_eq!(classical, 0.02904940554533142);
}
