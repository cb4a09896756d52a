use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use aaals::report::fmt_f64;
use aaals::transforms::{default_grid, hilbert_transform, HilbertFunction, HilbertOptions};

fn aaals(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aaals")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn data_file(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn help_lists_subcommands_and_flags() {
    let o = aaals(&["--help"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    for cmd in ["solve", "approx", "hilbert", "confmap", "demo"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
    let o = aaals(&["solve", "--help"]);
    let text = String::from_utf8_lossy(&o.stdout);
    for flag in ["--tol", "--degree", "--variant", "--samples-per-segment", "--artificial-data", "--max-degree", "--out", "--strict"] {
        assert!(text.contains(flag), "{flag} missing from solve help");
    }
}

#[test]
fn malformed_input_exits_with_one() {
    assert_eq!(code(&aaals(&["solve", "--no-such-flag"])), 1);
    assert_eq!(code(&aaals(&["solve", "/nonexistent/domain.json"])), 1);
    assert_eq!(code(&aaals(&["solve", "--builtin", "l-shape", "--tol=-1"])), 1);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"components\": [{\"segments\": [\n  {\"kind\": \"line\", \"from\": [0, 0]}\n]}]}").unwrap();
    let o = aaals(&["solve", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("bad.json") && err.contains("line 3"), "{err}");

    let csv = dir.path().join("u.csv");
    fs::write(&csv, "y,u\n0,1\n1,nan\n").unwrap();
    let o = aaals(&["hilbert", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("u.csv:3"));
}

#[test]
fn strict_turns_warnings_into_exit_two() {
    let args = ["approx", "--max-degree", "3"];
    assert_eq!(code(&aaals(&args)), 0);
    assert_eq!(code(&aaals(&[&args[..], &["--strict"]].concat())), 2);
}

#[test]
fn repeated_runs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<_> = ["a", "b"]
        .iter()
        .map(|tag| {
            let out = dir.path().join(tag);
            let o = aaals(&["solve", &data_file("lshape.json"), "--eval", "0.99,0.99", "--grid", "9,9", "--out", out.to_str().unwrap()]);
            assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
            out
        })
        .collect();
    for f in ["solution.json", "boundary_error.csv", "grid.csv", "values.csv"] {
        let a = fs::read(runs[0].join(f)).unwrap();
        let b = fs::read(runs[1].join(f)).unwrap();
        assert!(a == b, "{f} differs between runs");
    }
    assert!(runs[0].join("timings.json").exists());
}

fn read_values(path: &Path) -> Vec<(f64, f64)> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[1].parse().unwrap())
        })
        .collect()
}

#[test]
fn tabulated_hilbert_matches_library() {
    let y = default_grid();
    let u: Vec<f64> = y.iter().map(|&x| HilbertFunction::Gauss.eval(x)).collect();
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("gauss.csv");
    let mut text = String::from("y,u\n");
    for (a, b) in y.iter().zip(&u) {
        text += &format!("{},{}\n", fmt_f64(*a), fmt_f64(*b));
    }
    fs::write(&csv, text).unwrap();
    let out = dir.path().join("out");
    let o = aaals(&["hilbert", "--csv", csv.to_str().unwrap(), "--eval", "2,-0.5,7", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let h = hilbert_transform(&y, &u, &HilbertOptions::default()).unwrap();
    for (t, v) in read_values(&out.join("values.csv")) {
        assert!((v - h.eval_v(t)).abs() <= 1e-10, "v({t}) = {v} against {}", h.eval_v(t));
    }
}

#[test]
fn approx_reports_zigzag_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = aaals(&["approx", "--function", "zigzag", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("poles on [-1, 1]: 0"), "{text}");
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("approx.json")).unwrap()).unwrap();
    assert!(report["max_error"].as_f64().unwrap() <= 1e-5);
    assert!(dir.path().join("errors.csv").exists());
}
