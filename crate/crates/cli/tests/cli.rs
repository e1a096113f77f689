//! End-to-end tests of the binary: exit-code contract, artifact
//! determinism, and the sharpness round trip through the scenario format.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_padic-nevanlinna"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_scenario(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("scenario.toml");
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

const LINE_SCENARIO: &str = r#"
prime = 3
dimension = 1
s_grid = ["0", "1", "2"]

[map]
coordinates = [{ coeffs = ["0", "1"] }, { coeffs = ["1"] }]

[[hypersurfaces]]
degree = 1
monomials = [{ coeff = "1", exps = [1, 0] }]
"#;

#[test]
fn fmt_check_passes_on_valid_scenario() {
    let dir = tmp("fmt_ok");
    let path = write_scenario(&dir, LINE_SCENARIO);
    let out = run(&["fmt-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("RESULT: PASS"), "{stdout}");
    assert!(stdout.contains("m + N - d*T = 0"), "{stdout}");
}

#[test]
fn composite_prime_is_input_error() {
    let dir = tmp("bad_prime");
    let path = write_scenario(&dir, &LINE_SCENARIO.replace("prime = 3", "prime = 4"));
    let out = run(&["fmt-check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("p must be prime"), "{stderr}");
}

#[test]
fn degree_mismatch_is_input_error() {
    let dir = tmp("bad_degree");
    let path = write_scenario(&dir, &LINE_SCENARIO.replace("degree = 1", "degree = 2"));
    let out = run(&["smt-report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(
        stderr.contains("degree mismatch: declared 2, actual 1"),
        "{stderr}"
    );
}

#[test]
fn image_in_hypersurface_is_input_error() {
    let dir = tmp("contained");
    // the hypersurface x0 - x0 = 0 is rejected earlier (zero polynomial), so
    // use a map coordinate that is identically zero against x1 after the
    // swap: f = (z, 1) with hypersurface pulled back to zero needs a zero
    // coordinate, so use P^2 with f = (z, 1, 0) and D: x2.
    let text = r#"
prime = 3
dimension = 2
s_grid = ["0", "1"]

[map]
coordinates = [{ coeffs = ["0", "1"] }, { coeffs = ["1"] }, { coeffs = ["0"] }]

[[hypersurfaces]]
degree = 1
monomials = [{ coeff = "1", exps = [0, 0, 1] }]
"#;
    let path = write_scenario(&dir, text);
    let out = run(&["smt-report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("image of the map is contained"), "{stderr}");
}

#[test]
fn degenerate_configuration_fails_mathematically() {
    // x1 and x1^2 share their support; the margin is unbounded below
    let dir = tmp("degenerate");
    let text = r#"
prime = 3
dimension = 1
s_grid = ["0", "1"]

[map]
coordinates = [{ coeffs = ["0", "1"] }, { coeffs = ["1"] }]

[[hypersurfaces]]
degree = 1
monomials = [{ coeff = "1", exps = [0, 1] }]

[[hypersurfaces]]
degree = 2
monomials = [{ coeff = "1", exps = [0, 2] }]
"#;
    let path = write_scenario(&dir, text);
    let out = run(&["smt-report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("RESULT: FAIL"), "{stdout}");
    assert!(
        stdout.contains("bounded: yes") || stdout.contains("bounded below: NO"),
        "{stdout}"
    );
}

#[test]
fn artifacts_are_deterministic() {
    let dir = tmp("determinism");
    let path = write_scenario(&dir, LINE_SCENARIO);
    let out_a = dir.join("a");
    let out_b = dir.join("b");
    let scenario = path.to_str().unwrap();
    assert_eq!(
        run(&["smt-report", scenario, "--out-dir", out_a.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["smt-report", scenario, "--out-dir", out_b.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
    for name in ["report.txt", "plfunctions.json", "plot.tsv"] {
        let a = fs::read(out_a.join(name)).unwrap();
        let b = fs::read(out_b.join(name)).unwrap();
        assert_eq!(a, b, "artifact {name} differs between runs");
        assert!(!a.is_empty());
    }
    let json = fs::read_to_string(out_a.join("plfunctions.json")).unwrap();
    assert!(json.contains("\"slopes\""), "{json}");
}

#[test]
fn sharpness_generates_and_round_trips() {
    let dir = tmp("sharpness");
    let out_dir = dir.join("out");
    let out = run(&[
        "sharpness",
        "--n",
        "2",
        "--d",
        "2",
        "--p",
        "3",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("defect sum = 3/2"), "{stdout}");

    // the margin column of the plot table is the constant 0
    let plot = fs::read_to_string(out_dir.join("plot.tsv")).unwrap();
    for line in plot.lines().skip(1) {
        assert!(line.ends_with("\t0"), "margin not 0: {line}");
    }

    // the emitted scenario document runs through the other subcommands
    let scenario = out_dir.join("scenario.toml");
    assert!(scenario.exists());
    let fmt = run(&["fmt-check", scenario.to_str().unwrap()]);
    assert_eq!(fmt.status.code(), Some(0), "{fmt:?}");
    let smt = run(&["smt-report", scenario.to_str().unwrap()]);
    assert_eq!(smt.status.code(), Some(0), "{smt:?}");
    let smt_stdout = String::from_utf8(smt.stdout).unwrap();
    assert!(
        smt_stdout.contains("witnessed at 1 point(s)"),
        "{smt_stdout}"
    );
    assert!(
        smt_stdout.contains("margin eventual slope 0"),
        "{smt_stdout}"
    );
}

#[test]
fn defect_and_polygon_subcommands() {
    let dir = tmp("defect_polygon");
    let path = write_scenario(&dir, LINE_SCENARIO);
    let scenario = path.to_str().unwrap();
    let defect = run(&["defect", scenario]);
    assert_eq!(defect.status.code(), Some(0), "{defect:?}");
    let stdout = String::from_utf8(defect.stdout).unwrap();
    assert!(stdout.contains("defect = 0"), "{stdout}");

    let polygon = run(&["polygon", scenario]);
    assert_eq!(polygon.status.code(), Some(0), "{polygon:?}");
    let stdout = String::from_utf8(polygon.stdout).unwrap();
    assert!(stdout.contains("polygon vertices"), "{stdout}");
    assert!(stdout.contains("n(0) = 1"), "{stdout}");
}

#[test]
fn grid_override_changes_plot_rows() {
    let dir = tmp("grid_override");
    let path = write_scenario(&dir, LINE_SCENARIO);
    let out_dir = dir.join("out");
    let out = run(&[
        "fmt-check",
        path.to_str().unwrap(),
        "--grid",
        "-1,0,1/2,7",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let plot = fs::read_to_string(out_dir.join("plot.tsv")).unwrap();
    let rows: Vec<&str> = plot.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows[3].starts_with("1/2\t"), "{plot}");
}

#[test]
fn missing_file_is_input_error() {
    let out = run(&["fmt-check", "/nonexistent/scenario.toml"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn shipped_scenarios_run_clean() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios");
    let mut found = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|e| e != "toml") {
            continue;
        }
        found += 1;
        for sub in ["fmt-check", "smt-report", "polygon"] {
            let out = run(&[sub, path.to_str().unwrap()]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{sub} on {}: {}",
                path.display(),
                String::from_utf8_lossy(&out.stderr)
            );
        }
    }
    assert!(found >= 3, "expected shipped scenario files, found {found}");
}

#[test]
fn bad_grid_flag_is_input_error() {
    let dir = tmp("bad_grid");
    let path = write_scenario(&dir, LINE_SCENARIO);
    let out = run(&["fmt-check", path.to_str().unwrap(), "--grid", "1,0.5"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}
