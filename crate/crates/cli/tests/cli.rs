use std::process::Command;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_poisson-lab"));
    c.env_remove("POISSON_LAB_TOL").env_remove("POISSON_LAB_THREADS");
    c
}

fn code(c: &mut Command) -> (i32, String, String) {
    let out = c.output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn solve_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.csv");
    let (status, _, err) = code(bin().args(["solve", "--g", "1", "--psi", "0.25", "--grid", "3x4", "--out"]).arg(&path));
    assert_eq!(status, 0, "{err}");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "z_re,z_im,re_f,im_f,abs_f,norm_df");
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 13);
    for r in rows {
        let m2 = r[0] * r[0] + r[1] * r[1];
        assert!((r[2] - m2 / 4.0).abs() < 1e-6);
        assert!((r[5] - m2.sqrt() / 2.0).abs() < 1e-5);
    }
}

#[test]
fn check_sharp_pair_passes_with_json() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let plot = dir.path().join("r.dat");
    let (status, out, err) = code(
        bin()
            .args(["--threads", "2", "check", "--scenario", "sharp-quadratic:1", "--bound", "schwarz", "--grid", "4x8", "--json"])
            .arg(&json)
            .arg("--plot")
            .arg(&plot),
    );
    assert_eq!(status, 0, "{out}{err}");
    assert!(out.starts_with("PASS"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["records"].as_array().unwrap().len(), 33);
    assert_eq!(doc["summary"]["sharp_points"][0], serde_json::json!([0.0, 0.0]));
    assert!(std::fs::read_to_string(&plot).unwrap().lines().count() > 33);
}

#[test]
fn bound_flag_alias_and_expressions() {
    let (status, out, err) = code(bin().args(["check", "--g", "1 + 0.5*z", "--psi", "z + 0.25", "--theorem", "gradient", "--grid", "3x6"]));
    assert_eq!(status, 0, "{out}{err}");
}

#[test]
fn violated_bound_exits_one() {
    // Negative slack makes the attained bound look violated.
    let (status, out, _) = code(bin().args(["check", "--scenario", "sharp-quadratic:1", "--bound", "schwarz", "--grid", "2x4", "--slack=-1e-3"]));
    assert_eq!(status, 1);
    assert!(out.starts_with("FAIL"));
}

#[test]
fn hypothesis_violation_exits_four() {
    let (status, _, err) = code(bin().args(["check", "--scenario", "boundary-poisson:1", "--bound", "boundary"]));
    assert_eq!(status, 4, "{err}");
    let (status, _, _) = code(bin().args(["check", "--g", "1", "--bound", "harmonic-gradient", "--grid", "2x4"]));
    assert_eq!(status, 4);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(bin().args(["check", "--scenario", "nope", "--bound", "schwarz"])).0, 2);
    assert_eq!(code(bin().args(["check", "--scenario", "identity", "--bound", "nope"])).0, 2);
    assert_eq!(code(bin().args(["solve", "--g", "1 +"])).0, 2);
    assert_eq!(code(bin().args(["solve", "--g", "1", "--grid", "3y3"])).0, 2);
    assert_eq!(code(bin().args(["check", "--scenario", "identity", "--bound", "schwarz"]).env("POISSON_LAB_TOL", "loose")).0, 2);
    assert_eq!(code(bin().args(["landau", "--m2", "-1"])).0, 2);
}

#[test]
fn landau_prints_json() {
    let (status, out, err) = code(bin().args(["landau", "--m1", "0", "--m2", "1"]));
    assert_eq!(status, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["r0"].as_f64().unwrap() - 0.2135609).abs() < 1e-7);
    assert!((v["R0"].as_f64().unwrap() - 0.0838652).abs() < 1e-7);
    assert!(v["L1"].as_f64().unwrap() > 0.0);
}

#[test]
fn verify_all_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (status, out, err) = code(bin().args(["verify-all", "--tol-profile", "fast", "--out"]).arg(dir.path()));
    assert_eq!(status, 0, "{out}{err}");
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 11);
    let summary: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["pass"], true);
    assert_eq!(summary["criteria"].as_array().unwrap().len(), 11);
    let first: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("criterion-01-sharpness-pair.json")).unwrap()).unwrap();
    assert_eq!(first["summary"]["pass"], true);
}
