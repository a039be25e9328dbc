use std::path::Path;
use std::process::{Command, Output};

use wedge_iso::symmetrization3d::SliceSet3D;
use wedge_iso::wedge_geometry::{FourierShape, RadialShape};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wedge-iso"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_json(path: &Path, v: &impl serde::Serialize) {
    std::fs::write(path, serde_json::to_string(v).unwrap()).unwrap();
}

#[test]
fn help_and_version() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&[]), 2);
    let o = run(&["verify", "--help"]);
    let text = stdout(&o);
    for flag in ["--seed", "--amplitude", "--tol-abs", "--archive-dir", "--N", "--c", "--k"] {
        assert!(text.contains(flag), "{flag} missing from help");
    }
    assert!(text.contains("[default: 100]"));
}

#[test]
fn thread_variable() {
    let ok = bin().env("WEDGE_ISO_THREADS", "1").args(["verify", "--n", "4"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = bin().env("WEDGE_ISO_THREADS", "many").args(["verify", "--n", "4"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn csv_outputs() {
    let o = run(&["profile", "--k", "0,0", "--m", "0.5,1,2"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,R,I"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!((r[2] - (std::f64::consts::PI * r[0]).sqrt()).abs() < 1e-12);
    }

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    assert_eq!(code(&["verify", "--n", "6", "--csv", csv.to_str().unwrap()]), 0);
    let text = std::fs::read_to_string(csv).unwrap();
    assert!(text.starts_with("idx,m,P,I,slack\n"));
    assert_eq!(text.lines().count(), 7);
}

#[test]
fn dimension_mismatch_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let disc = dir.path().join("disc.json");
    write_json(&disc, &RadialShape::quarter_disc(1.0, 33).unwrap());
    let d = disc.to_str().unwrap();
    assert_eq!(code(&["measure", d, "--k", "0,0,0"]), 2);
    assert_eq!(code(&["measure", d, "--N", "2", "--k", "1"]), 2);
    assert_eq!(code(&["measure", d, "--c", "-1"]), 2);
    assert_eq!(code(&["measure", d, "--tol", "0"]), 2);

    let x1: Vec<f64> = (0..9).map(|i| i as f64 / 8.0).collect();
    let set = dir.path().join("set.json");
    write_json(&set, &SliceSet3D::from_fn(x1, 17, |_, _| 1.0).unwrap());
    assert_eq!(code(&["symmetrize", set.to_str().unwrap(), "--k", "0,0"]), 2);
    assert_eq!(code(&["symmetrize", set.to_str().unwrap()]), 0);
}

#[test]
fn written_shapes_read_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nested/o.json");
    assert_eq!(code(&["optimize", "--m", "0.3", "--c", "0.5", "--k", "1,0", "--out", out.to_str().unwrap()]), 0);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let shape: RadialShape = serde_json::from_value(v["shape"].clone()).unwrap();
    let fourier: FourierShape = serde_json::from_value(v["result"]["shape"].clone()).unwrap();
    let again = dir.path().join("shape.json");
    write_json(&again, &shape);
    let m: f64 = stdout(&run(&["measure", again.to_str().unwrap(), "--c", "0.5", "--k", "1,0"])).trim().parse().unwrap();
    assert!((m - 0.3).abs() < 1e-6, "{m}");
    assert_eq!(fourier.coeffs.len(), 7);
}

#[test]
fn corrupted_documents_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let good = serde_json::to_string(&RadialShape::quarter_disc(1.0, 33).unwrap()).unwrap();
    let cases = [
        good[..good.len() / 2].to_string(),
        good.replace("radial", "square"),
        r#"{"type":"radial","theta":[0,0.5,1.5707963267948966],"rho":[1,2]}"#.to_string(),
        r#"{"type":"radial","theta":[0,1],"rho":[1,1]}"#.to_string(),
        r#"{"type":"radial","theta":[0,1,0.5,1.5707963267948966],"rho":[1,1,1,1]}"#.to_string(),
        r#"{"type":"polar_curve","t":[0,1],"r":[1,1],"theta":[0,2]}"#.to_string(),
        r#"{"x1":[0,1],"slices":[]}"#.to_string(),
        "null".to_string(),
        String::new(),
    ];
    for (i, body) in cases.iter().enumerate() {
        let p = dir.path().join(format!("c{i}.json"));
        std::fs::write(&p, body).unwrap();
        for sub in ["measure", "transport", "symmetrize"] {
            assert_eq!(code(&[sub, p.to_str().unwrap()]), 2, "{sub} on case {i}");
        }
    }
}
