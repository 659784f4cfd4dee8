use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use acutri::io::MeshDocument;
use acutri::SimplicialComplex;
use serde_json::Value;
use tempfile::TempDir;

fn acutri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acutri"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn generate(dir: &TempDir, target: &str) -> PathBuf {
    let p = dir.path().join(format!("{target}.json"));
    let o = acutri(&["generate", target, "-o", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    p
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn stats(p: &Path) -> Value {
    let o = acutri(&["stats", "-i", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    json_of(&o)
}

#[test]
fn generated_targets_have_expected_counts() {
    let dir = TempDir::new().unwrap();
    let cases: &[(&str, &[u64], i64)] = &[
        ("600cell", &[120, 720, 1200, 600], 0),
        ("x543", &[116, 678, 1106, 543], 1),
        ("ref-t0", &[116, 678, 1106, 543], 1),
        ("face-template", &[9, 18, 10], 1),
        ("W", &[8, 18, 16, 5], 1),
    ];
    for (target, f, euler) in cases {
        let s = stats(&generate(&dir, target));
        let got: Vec<u64> = s["f_vector"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
        assert_eq!(&got, f, "{target}");
        assert_eq!(s["euler"].as_i64(), Some(*euler), "{target}");
    }
}

#[test]
fn appendix_reference_passes_every_check() {
    let dir = TempDir::new().unwrap();
    let p = generate(&dir, "ref-t1");
    let o = acutri(&[
        "verify",
        "-i",
        p.to_str().unwrap(),
        "--checks",
        "acute,rich,flag,no-square,geometric,ds",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let r = json_of(&o);
    assert_eq!(r["pass"], Value::Bool(true));
    assert_eq!(r["acute"]["exact"], Value::Bool(true));
}

#[test]
fn perturbed_reference_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let p = generate(&dir, "ref-t1");
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    // drag an interior vertex far outside the cube
    let pts = doc["embedding"]["points"].as_array_mut().unwrap();
    let last = pts.len() - 1;
    let x = pts[last][0].as_i64().unwrap();
    pts[last][0] = Value::from(x + 60000);
    fs::write(&p, doc.to_string()).unwrap();
    let o = acutri(&["verify", "-i", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r = json_of(&o);
    assert_eq!(r["pass"], Value::Bool(false));
    assert!(!r["acute"]["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn right_angles_in_w_are_reported() {
    let dir = TempDir::new().unwrap();
    let p = generate(&dir, "W");
    let o = acutri(&["verify", "-i", p.to_str().unwrap(), "--checks", "acute,geometric"]);
    assert_eq!(code(&o), 1);
    let r = json_of(&o);
    assert_eq!(r["geometric"]["pass"], Value::Bool(true));
    assert_eq!(r["acute"]["failures"].as_u64(), Some(12));
    assert_eq!(r["acute"]["max_deg"].as_f64(), Some(90.0));
}

#[test]
fn simplex_boundary_is_not_rich() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bd5.json");
    let doc = MeshDocument::new(&SimplicialComplex::simplex_boundary(5), "bd5", "boundary of the 5-simplex");
    fs::write(&p, doc.to_json_string().unwrap()).unwrap();
    let o = acutri(&["verify", "-i", p.to_str().unwrap(), "--checks", "rich,ds"]);
    assert_eq!(code(&o), 1);
    let r = json_of(&o);
    assert_eq!(r["rich"]["pass"], Value::Bool(false));
    assert_eq!(r["ds"]["pass"], Value::Bool(true));

    let o = acutri(&["check-fvector", "-i", p.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let r = json_of(&o);
    assert_eq!(r["corollary_residuals"], serde_json::json!([0, 0]));
}

#[test]
fn exports_have_expected_sizes() {
    let dir = TempDir::new().unwrap();
    let cube = generate(&dir, "cube-acute");
    let vtk = dir.path().join("cube.vtk");
    let o = acutri(&["export", "-i", cube.to_str().unwrap(), "-f", "vtk", "-o", vtk.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&vtk).unwrap();
    assert!(text.starts_with("# vtk DataFile Version"));
    assert!(text.contains("CELLS 2715 13575"));
    let types: Vec<&str> = text.split("CELL_TYPES").nth(1).unwrap().split_whitespace().skip(1).collect();
    assert_eq!(types.len(), 2715);
    assert!(types.iter().all(|t| *t == "10"));

    let t0 = generate(&dir, "ref-t0");
    let off = dir.path().join("t0.off");
    let o = acutri(&["export", "-i", t0.to_str().unwrap(), "-f", "off", "-o", off.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&off).unwrap();
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    assert_eq!(lines.next(), Some("OFF"));
    assert_eq!(lines.next(), Some("116 40 0"));
    let ele = fs::read_to_string(off.with_extension("ele")).unwrap();
    assert_eq!(ele.lines().next().unwrap().split_whitespace().next(), Some("543"));
}

#[test]
fn cube_stats_match_known_extremes() {
    let dir = TempDir::new().unwrap();
    let s = stats(&generate(&dir, "cube-acute"));
    assert!((s["min_deg"].as_f64().unwrap() - 26.425).abs() < 0.01);
    assert!((s["max_deg"].as_f64().unwrap() - 89.992).abs() < 0.01);
}

#[test]
fn errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("nope.json");
    assert_eq!(code(&acutri(&["stats", "-i", missing.to_str().unwrap()])), 2);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"complex\": 3}").unwrap();
    assert_eq!(code(&acutri(&["verify", "-i", bad.to_str().unwrap()])), 2);

    // no embedding to export
    let ws = generate(&dir, "Wstar");
    assert_eq!(code(&acutri(&["export", "-i", ws.to_str().unwrap(), "-f", "vtk"])), 2);
}

#[test]
fn optimize_is_deterministic_and_reports_stalls() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    let out = dir.path().join("x.json");
    for (trace, output) in [(&a, Some(&out)), (&b, None)] {
        let mut args = vec!["optimize", "--trace", trace.to_str().unwrap()];
        if let Some(o) = output {
            args.extend(["-o", o.to_str().unwrap()]);
        }
        assert_eq!(code(&acutri(&args)), 0);
    }
    let ta = fs::read_to_string(&a).unwrap();
    assert_eq!(ta, fs::read_to_string(&b).unwrap());
    assert!(ta.starts_with("step,t,iter,worst_cosine"));

    let o = acutri(&["verify", "-i", out.to_str().unwrap(), "--checks", "acute,geometric"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    assert_eq!(code(&acutri(&["optimize", "--n-steps", "1"])), 3);
}
