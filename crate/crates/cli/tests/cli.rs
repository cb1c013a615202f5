use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::sync::Arc;

use indfourier::io::{GroupFile, MeasureFile, SpectralOutput};
use indfourier::{catalog, CoefficientSpace, InducedRep, VectorFunction};
use indfourier::{CVec, Complex64};

fn c(re: f64, im: f64) -> [f64; 2] {
    [re, im]
}

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_indfourier"));
    cmd.env_remove("INDFOURIER_TOLERANCE");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s3_file(dir: &Path) -> PathBuf {
    let g = catalog::symmetric_group(3);
    write(
        dir,
        "s3.json",
        &serde_json::to_string(&GroupFile::from_group(&g)).unwrap(),
    )
}

#[test]
fn validate_s3_and_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = s3_file(dir.path());
    let o = run(&["validate", s3.to_str().unwrap(), "--subgroup", "3"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("order 6"), "{out}");
    assert!(out.contains("[G:K]=2"), "{out}");

    let triv = write(
        dir.path(),
        "t.json",
        r#"{"order": 1, "table": [[0]], "name": "E"}"#,
    );
    let o = run(&["validate", triv.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("order 1"));

    let gens = write(dir.path(), "k.json", r#"{"generators": [3]}"#);
    let o = run(&[
        "validate",
        s3.to_str().unwrap(),
        "--subgroup",
        gens.to_str().unwrap(),
    ]);
    assert!(stdout(&o).contains("[G:K]=2"));
}

#[test]
fn validate_rejects_malformed_tables() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"order": 3, "table": [[0,1,2],[1,1,0],[2,0,1]]}"#,
    );
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(
        err.contains("not a Latin square") && err.contains("row 1"),
        "{err}"
    );

    let broken = write(
        dir.path(),
        "broken.json",
        "{\n  \"order\": 2,\n  \"table\": [[0,1],\n",
    );
    let o = run(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line"), "{}", stderr(&o));

    let o = run(&[
        "validate",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

fn transform(dir: &Path, measure: &str, extra: &[&str]) -> (Output, Option<SpectralOutput>) {
    let m = write(dir, "m.json", measure);
    let out = dir.join("out.json");
    let mut args = vec![
        "transform",
        "--group",
        "builtin:symmetric:3",
        "--subgroup",
        "3",
        "--sigma",
        "cyclic:3:chi1",
        "--measure",
        m.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    let o = run(&args);
    let parsed = o
        .status
        .success()
        .then(|| serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap());
    (o, parsed)
}

#[test]
fn transform_dirac_and_zero() {
    let dir = tempfile::tempdir().unwrap();
    let (o, spec) = transform(
        dir.path(),
        r#"{"space_dim": 2, "atoms": {"0": [[1.5, 0], [0, -2]]}}"#,
        &[],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let spec = spec.unwrap();
    assert_eq!(spec.schema_version, 1);
    let b = &spec.blocks[0];
    assert_eq!((b.n, b.d_sigma, b.space_dim), (2, 1, 2));
    for i in 0..2 {
        for j in 0..2 {
            let expected = if i == j {
                vec![c(1.5, 0.0), c(0.0, -2.0)]
            } else {
                vec![c(0.0, 0.0); 2]
            };
            assert_eq!(b.coeffs[i][j], expected);
        }
    }
    let first = std::fs::read(dir.path().join("out.json")).unwrap();
    transform(
        dir.path(),
        r#"{"space_dim": 2, "atoms": {"0": [[1.5, 0], [0, -2]]}}"#,
        &[],
    );
    assert_eq!(first, std::fs::read(dir.path().join("out.json")).unwrap());

    let (_, spec) = transform(dir.path(), r#"{"space_dim": 1, "atoms": {}}"#, &[]);
    let spec = spec.unwrap();
    assert!(spec.blocks[0]
        .coeffs
        .iter()
        .flatten()
        .flatten()
        .all(|z| z == &c(0.0, 0.0)));
}

#[test]
fn transform_coefficient_density() {
    let dir = tempfile::tempdir().unwrap();
    let p = catalog::s3_a3();
    let rep = catalog::rep_by_name(p.subgroup.clone(), "cyclic:3:chi1").unwrap();
    let u = InducedRep::new(Arc::new(rep));
    let a = CVec::from_element(1, Complex64::new(2.0, 1.0));
    let f = VectorFunction::coefficient_multiple(&u, 0, 1, &a).unwrap();
    let file = MeasureFile::from_values(CoefficientSpace::new(1).unwrap(), f.values());
    let (o, spec) = transform(
        dir.path(),
        &serde_json::to_string(&file).unwrap(),
        &["--as-function"],
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let b = &spec.unwrap().blocks[0];
    for m in 0..2 {
        for l in 0..2 {
            let z = b.coeffs[m][l][0];
            if (m, l) == (1, 0) {
                assert!(
                    (z[0] - 2.0).abs() < 1e-12 && (z[1] - 1.0).abs() < 1e-12,
                    "{z:?}"
                );
            } else {
                assert!(z[0].abs() < 1e-12 && z[1].abs() < 1e-12);
            }
        }
    }
}

#[test]
fn transform_reports_shape_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (o, _) = transform(
        dir.path(),
        r#"{"space_dim": 2, "atoms": {"0": [[1, 0]]}}"#,
        &[],
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("space_dim"), "{}", stderr(&o));

    let rep = write(
        dir.path(),
        "wide.json",
        r#"{"dim": 2, "matrices": {"0": [[[1,0]]]}}"#,
    );
    let m = write(dir.path(), "m.json", r#"{"space_dim": 1, "atoms": {}}"#);
    let o = run(&[
        "transform",
        "--group",
        "builtin:symmetric:3",
        "--subgroup",
        "3",
        "--sigma",
        rep.to_str().unwrap(),
        "--measure",
        m.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("wide.json"), "{}", stderr(&o));
}

#[test]
fn tolerance_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(
        dir.path(),
        "sloppy.json",
        r#"{"dim": 1, "matrices": {"2": [[[-1.00001, 0]]]}}"#,
    );
    let m = write(
        dir.path(),
        "m.json",
        r#"{"space_dim": 1, "atoms": {"0": [[1, 0]]}}"#,
    );
    let args = [
        "transform",
        "--group",
        "builtin:cyclic:4",
        "--subgroup",
        "2",
        "--sigma",
        rep.to_str().unwrap(),
        "--measure",
        m.to_str().unwrap(),
    ];
    assert_eq!(run(&args).status.code(), Some(2));
    let o = bin()
        .args(args)
        .env("INDFOURIER_TOLERANCE", "1e-3")
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let o = bin()
        .args(args)
        .env("INDFOURIER_TOLERANCE", "-1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

fn verify(dir: &Path, config: &str) -> (Output, serde_json::Value) {
    let cfg = write(dir, "verify.json", config);
    let report = dir.join("report.json");
    let o = run(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--json",
        report.to_str().unwrap(),
    ]);
    let v = std::fs::read_to_string(&report)
        .map(|s| serde_json::from_str(&s).unwrap())
        .unwrap_or(serde_json::Value::Null);
    (o, v)
}

fn statuses<'a>(report: &'a serde_json::Value, id: &str) -> Vec<&'a str> {
    report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["id"] == id)
        .map(|c| c["status"].as_str().unwrap())
        .collect()
}

#[test]
fn verify_omega_passes() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = s3_file(dir.path());
    let cfg = format!(
        r#"{{"group": "{}", "subgroup_generators": [3], "sigmas": ["cyclic:3:chi1"], "space_dim": 2, "seed": 3, "samples": 20}}"#,
        s3.file_name().unwrap().to_str().unwrap()
    );
    let (o, report) = verify(dir.path(), &cfg);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert_eq!(report["schema_version"], 1);
    for c in report["claims"].as_array().unwrap() {
        if c["asserted"] == true {
            assert_eq!(c["status"], "PASS", "{c}");
        }
    }
    let first = std::fs::read(dir.path().join("report.json")).unwrap();
    verify(dir.path(), &cfg);
    assert_eq!(
        first,
        std::fs::read(dir.path().join("report.json")).unwrap()
    );
}

#[test]
fn verify_equivalent_pair_reports_without_failing() {
    let dir = tempfile::tempdir().unwrap();
    let (o, report) = verify(
        dir.path(),
        r#"{"group": "builtin:symmetric:3", "subgroup_generators": [3], "sigmas": ["cyclic:3:chi1", "cyclic:3:chi2"], "samples": 20}"#,
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(statuses(&report, "cross-sigma-orthogonality"), vec!["FAIL"]);
    let cross = report["claims"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "cross-sigma-orthogonality")
        .unwrap();
    assert!(cross["witness"]["max_abs_integral"].as_f64().unwrap() > 0.1);
    assert!(stdout(&o).contains("witness"));
}

#[test]
fn verify_dihedral_passes() {
    let dir = tempfile::tempdir().unwrap();
    let (o, report) = verify(
        dir.path(),
        r#"{"group": "builtin:dihedral:4", "subgroup_generators": [1], "sigmas": ["cyclic:4:chi1"], "space_dim": 3, "samples": 20}"#,
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(statuses(&report, "inversion"), vec!["PASS"]);
    assert_eq!(statuses(&report, "ctensor-irreducible"), vec!["PASS"]);
}

#[test]
fn verify_exit_code_on_asserted_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (o, report) = verify(
        dir.path(),
        r#"{"group": "builtin:symmetric:3", "subgroup_generators": [3], "sigmas": ["cyclic:3:chi1"], "claims": ["ctensor-irreducible"], "tolerances": {"ctensor-irreducible": 1e-300}}"#,
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(statuses(&report, "ctensor-irreducible"), vec!["FAIL"]);

    let (o, _) = verify(dir.path(), r#"{"group": "builtin:cyclic:4", "sigmas": []}"#);
    assert_eq!(o.status.code(), Some(2));
}
