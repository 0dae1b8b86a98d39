//! File formats and the command-line surface, through the built binary.

use std::path::Path;
use std::process::Command;

use qci::ffield::Field;
use qci::io::{load_module, load_points, save_module, save_points, to_canonical_string, ModuleJson};
use qci::modrep::{minimal_resolution, ModuleRep};
use qci::qalgebra::AlgebraSpec;
use qci::rankvar::rank_variety;
use qci::Error;

fn qci(args: &[&str], threads: Option<&str>) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qci"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("QCI_THREADS", t),
        None => cmd.env_remove("QCI_THREADS"),
    };
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn e2() -> AlgebraSpec {
    let f = Field::prime(5).unwrap();
    AlgebraSpec::new(f.clone(), 2, 2, f.from_int(4)).unwrap()
}

fn write_config(dir: &Path, extra: &str) -> String {
    let path = dir.join("cfg.json");
    std::fs::write(
        &path,
        format!(
            r#"{{"algebra": {{"field": {{"p": 5, "e": 1}}, "a": 2, "c": 2, "q": [4]}}{}}}"#,
            extra
        ),
    )
    .unwrap();
    path.display().to_string()
}

#[test]
fn module_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let alg = e2();
    let res = minimal_resolution(&ModuleRep::simple(&alg), 3);
    for (k, m) in [ModuleRep::regular(&alg), res.syzygy(3).clone()].iter().enumerate() {
        let path = dir.path().join(format!("m{}.json", k));
        save_module(m, &path).unwrap();
        let first = std::fs::read_to_string(&path).unwrap();
        let back = load_module(&path).unwrap();
        assert_eq!(&back, m);
        assert_eq!(to_canonical_string(&ModuleJson::from_module(&back)), first);
    }
}

#[test]
fn point_sets_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let v = rank_variety(&ModuleRep::simple(&e2()), 2).unwrap();
    let path = dir.path().join("v.json");
    save_points(&v, &path).unwrap();
    let back = load_points(&path).unwrap();
    assert!(back.same_points(&v));
    assert_eq!(back.enumerated, v.enumerated);
}

#[test]
fn truncated_file_is_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    save_module(&ModuleRep::regular(&e2()), &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    match load_module(&path) {
        Err(Error::Parse { line, .. }) => assert!(line > 1),
        other => panic!("expected a parse error, got {:?}", other),
    }
    let (code, _, _) = qci(&["module", "validate", path.to_str().unwrap()], None);
    assert_eq!(code, 2);
}

#[test]
fn relation_violation_names_the_generator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    // X1 = [[0,1],[1,0]] squares to the identity
    std::fs::write(
        &path,
        r#"{"algebra": {"field": {"p": 5, "e": 1}, "a": 2, "c": 2, "q": [4]},
           "dim": 2, "matrices": [[[[0],[1]],[[1],[0]]], [[[0],[0]],[[0],[0]]]]}"#,
    )
    .unwrap();
    match load_module(&path) {
        Err(Error::Validation(v)) => assert!(v.iter().any(|s| s.contains("X1")), "{:?}", v),
        other => panic!("expected a validation error, got {:?}", other),
    }
    let (code, _, err) = qci(&["module", "validate", path.to_str().unwrap()], None);
    assert_eq!(code, 2);
    assert!(err.contains("X1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qci(&["rank-variety", "--module", "/nonexistent.json", "--ext", "2"], None).0, 2);
    assert_eq!(qci(&["verify", "suite"], None).0, 2);
    assert_eq!(qci(&["field", "--p", "6"], None).0, 2);
    assert_eq!(qci(&["betti", "--wrong-flag"], None).0, 2);
    assert_eq!(qci(&["--help"], None).0, 0);
}

#[test]
fn rank_variety_command_writes_points() {
    let dir = tempfile::tempdir().unwrap();
    let alg_path = dir.path().join("a.json");
    let m_path = dir.path().join("m.json");
    let out = dir.path().join("v.json");
    assert_eq!(qci(&["algebra", "--p", "5", "--a", "2", "--c", "2", "--q", "4", "--out", alg_path.to_str().unwrap()], None).0, 0);
    assert_eq!(
        qci(&["module", "make", "--algebra", alg_path.to_str().unwrap(), "ideal", "--lambda", "1,2", "--out", m_path.to_str().unwrap()], None).0,
        0
    );
    assert_eq!(qci(&["rank-variety", "--module", m_path.to_str().unwrap(), "--ext", "2", "--out", out.to_str().unwrap()], None).0, 0);
    let pts = load_points(&out).unwrap();
    assert_eq!(pts.ext_degree, 2);
    assert_eq!(pts.len(), 1);
}

#[test]
fn suite_reports_are_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#", "randomModules": 2, "seed": 4"#);
    let one = dir.path().join("r1.json");
    let two = dir.path().join("r2.json");
    let (c1, _, _) = qci(&["verify", "suite", "--config", &cfg, "--deterministic", "--out", one.to_str().unwrap()], Some("1"));
    let (c2, _, _) = qci(&["verify", "suite", "--config", &cfg, "--deterministic", "--out", two.to_str().unwrap()], Some("3"));
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&two).unwrap());
}

#[test]
fn perp_rejects_non_periodic_modules() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "");
    let m = dir.path().join("k.json");
    save_module(&ModuleRep::simple(&e2()), &m).unwrap();
    let (code, _, err) = qci(&["verify", "perp", "--config", &cfg, "--module", m.to_str().unwrap()], None);
    assert_eq!(code, 2);
    assert!(err.contains("single-line"), "{}", err);
}

#[test]
fn bad_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#", "degreeBound": 7"#);
    assert_eq!(qci(&["verify", "suite", "--config", &cfg], None).0, 2);
    let cfg = write_config(dir.path(), r#", "unknownKey": 1"#);
    assert_eq!(qci(&["verify", "suite", "--config", &cfg], None).0, 2);
}
