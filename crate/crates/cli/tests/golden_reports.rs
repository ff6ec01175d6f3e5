use std::path::{Path, PathBuf};

use gptlab_cli::{file_name, run, Check, CliError, RunConfig, Source};

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn inputs() -> Vec<String> {
    let mut v: Vec<String> = gptlab::catalog::NAMES.iter().map(|n| n.to_string()).collect();
    v.extend(["nu_bit(1/4)".to_string(), "nu_bit(3/4)".to_string()]);
    v
}

fn report_file(input: &str) -> String {
    format!("{}.json", file_name(&gptlab::catalog::build(input).unwrap().name))
}

fn write_reports(dir: &Path) -> Result<(), CliError> {
    let cfg = RunConfig {
        inputs: inputs().into_iter().map(Source::Catalog).collect(),
        checks: [Check::Validate, Check::Classify, Check::Determinism, Check::Propensity].into(),
        tol: None,
        seed: 7,
        out: Some(dir.to_path_buf()),
    };
    match run(&cfg, &mut std::io::sink()) {
        Ok(_) | Err(CliError::CheckFailure(_)) => Ok(()),
        Err(e) => Err(e),
    }
}

#[test]
fn catalog_reports_are_byte_stable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    write_reports(a.path()).unwrap();
    write_reports(b.path()).unwrap();
    let bless = std::env::var_os("GPTLAB_BLESS").is_some();
    for name in inputs() {
        let file = report_file(&name);
        let first = std::fs::read(a.path().join(&file)).unwrap();
        let second = std::fs::read(b.path().join(&file)).unwrap();
        assert!(first == second, "{name}: reports differ between runs");
        let golden = golden_dir().join(&file);
        if bless {
            std::fs::write(&golden, &first).unwrap();
            continue;
        }
        let expect = std::fs::read(&golden).unwrap_or_else(|_| panic!("missing golden file {}", golden.display()));
        assert!(first == expect, "{name}: report drifted from {}", golden.display());
    }
}

#[test]
fn catalog_reports_carry_claims() {
    let dir = tempfile::tempdir().unwrap();
    write_reports(dir.path()).unwrap();
    for name in inputs() {
        let text = std::fs::read_to_string(dir.path().join(report_file(&name))).unwrap();
        let r: serde_json::Value = serde_json::from_str(&text).unwrap();
        let claims = r["claims"].as_array().unwrap();
        assert!(!claims.is_empty(), "{name}");
        assert!(claims.iter().all(|c| c["pass"] == true), "{name}: {claims:?}");
        assert_eq!(r["results"]["claims"], true);
    }
}
