use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const MINIMAL: &str = r#"{
  "template": {"family": "delta", "d": 64},
  "m": 100,
  "trials": 10,
  "master_seed": 1,
  "frequencies": [1, 5]
}"#;

fn efn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_efn")).args(args).env_remove("EFN_THREADS").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn run_into(config: &str, out: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["run", config, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    efn(&args)
}

#[test]
fn run_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", MINIMAL);
    let out = dir.path().join("out");
    let o = run_into(&cfg, &out, &[]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["stats.csv", "summary.json", "manifest.json"] {
        assert!(out.join(f).exists(), "{f}");
    }
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "run");
    assert_eq!(manifest["outputs"].as_array().unwrap().len(), 2);
    assert!(manifest["wall_clock_seconds"].as_f64().unwrap() >= 0.0);
}

#[test]
fn odd_d_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", &MINIMAL.replace("\"d\": 64", "\"d\": 63"));
    let o = run_into(&cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("template.d"), "{err}");
    assert!(err.contains(&format!("{cfg}:2:")), "{err}");
}

#[test]
fn malformed_json_is_line_anchored() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", "{\n  \"m\": 100,\n  \"trials\": ,\n}");
    let o = run_into(&cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(&format!("{cfg}:3:")));
}

#[test]
fn reruns_are_byte_identical_and_manifest_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", MINIMAL);
    let (a, b, c) = (dir.path().join("a"), dir.path().join("b"), dir.path().join("c"));
    assert!(run_into(&cfg, &a, &[]).status.success());
    assert!(run_into(&cfg, &b, &["--threads", "1"]).status.success());
    let first = fs::read(a.join("stats.csv")).unwrap();
    assert_eq!(first, fs::read(b.join("stats.csv")).unwrap());

    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(a.join("manifest.json")).unwrap()).unwrap();
    let replay = write(dir.path(), "replay.json", &serde_json::to_string_pretty(&manifest["config"]).unwrap());
    assert!(run_into(&replay, &c, &[]).status.success());
    assert_eq!(first, fs::read(c.join("stats.csv")).unwrap());
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", MINIMAL);
    let out = dir.path().join("out");
    assert!(run_into(&cfg, &out, &["--trials", "3", "--m", "7"]).status.success());
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["trials"], 3);
    assert_eq!(summary["m"], 7);
    assert_eq!(run_into(&cfg, &out, &["--trials", "0"]).status.code(), Some(2));
}

#[test]
fn thread_env_fallback() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "c.json", MINIMAL);
    let out = dir.path().join("out");
    let o = Command::new(env!("CARGO_BIN_EXE_efn"))
        .args(["run", &cfg, "--out", out.to_str().unwrap()])
        .env("EFN_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_efn"))
        .args(["run", &cfg, "--out", out.to_str().unwrap()])
        .env("EFN_THREADS", "2")
        .output()
        .unwrap();
    assert!(o.status.success());
}

#[test]
fn figure_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = efn(&["figure", "3", "--out", out, "--d", "32", "--m", "20", "--trials", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = fs::read_to_string(dir.path().join("figure-3.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "axis,value,pearson,stderr");
    assert_eq!(csv.lines().count(), 7);
    assert!(dir.path().join("figure-3.manifest.json").exists());

    let o = efn(&["figure", "2c", "--out", out, "--d", "32", "--m", "20", "--trials", "3"]);
    assert!(o.status.success());
    let csv = fs::read_to_string(dir.path().join("figure-2c.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "M,k,mse,stderr,thm2-prediction");

    assert_eq!(efn(&["figure", "9z"]).status.code(), Some(2));
}

#[test]
fn verify_commands() {
    let o = efn(&["verify", "alignment"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("argmax agreement") && text.contains("PASS"));

    let dir = tempfile::tempdir().unwrap();
    let o = efn(&["verify", "gumbel", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("<= 0.05"));
    assert!(dir.path().join("verify-gumbel.json").exists());
    assert!(dir.path().join("verify-gumbel.manifest.json").exists());

    assert_eq!(efn(&["verify", "nonsense"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes() {
    let o = efn(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    assert!(!String::from_utf8_lossy(&o.stdout).contains("FAIL"));
}

#[test]
fn gen_template_writes_readable_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("t.csv");
    let o = efn(&["gen-template", "--family", "power-law", "--d", "16", "--beta", "1", "--out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let samples = efn_lab::signal::io::read_signal_csv(fs::File::open(&csv).unwrap()).unwrap();
    assert_eq!(samples.len(), 16);
    assert!((samples.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(dir.path().join("t.csv.manifest.json").exists());

    let json = dir.path().join("t.json");
    assert!(efn(&["gen-template", "--family", "delta", "--d", "8", "--out", json.to_str().unwrap()]).status.success());
    let rec = efn_lab::signal::io::read_signal_json(fs::File::open(&json).unwrap()).unwrap();
    assert_eq!(rec.samples[0], 1.0);

    assert_eq!(efn(&["gen-template", "--d", "15"]).status.code(), Some(2));
    assert_eq!(efn(&["gen-template", "--family", "circle"]).status.code(), Some(2));
}

#[test]
fn version_and_usage() {
    let o = efn(&["version"]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), format!("efn {}", env!("CARGO_PKG_VERSION")));
    assert_eq!(efn(&[]).status.code(), Some(2));
    assert_eq!(efn(&["launch"]).status.code(), Some(2));
}
