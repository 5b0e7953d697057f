//! End-to-end tests that drive the compiled `quasicryst` binary: argument
//! handling, config-file semantics, artifact layout, manifest integrity,
//! exit codes, and rerun determinism.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_quasicryst"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("failed to spawn the quasicryst binary")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("config.toml");
    fs::write(&path, text).expect("write config");
    path
}

fn read_json(path: &Path) -> Value {
    let bytes = fs::read(path).unwrap_or_else(|e| panic!("read {}: {e}", path.display()));
    serde_json::from_slice(&bytes).unwrap_or_else(|e| panic!("parse {}: {e}", path.display()))
}

/// Collects every regular file under `dir` keyed by its path relative to `dir`.
fn snapshot_tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut files = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).expect("read_dir") {
            let path = entry.expect("dir entry").path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let rel = path.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                files.insert(rel, fs::read(&path).expect("read file"));
            }
        }
    }
    files
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[test]
fn help_lists_every_subcommand() {
    let out = run(&["--help"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    for sub in ["bands", "ldos", "evolve", "sweep-phi", "hbt"] {
        assert!(text.contains(sub), "--help must mention `{sub}`:\n{text}");
    }
    assert!(text.contains("ignored"), "--help should document the ignored-flag policy");
}

#[test]
fn version_flag_names_the_tool() {
    let out = run(&["--version"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("quasicryst"));
}

#[test]
fn bands_run_emits_consistent_artifacts() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[lattice]\nn_sites = 40\n\n[bands]\nphi_points = 21\n",
    );
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "bands",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("bands: 21 phase points x 40 modes"));

    let run_dir = out_dir.join("bands");
    for name in ["config.toml", "bands.csv", "bands.json", "bands.svg", "manifest.json"] {
        assert!(run_dir.join(name).exists(), "missing artifact {name}");
    }
    let latest = fs::read_to_string(out_dir.join("latest")).unwrap();
    assert_eq!(latest, "bands\n");

    // CSV: one header plus one row per (phase, mode) pair.
    let csv = fs::read_to_string(run_dir.join("bands.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("phi,mode,energy"));
    assert_eq!(lines.count(), 21 * 40);

    // JSON document shape.
    let doc = read_json(&run_dir.join("bands.json"));
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["phi"].as_array().unwrap().len(), 21);
    assert_eq!(doc["phi_over_pi"][0], 0.0);
    let energies = doc["energies"].as_array().unwrap();
    assert_eq!(energies.len(), 21);
    assert!(energies.iter().all(|row| row.as_array().unwrap().len() == 40));

    // SVG is well formed enough to open.
    let svg = fs::read_to_string(run_dir.join("bands.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains("Eigenvalue bands"));

    // Manifest digests must match the files actually on disk.
    let manifest = read_json(&run_dir.join("manifest.json"));
    assert_eq!(manifest["schema_version"], "1");
    assert_eq!(manifest["tool"], "quasicryst");
    assert_eq!(manifest["command"], "bands");
    assert_eq!(manifest["status"], "complete");
    assert_eq!(manifest["timestamp_utc"], "");
    assert_eq!(manifest["duration_ms"], 0);
    let artifacts = manifest["artifacts"].as_array().unwrap();
    assert_eq!(artifacts.len(), 4);
    for rec in artifacts {
        let rel = rec["path"].as_str().unwrap();
        let bytes = fs::read(run_dir.join(rel)).unwrap();
        assert_eq!(rec["bytes"].as_u64().unwrap(), bytes.len() as u64, "size of {rel}");
        assert_eq!(rec["sha256"].as_str().unwrap(), sha256_hex(&bytes), "digest of {rel}");
    }
}

#[test]
fn cli_flags_override_config_file_values() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[lattice]\nn_sites = 30\nt = 0.7\nphi_pi = 0.9\n\n[evolve]\ninput_site = 2\n",
    );
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--n-sites",
        "12",
        "--phi-pi",
        "0.2",
        "--input-site",
        "3",
        "--z",
        "1.0",
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));

    let resolved: toml::Value =
        toml::from_str(&fs::read_to_string(out_dir.join("evolve/config.toml")).unwrap()).unwrap();
    let lattice = &resolved["lattice"];
    assert_eq!(lattice["n_sites"].as_integer(), Some(12));
    assert_eq!(lattice["t"].as_float(), Some(0.7), "unflagged value comes from the file");
    let phi = lattice["phi"].as_float().unwrap();
    assert!((phi - 0.2 * std::f64::consts::PI).abs() < 1e-15);
    assert_eq!(resolved["evolve"]["input_site"].as_integer(), Some(3));
    let z = resolved["evolve"]["z_samples"].as_array().unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(z[0].as_float(), Some(1.0));
}

#[test]
fn cli_phase_flag_overrides_either_file_spelling() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[lattice]\nphi_pi = 0.9\n\n[evolve]\n");
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--phi",
        "0.0",
        "--z",
        "0.5",
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let resolved: toml::Value =
        toml::from_str(&fs::read_to_string(out_dir.join("evolve/config.toml")).unwrap()).unwrap();
    assert_eq!(resolved["lattice"]["phi"].as_float(), Some(0.0));
}

#[test]
fn negative_flag_values_parse() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "evolve",
        "--n-sites",
        "10",
        "--lambda",
        "-0.5",
        "--phi",
        "-1.25",
        "--z",
        "0.5",
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
}

#[test]
fn config_block_must_match_subcommand() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[hbt]\nn_windows = 10\n");
    let out = run(&["evolve", "--config", cfg.to_str().unwrap(), "--z", "1.0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("invalid configuration"));
}

#[test]
fn config_with_two_experiment_blocks_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[bands]\nphi_points = 3\n\n[hbt]\nn_windows = 10\n");
    let out = run(&["bands", "--config", cfg.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("invalid configuration"));
}

#[test]
fn file_with_both_phase_spellings_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[lattice]\nphi = 1.0\nphi_pi = 0.5\n\n[evolve]\n");
    let out = run(&["evolve", "--config", cfg.to_str().unwrap(), "--z", "1.0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).to_lowercase().contains("phi"));
}

#[test]
fn phase_flags_conflict_on_the_command_line() {
    let out = run(&["evolve", "--phi", "1.0", "--phi-pi", "0.5", "--z", "1.0"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn invalid_lattice_flag_exits_2_before_creating_a_run() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("runs");
    let out = run(&["bands", "--lambda", "1.5", "--out-dir", out_dir.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("invalid configuration"));
    assert!(!out_dir.exists(), "config errors are caught before any run directory is made");
}

#[test]
fn out_of_range_input_site_leaves_failed_manifest() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "evolve",
        "--input-site",
        "200",
        "--z",
        "1.0",
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 2);
    let manifest = read_json(&out_dir.join("evolve/manifest.json"));
    assert_eq!(manifest["status"], "failed");
    assert!(manifest["error"].as_str().unwrap().contains("site"));
    // The resolved config snapshot is still captured for post-mortems.
    let artifacts = manifest["artifacts"].as_array().unwrap();
    assert_eq!(artifacts.len(), 1);
    assert_eq!(artifacts[0]["path"], "config.toml");
    assert_eq!(fs::read_to_string(out_dir.join("latest")).unwrap(), "evolve\n");
}

#[test]
fn hbt_with_no_possible_heralds_exits_4() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[hbt]\npair_mean = 0.0\nn_windows = 1000\n");
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "hbt",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 4);
    assert!(stderr(&out).contains("undefined estimate"));
    let manifest = read_json(&out_dir.join("hbt/manifest.json"));
    assert_eq!(manifest["status"], "failed");
}

#[test]
fn missing_config_file_exits_1() {
    let tmp = TempDir::new().unwrap();
    let path = tmp.path().join("does-not-exist.toml");
    let out = run(&["bands", "--config", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("does-not-exist.toml"));
}

#[test]
fn unknown_config_key_exits_2_and_names_the_file() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[lattice]\nn_sitez = 3\n\n[evolve]\n");
    let out = run(&["evolve", "--config", cfg.to_str().unwrap(), "--z", "1.0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("config.toml"));
}

#[test]
fn flags_unused_by_a_subcommand_are_accepted() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[lattice]\nn_sites = 8\n\n[bands]\nphi_points = 3\n");
    let out_dir = tmp.path().join("runs");
    // `bands` has no use for an input site or a seed; both are accepted and ignored.
    let out = run(&[
        "bands",
        "--config",
        cfg.to_str().unwrap(),
        "--input-site",
        "7",
        "--seed",
        "9",
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
}

#[test]
fn rerun_without_timestamps_is_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("runs");
    let args = [
        "evolve",
        "--n-sites",
        "30",
        "--input-site",
        "1",
        "--z",
        "0.5",
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ];
    assert_eq!(exit_code(&run(&args)), 0);
    let first = snapshot_tree(&out_dir);
    assert_eq!(exit_code(&run(&args)), 0);
    let second = snapshot_tree(&out_dir);
    assert_eq!(first.len(), second.len());
    for (rel, bytes) in &first {
        assert_eq!(Some(bytes), second.get(rel), "artifact {rel} changed between reruns");
    }
}

#[test]
fn timestamped_reruns_create_distinct_directories() {
    let tmp = TempDir::new().unwrap();
    let out_dir = tmp.path().join("runs");
    let args = [
        "evolve",
        "--n-sites",
        "10",
        "--z",
        "0.5",
        "--out-dir",
        out_dir.to_str().unwrap(),
    ];
    assert_eq!(exit_code(&run(&args)), 0);
    assert_eq!(exit_code(&run(&args)), 0);
    let dirs: Vec<String> = fs::read_dir(&out_dir)
        .unwrap()
        .filter_map(|e| {
            let e = e.unwrap();
            let name = e.file_name().to_string_lossy().into_owned();
            (e.path().is_dir() && name.starts_with("evolve-")).then_some(name)
        })
        .collect();
    assert_eq!(dirs.len(), 2, "each timestamped run gets its own directory: {dirs:?}");

    let latest = fs::read_to_string(out_dir.join("latest")).unwrap();
    let latest = latest.trim_end();
    assert!(dirs.iter().any(|d| d == latest), "latest pointer names one of {dirs:?}");
    let manifest = read_json(&out_dir.join(latest).join("manifest.json"));
    assert_ne!(manifest["timestamp_utc"], "");
}

#[test]
fn sweep_duplicate_cases_get_distinct_subdirectories() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[sweep_phi]\nz = 1.0\n\n[[sweep_phi.cases]]\nn_sites = 20\nphi_pi = 0.2\ninput_site = 1\n\n\
         [[sweep_phi.cases]]\nn_sites = 20\nphi_pi = 0.2\ninput_site = 1\n",
    );
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "sweep-phi",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let run_dir = out_dir.join("sweep-phi");
    assert!(run_dir.join("case-01-n20-in1").is_dir());
    assert!(run_dir.join("case-02-n20-in1").is_dir());
    let summary = read_json(&run_dir.join("summary.json"));
    assert_eq!(summary["cases"].as_array().unwrap().len(), 2);
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("n = 20")).count(), 2);
}

#[test]
fn sweep_with_failing_case_is_marked_incomplete() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[sweep_phi]\nz = 1.0\n\n[[sweep_phi.cases]]\nn_sites = 20\nphi_pi = 0.2\ninput_site = 1\n\n\
         [[sweep_phi.cases]]\nn_sites = 20\nphi_pi = 0.2\ninput_site = 99\n",
    );
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "sweep-phi",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("case 2"));
    let run_dir = out_dir.join("sweep-phi");
    let manifest = read_json(&run_dir.join("manifest.json"));
    assert_eq!(manifest["status"], "incomplete");
    assert!(run_dir.join("case-01-n20-in1/case.json").exists(), "completed case is kept");
    assert!(!run_dir.join("summary.csv").exists(), "no summary for a partial sweep");
}

#[test]
fn single_photon_source_reports_zero_alpha_as_upper_bound() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[hbt]\npair_statistics = \"fixed-one\"\nn_windows = 2000\n",
    );
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "hbt",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("alpha = 0.0000"), "stdout: {text}");
    assert!(text.contains("[upper bound]"), "stdout: {text}");
    let doc = read_json(&out_dir.join("hbt/hbt.json"));
    assert_eq!(doc["alpha"], 0.0);
    assert_eq!(doc["upper_bound"], true);
    assert_eq!(doc["counts"]["c_t12"], 0);
    assert_eq!(doc["counts"]["c_t"], 2000);
}

#[test]
fn ldos_artifacts_have_expected_shape() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(tmp.path(), "[lattice]\nn_sites = 20\n\n[ldos]\nenergy_points = 40\n");
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "ldos",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("ldos: 40 energies x 20 sites"));
    let run_dir = out_dir.join("ldos");
    let csv = fs::read_to_string(run_dir.join("ldos.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("energy,site,density"));
    assert_eq!(lines.count(), 40 * 20);
    let doc = read_json(&run_dir.join("ldos.json"));
    assert!(doc["sigma"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["energy"].as_array().unwrap().len(), 40);
}

#[test]
fn evolve_stdout_reports_one_confinement_line_per_sample() {
    let tmp = TempDir::new().unwrap();
    let cfg = write_config(
        tmp.path(),
        "[lattice]\nn_sites = 30\n\n[evolve]\nz_samples = [0.5, 1.5]\n",
    );
    let out_dir = tmp.path().join("runs");
    let out = run(&[
        "evolve",
        "--config",
        cfg.to_str().unwrap(),
        "--out-dir",
        out_dir.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("z = ")).collect();
    assert_eq!(lines.len(), 2, "stdout: {text}");
    assert!(lines[0].contains("xi[site 1] ="));
}
