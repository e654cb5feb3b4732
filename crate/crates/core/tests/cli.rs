use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use abshield::cli::{execute, Command as Cmd, Format, RunConfig};

const COMMANDS: [&str; 6] = ["spectrum", "fields", "energy", "toy", "decompose", "verify"];

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_abshield"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let p = dir.join("scenario.toml");
    std::fs::write(&p, body).unwrap();
    p
}

/// Cells equal as text, or as numbers to a relative 1e-12.
fn same_cell(a: &str, b: &str) -> bool {
    if a == b {
        return true;
    }
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1e-300),
        _ => false,
    }
}

fn assert_matches_golden(name: &str, got: &str) {
    let path = golden_dir().join(name);
    if std::env::var_os("ABSHIELD_UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(golden_dir()).unwrap();
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let (gl, wl): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    assert_eq!(gl.len(), wl.len(), "{name}: line count");
    for (i, (g, w)) in gl.iter().zip(&wl).enumerate() {
        let (gc, wc): (Vec<&str>, Vec<&str>) = (g.split(',').collect(), w.split(',').collect());
        let ok = if g.starts_with("# version=") {
            true
        } else if let (Some(g), Some(w)) = (g.strip_prefix("# "), w.strip_prefix("# ")) {
            let (gk, gv) = g.split_once('=').unwrap_or((g, ""));
            let (wk, wv) = w.split_once('=').unwrap_or((w, ""));
            gk == wk && same_cell(gv, wv)
        } else {
            gc.len() == wc.len() && gc.iter().zip(&wc).all(|(a, b)| same_cell(a, b))
        };
        assert!(ok, "{name} line {}:\n got  {g}\n want {w}", i + 1);
    }
}

#[test]
fn default_scenario_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in COMMANDS {
        let out = dir.path().join(format!("{cmd}.csv"));
        let o = run(&[cmd, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{cmd}: {}", String::from_utf8_lossy(&o.stderr));
        assert_matches_golden(&format!("{cmd}.csv"), &std::fs::read_to_string(&out).unwrap());
    }
    let profile = dir.path().join("fields_profile.csv");
    assert_matches_golden("fields_profile.csv", &std::fs::read_to_string(profile).unwrap());
}

#[test]
fn repeated_runs_are_byte_identical() {
    for cmd in ["spectrum", "verify"] {
        let first = run(&[cmd]);
        let second = bin().arg(cmd).env("ABSHIELD_THREADS", "1").output().unwrap();
        let third = bin().arg(cmd).env("ABSHIELD_THREADS", "3").output().unwrap();
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "{cmd}");
        assert_eq!(first.stdout, third.stdout, "{cmd}");
    }
    let cfg = RunConfig::default_scenario();
    for c in Cmd::ALL {
        let a = execute(&cfg, c).unwrap();
        let b = execute(&cfg, c).unwrap();
        assert_eq!(a, b, "{}", c.name());
    }
}

#[test]
fn json_output_round_trips() {
    let o = run(&["energy", "--format", "json"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let t = abshield::cli::ResultTable::from_json(&text).unwrap();
    assert_eq!(t.name, "energy");
    assert_eq!(t.columns, ["case", "term", "value"]);
    let direct = execute(&RunConfig::default_scenario(), Cmd::Energy).unwrap();
    assert_eq!(direct.tables[0].render(Format::Json), text);
}

#[test]
fn bad_geometry_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let body = abshield::cli::DEFAULT_CONFIG.replace("d = 4.0", "d = 7.0");
    assert_ne!(body, abshield::cli::DEFAULT_CONFIG);
    let cfg = write_config(dir.path(), &body);
    let o = run(&["fields", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("geometry"), "{err}");
}

#[test]
fn unknown_key_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    let body = format!("{}\n[extra]\nx = 1\n", abshield::cli::DEFAULT_CONFIG);
    let cfg = write_config(dir.path(), &body);
    let o = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_config_file_is_an_io_error() {
    let o = run(&["spectrum", "--config", "/nonexistent/abshield.toml"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn failing_check_exits_with_verify_code() {
    let dir = tempfile::tempdir().unwrap();
    // an unreachable tolerance forces one failure
    let body = format!("{}\n[tolerances]\noracle_rel = 1e-30\n", abshield::cli::DEFAULT_CONFIG);
    let cfg = write_config(dir.path(), &body);
    let o = run(&["verify", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.lines().any(|l| l.starts_with("fd_oracle_agreement,") && l.ends_with(",fail")), "{text}");
}

#[test]
fn decompose_without_shield_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let body = abshield::cli::DEFAULT_CONFIG.replace("include_shield = true", "include_shield = false");
    assert_ne!(body, abshield::cli::DEFAULT_CONFIG);
    let cfg = write_config(dir.path(), &body);
    let o = run(&["decompose", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["energy", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success());
}

#[test]
fn version_flag() {
    let o = run(&["--version"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains(env!("CARGO_PKG_VERSION")));
}
