use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use braidsim_cli::fit_slope;
use serde_json::Value;

fn braidsim(config: &Path, out: &Path, extra: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidsim"))
        .arg("--config")
        .arg(config)
        .arg("--output")
        .arg(out)
        .args(extra)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn result(out: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(out.join("result.json")).unwrap()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn braid_reaches_target_fidelity() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "braid.json",
        r#"{"command": "braid", "model": "fibonacci", "params": {"points": 2000, "floor": 0.0}}"#,
    );
    let out = dir.path().join("out");
    let o = braidsim(&cfg, &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.starts_with("braid fidelity="), "{stdout}");

    let r = result(&out);
    let keys: Vec<&String> = r.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 5);
    for k in ["command", "config", "result", "wall_time_s", "version"] {
        assert!(r.get(k).is_some(), "missing {k}");
    }
    assert_eq!(r["command"], "braid");
    assert_eq!(r["config"]["params"]["points"], 2000);
    assert!(r["result"]["fidelity"].as_f64().unwrap() >= 1.0 - 1e-6);
    assert!(r["wall_time_s"].as_f64().unwrap() >= 0.0);
    let spectrum = fs::read_to_string(out.join("spectrum.csv")).unwrap();
    assert!(spectrum.starts_with("t,eps_L,eps_R,eps_B,E0,E1,E2,E3,E4\n"));
}

#[test]
fn quiet_suppresses_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "v.json",
        r#"{"command": "verify-model", "model": "ising"}"#,
    );
    let o = braidsim(&cfg, &dir.path().join("out"), &["--quiet"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn corrupted_model_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let model = braidsim::AnyonModel::builtin(braidsim::BuiltinModel::Fibonacci);
    let mut file: Value = serde_json::from_str(&model.to_json_string()).unwrap();
    let entry = file["f_symbols"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["abcd"] == serde_json::json!(["tau", "tau", "tau", "tau"]) && e["e"] == "tau" && e["f"] == "1")
        .unwrap();
    let re = entry["re"].as_f64().unwrap();
    entry["re"] = serde_json::json!(-re);
    fs::write(dir.path().join("broken.json"), serde_json::to_string_pretty(&file).unwrap()).unwrap();
    let cfg = write_config(
        dir.path(),
        "verify.json",
        r#"{"command": "verify-model", "model": "broken.json"}"#,
    );
    let out = dir.path().join("out");
    let o = braidsim(&cfg, &out, &[]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("pentagon"), "{}", stderr(&o));

    let r = result(&out);
    assert_eq!(r["result"]["passed"], false);
    let pentagon = r["result"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "pentagon")
        .unwrap();
    assert!(pentagon["max_residual"].as_f64().unwrap() > 1e-3);

    let braid = write_config(dir.path(), "braid.json", r#"{"command": "braid", "model": "broken.json"}"#);
    let o = braidsim(&braid, &dir.path().join("out2"), &[]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn chain_scaling_slope_matches_perturbation_theory() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "scaling.json",
        r#"{"command": "chain-scaling", "model": "fibonacci", "params": {"eps_min": 0.1, "eps_max": 1.0, "n_values": [1, 2, 3]}}"#,
    );
    let out = dir.path().join("out");
    let o = braidsim(&cfg, &out, &[]);
    assert!(o.status.success(), "{}", stderr(&o));
    let csv = fs::read_to_string(out.join("splitting.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "model,N,eps_min,eps_max,splitting,ln_splitting");
    assert_eq!(csv.lines().count(), 4);

    let fit = fit_slope(&out.join("splitting.csv"), "N", "ln_splitting").unwrap();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let target = (2.0 / (phi * phi) * 0.1f64).ln();
    assert!(((fit.slope - target) / target).abs() < 0.15, "slope {} vs {target}", fit.slope);
    assert!((result(&out)["result"]["fit"]["slope"].as_f64().unwrap() - fit.slope).abs() < 1e-12);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "sweep.json",
        r#"{"command": "sweep-time", "model": "ising", "seed": 5, "params": {"step_times": [5, 20]}}"#,
    );
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = braidsim(&cfg, out, &["--no-wall-time", "--quiet"]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for name in ["result.json", "sweep.csv"] {
        assert_eq!(fs::read(a.join(name)).unwrap(), fs::read(b.join(name)).unwrap(), "{name}");
    }
    assert!(result(&a)["wall_time_s"].is_null());
}

#[test]
fn config_errors_exit_with_two_and_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"command": "braid", "model": "fibonacci", "params": {"pionts": 10}}"#, "pionts"),
        (r#"{"command": "braid", "model": "fibonacci", "params": {"points": 2}}"#, "params.points"),
        (r#"{"command": "braid", "model": "fibonacci", "params": {"charge": "sigma"}}"#, "params.charge"),
        (r#"{"command": "spectrum", "model": "ising", "params": {"favored": "sigma"}}"#, "params"),
        (r#"{"command": "braid", "model": "fibonacci", "colour": 1}"#, "colour"),
        (r#"{"command": "braid", "model": "fibonacci""#, "config"),
    ];
    for (k, (body, field)) in cases.iter().enumerate() {
        let cfg = write_config(dir.path(), &format!("c{k}.json"), body);
        let o = braidsim(&cfg, &dir.path().join("out"), &[]);
        assert_eq!(o.status.code(), Some(2), "case {k}: {}", stderr(&o));
        assert!(stderr(&o).contains(field), "case {k}: {}", stderr(&o));
    }
    assert!(!dir.path().join("out").join("result.json").exists());
}

#[test]
fn numerical_failures_exit_with_three_and_name_the_error() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"command": "braid", "model": "fibonacci", "params": {"floor": 0.5}}"#, "DegeneracyChange"),
        (r#"{"command": "braid", "model": "fibonacci", "params": {"gap_threshold": 0.7}}"#, "GapCollapse"),
        (r#"{"command": "chain-scaling", "model": "ising", "params": {"dim_cap": 4}}"#, "DimensionCap"),
    ];
    for (k, (body, name)) in cases.iter().enumerate() {
        let cfg = write_config(dir.path(), &format!("n{k}.json"), body);
        let o = braidsim(&cfg, &dir.path().join("out"), &[]);
        assert_eq!(o.status.code(), Some(3), "case {k}: {}", stderr(&o));
        assert!(stderr(&o).contains(name), "case {k}: {}", stderr(&o));
    }
}

#[test]
fn io_errors_exit_with_four() {
    let dir = tempfile::tempdir().unwrap();
    let o = braidsim(&dir.path().join("absent.json"), &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(4));

    let cfg = write_config(dir.path(), "m.json", r#"{"command": "braid", "model": "no-such-model.json"}"#);
    let o = braidsim(&cfg, &dir.path().join("out"), &[]);
    assert_eq!(o.status.code(), Some(4));

    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let cfg = write_config(dir.path(), "v.json", r#"{"command": "verify-model", "model": "ising"}"#);
    let o = braidsim(&cfg, &blocker.join("out"), &[]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
}

#[test]
fn chain_braid_small_layout_matches_tjunction() {
    let dir = tempfile::tempdir().unwrap();
    let chain = write_config(
        dir.path(),
        "chain.json",
        r#"{"command": "chain-braid", "model": "ising", "params": {"arms": [0, 0, 0], "points_per_move": 400}}"#,
    );
    let tj = write_config(
        dir.path(),
        "tj.json",
        r#"{"command": "braid", "model": "ising", "params": {"points": 1200}}"#,
    );
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert!(braidsim(&chain, &a, &[]).status.success());
    assert!(braidsim(&tj, &b, &[]).status.success());
    let (ra, rb) = (result(&a), result(&b));
    let fa = ra["result"]["fidelity"].as_f64().unwrap();
    let fb = rb["result"]["fidelity"].as_f64().unwrap();
    assert!((fa - fb).abs() < 1e-9);
    assert_eq!(ra["result"]["anyons"], 4);
}
