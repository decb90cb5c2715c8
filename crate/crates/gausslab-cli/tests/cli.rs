use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn gsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsl")).args(args).env_remove("GSL_THREADS").output().expect("gsl runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn strip_elapsed(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed");
            m.values_mut().for_each(strip_elapsed);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_elapsed),
        _ => {}
    }
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gsl-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn kloosterman_value() {
    let o = gsl(&["expsum", "kloosterman", "--m", "1+0i", "--n", "1+0i", "--c", "1+1i"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["inputs"]["c"], "1+1i");
    assert!(v["elapsed"].is_number());
}

#[test]
fn negative_literals_and_polar() {
    let o = gsl(&["expsum", "ramanujan", "--n", "-2-2i", "--c", "2+0i"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_of(&o)["value"], 2.0);
    let o = gsl(&["bessel", "j", "--kappa", "1", "--p", "1", "--z", "2@0.785"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json_of(&o)["value"]["re"].is_number());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gsl(&["expsum", "kloosterman", "--m", "1", "--n", "1", "--c", "1+"]).status.code(), Some(2));
    assert_eq!(gsl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(gsl(&["expsum", "kloosterman", "--m", "1", "--n", "1", "--c", "0"]).status.code(), Some(2));
    assert_eq!(gsl(&["bessel", "j", "--kappa", "1", "--z", "1@"]).status.code(), Some(2));
    assert_eq!(gsl(&["--help"]).status.code(), Some(0));
    let help = String::from_utf8(gsl(&["--help"]).stdout).unwrap();
    assert!(help.contains("mod@arg") && help.contains("a+bi"));
}

#[test]
fn quick_verify_passes() {
    let o = gsl(&["verify", "all", "--quick", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["v_dft", "decomposition", "circle_formula", "theta_poisson"]);
    for r in v.as_array().unwrap() {
        for key in ["name", "lhs", "rhs_budget", "ratio", "params", "elapsed"] {
            assert!(r.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn identical_runs_identical_json() {
    let args = ["sieve", "ratio", "--kind", "quadform", "--C", "3", "--N", "6", "--trials", "4", "--seed", "11"];
    let mut a = json_of(&gsl(&args));
    let mut b = json_of(&gsl(&args));
    strip_elapsed(&mut a);
    strip_elapsed(&mut b);
    assert_eq!(a.to_string(), b.to_string());
    let mut c = json_of(&gsl(&[&args[..11], &["12"]].concat()));
    strip_elapsed(&mut c);
    assert_ne!(a.to_string(), c.to_string());
}

#[test]
fn sieve_ratio_writes_json_file() {
    let path = tmp("ratio.json");
    let p = path.to_str().unwrap();
    let o = gsl(&["sieve", "ratio", "--kind", "classical", "--C", "5", "--N", "100", "--trials", "20", "--seed", "7", "--json", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["name"], "ls_classical");
    let lhs = v["lhs"].as_f64().unwrap();
    assert!(lhs.is_finite() && lhs > 0.0 && lhs <= 1e3);
}

#[test]
fn assemble_with_poisson_check() {
    let o = gsl(&["sieve", "assemble", "--T", "4", "--N", "20", "--X", "2", "--check", "poisson", "--pairs", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json_of(&o);
    assert!(v["Q"].is_number() && v["Z"].is_number());
    assert_eq!(v["reports"][0]["name"], "poisson_qsum");
}

#[test]
fn config_presets_and_overrides() {
    let cfg = tmp("preset.cfg");
    fs::write(&cfg, "# preset\nseed = 5\ntrials=3\nkind=mean_value\nC=3\nN=6\n").unwrap();
    let c = cfg.to_str().unwrap();
    let v = json_of(&gsl(&["sieve", "ratio", "--config", c]));
    assert_eq!(v["params"]["seed"], 5);
    assert_eq!(v["params"]["trials"], 3);
    assert_eq!(v["params"]["kind"], "mean_value");
    let v = json_of(&gsl(&["sieve", "ratio", "--config", c, "--seed", "9"]));
    assert_eq!(v["params"]["seed"], 9);
    fs::write(&cfg, "bogus=1\n").unwrap();
    assert_eq!(gsl(&["sieve", "ratio", "--config", c]).status.code(), Some(2));
}

#[test]
fn csv_sweep_columns() {
    let o = gsl(&["sieve", "sweep", "--kind", "quadform", "--C", "2,3", "--N", "4,6", "--trials", "2", "--csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[0], "name");
    assert!(header.contains(&"C") && header.contains(&"N"));
    assert_eq!(&header[header.len() - 2..], ["ratio", "elapsed"]);
    assert_eq!(lines.count(), 4);
}

#[test]
fn thread_flag_and_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_gsl"))
        .args(["expsum", "verify", "weil", "--max-norm", "30", "--trials", "3"])
        .env("GSL_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(gsl(&["--threads", "0", "verify", "circle"]).status.code(), Some(2));
}
