use std::process::Command;

use elliptic_u2::Report;

fn ellu2(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ellu2"))
        .args(args)
        .env_remove("ELLU2_SEED")
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> Report {
    let mut full = args.to_vec();
    full.extend(["--json", "-"]);
    let out = ellu2(&full);
    serde_json::from_slice(&out.stdout).expect("report on stdout")
}

#[test]
fn verify_theta_passes() {
    let out = ellu2(&["verify", "theta", "--p", "0.25", "--q", "0.5", "--samples", "200", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn matrix_pairing_small() {
    let out = ellu2(&["verify", "matrix-pairing", "--max-mn", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn full_report_is_deterministic() {
    let a = report(&["verify", "all", "--seed", "42"]);
    let b = report(&["verify", "all", "--seed", "42"]);
    assert!(a.passed());
    assert!(a.checks.len() >= 10);
    assert_eq!(a.without_timings(), b.without_timings());
    let ids: std::collections::BTreeSet<_> = a.checks.iter().map(|c| &c.id).collect();
    assert_eq!(ids.len(), a.checks.len(), "each check exactly once");
}

#[test]
fn json_file_has_stable_schema() {
    let dir = std::env::temp_dir().join(format!("ellu2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = ellu2(&["verify", "star", "--seed", "3", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
    assert_eq!(keys, ["checks", "config", "status"]);
    assert_eq!(v["status"], "pass");
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn tightened_tolerance_fails_with_exit_one() {
    let out = ellu2(&["verify", "qdybe", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_config_exits_two() {
    assert_eq!(ellu2(&["verify", "theta", "--q", "1.2"]).status.code(), Some(2));
    assert_eq!(ellu2(&["verify", "theta", "--samples", "0"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("ellu2-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("bad.toml");
    std::fs::write(&cfg, "p = 0.2\nunknown_key = 1\n").unwrap();
    assert_eq!(ellu2(&["verify", "theta", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn config_file_and_env_seed() {
    let dir = std::env::temp_dir().join(format!("ellu2-env-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("c.toml");
    std::fs::write(&cfg, "p = 0.3\nq = 0.4\nseed = 5\nmax-mn = 1\n[per_check_samples]\ntheta-addition = 7\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_ellu2"))
        .args(["verify", "theta", "--config", cfg.to_str().unwrap(), "--json", "-"])
        .env("ELLU2_SEED", "99")
        .output()
        .unwrap();
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!((r.config.p, r.config.q, r.config.seed, r.config.max_mn), (0.3, 0.4, 99, 1));
    let add = r.checks.iter().find(|c| c.id == "theta-addition").unwrap();
    assert_eq!(add.samples, 7);
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn eval_prints_values() {
    let out = ellu2(&["eval", "theta", "--z", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["theta"][0], 0.0);

    let args = |m: &str| {
        let out = ellu2(&[
            "eval", "pairing", "--M", "2", "--r", "1", "--s", "1", "--w", "1.2+0.1i", "--N", "2", "--k", "1",
            "--j", "1", "--z", "0.8", "--lambda", "0.3", "--method", m,
        ]);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        (v["pairing"][0].as_f64().unwrap(), v["pairing"][1].as_f64().unwrap())
    };
    let (a, b, c) = (args("closed"), args("oracle"), args("rep"));
    for (x, y) in [(a, b), (a, c)] {
        assert!((x.0 - y.0).abs() + (x.1 - y.1).abs() < 1e-9 * (x.0.abs() + x.1.abs()));
    }

    let out = ellu2(&["eval", "vseries", "--a1", "0.3+0.1i", "--params", "0.5,4,1.1,0.9,0.7,0.6,0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let out = ellu2(&["eval", "vseries", "--a1", "0.3", "--params", "0.5,0.7"]);
    assert_eq!(out.status.code(), Some(2), "non-terminating series is an error");
    let out = ellu2(&["eval", "rmatrix", "--lambda", "0.3", "--z", "-1.1+0.2i"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["rmatrix"].as_array().unwrap().len(), 4);
}
