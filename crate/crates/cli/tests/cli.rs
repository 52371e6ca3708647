use std::process::{Command, Output};

use dunkl_coulomb::coherent::{coherent_closed, CoherentParam};
use dunkl_coulomb::ModelParams;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dunkl-coulomb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect()
}

#[test]
fn spectrum_single_level() {
    let out = run(&[
        "spectrum", "--mu1", "0", "--mu2", "0", "--alpha", "-1", "--m-max", "0", "--nr-max", "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("e1,e2,m,nr,s2,k,energy"));
    let r = rows(&text);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0][6].parse::<f64>().unwrap(), -2.0);
}

#[test]
fn spectrum_sorted_with_exact_degeneracy() {
    let out = run(&[
        "spectrum", "--mu1", "0.3", "--mu2", "0.2", "--m-max", "1", "--nr-max", "2",
    ]);
    let r = rows(&stdout(&out));
    let energies: Vec<f64> = r.iter().map(|row| row[6].parse().unwrap()).collect();
    assert!(energies.windows(2).all(|w| w[0] <= w[1]));
    let find = |m: &str, nr: &str| {
        r.iter()
            .find(|row| row[0] == "0" && row[1] == "0" && row[2] == m && row[3] == nr)
            .unwrap()[6]
            .clone()
    };
    assert_eq!(find("0", "2"), find("1", "0"));
}

#[test]
fn spectrum_rejects_repulsive_coupling() {
    let out = run(&["spectrum", "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bound"));
}

#[test]
fn radial_ground_state_values() {
    let out = run(&[
        "radial", "--mu1", "0", "--mu2", "0", "--alpha", "-1", "--grid-n", "2", "--r-max", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&stdout(&out));
    let v: Vec<f64> = r.iter().map(|row| row[1].parse().unwrap()).collect();
    assert!((v[0] - 4.0 * (-1.0f64).exp()).abs() < 1e-14);
    assert!((v[1] - 4.0 * (-2.0f64).exp()).abs() < 1e-14);
}

#[test]
fn angular_constant_mode() {
    let out = run(&["angular", "--mu1", "0", "--mu2", "0", "--grid-n", "16"]);
    let r = rows(&stdout(&out));
    assert_eq!(r.len(), 16);
    let expected = 1.0 / (2.0 * std::f64::consts::PI).sqrt();
    for row in r {
        assert!((row[1].parse::<f64>().unwrap() - expected).abs() < 1e-15);
    }
}

#[test]
fn coherent_matches_library_bit_for_bit() {
    let out = run(&[
        "coherent", "--mu1", "0.3", "--mu2", "0.2", "--two-m", "1", "--xi-mod", "0.3", "--xi-arg",
        "0.5", "--grid-n", "25", "--r-max", "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let p = ModelParams::new(0.3, 0.2, -1.0).unwrap();
    let z = CoherentParam::from_polar_disc(0.3, 0.5).unwrap();
    for row in rows(&stdout(&out)) {
        let r: f64 = row[0].parse().unwrap();
        let v = coherent_closed(r, &z, 1, &p);
        assert_eq!(row[1].parse::<f64>().unwrap(), v.re);
        assert_eq!(row[2].parse::<f64>().unwrap(), v.im);
        assert_eq!(row[3].parse::<f64>().unwrap(), v.norm());
    }
}

#[test]
fn coherent_rejects_outside_disc() {
    assert_eq!(run(&["coherent", "--xi-mod", "1.0"]).status.code(), Some(2));
}

#[test]
fn verify_specfun_passes() {
    let out = run(&["verify", "--suite", "specfun"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text
        .lines()
        .skip(1)
        .all(|l| l.starts_with("specfun,") && l.ends_with(",PASS")));
}

#[test]
fn verify_zero_tolerance_fails() {
    let out = run(&["verify", "--suite", "specfun", "--tol-scale", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains(",FAIL"));
}

#[test]
fn verify_all_json() {
    let out = run(&["verify", "--suite", "all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let checks: Vec<serde_json::Value> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(checks.len() >= 20);
    assert!(checks.iter().all(|c| c["pass"] == true));
    let keys: Vec<(String, String)> = checks
        .iter()
        .map(|c| {
            (
                c["suite"].as_str().unwrap().to_owned(),
                c["id"].as_str().unwrap().to_owned(),
            )
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--mu1", "abc"]).status.code(), Some(2));
    assert_eq!(
        run(&["radial", "--two-m", "1", "--e1", "0", "--e2", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["spectrum", "--m-max", "0.3"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"mu1": 0.0, "mu2": 0.0, "alpha": -3.0, "m_max": 0, "nr_max": 0}"#,
    )
    .unwrap();
    let out = run(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--alpha",
        "-1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&stdout(&out))[0][6].parse::<f64>().unwrap(), -2.0);

    std::fs::write(&cfg, r#"{"mu_1": 0.0}"#).unwrap();
    assert_eq!(
        run(&["spectrum", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_file_and_json_format() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("radial.json");
    let out = run(&[
        "radial",
        "--grid-n",
        "4",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let rows: Vec<serde_json::Value> =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[0]["r"].is_number() && rows[0]["value"].is_number());
}
