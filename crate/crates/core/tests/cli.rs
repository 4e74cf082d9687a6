use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn zonalval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonalval")).args(args).output().expect("binary runs")
}

fn zonalval_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zonalval"))
        .args(args)
        .env(key, val)
        .output()
        .expect("binary runs")
}

fn rows(text: &str) -> Vec<(f64, f64)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,value"));
    lines
        .map(|l| {
            let (t, v) = l.split_once(',').expect("two columns");
            (t.parse().unwrap(), v.parse().unwrap())
        })
        .collect()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn transform_constant_at_alpha_two() {
    let out = zonalval(&["transform", "--op", "T", "--alpha", "2", "--kernel", "const:1", "--grid", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    let ts: Vec<f64> = r.iter().map(|p| p.0).collect();
    assert_eq!(ts, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    for (t, v) in r {
        assert!((v - (1.0 + t * t)).abs() < 1e-12, "{t}: {v}");
    }
}

#[test]
fn transform_fixes_linear_and_projects_constant() {
    let out = zonalval(&["transform", "--op", "T", "--alpha", "2", "--kernel", "poly:0,1", "--grid", "9"]);
    for (t, v) in rows(&String::from_utf8(out.stdout).unwrap()) {
        assert!((v - t).abs() < 1e-12);
    }
    let out = zonalval(&["transform", "--op", "piBall", "--alpha", "2", "--kernel", "const:1", "--grid", "7"]);
    for (_, v) in rows(&String::from_utf8(out.stdout).unwrap()) {
        assert!((v - 2.0 * PI).abs() < 1e-12);
    }
}

#[test]
fn transform_r_q_and_disk_ops() {
    for args in [
        vec!["--op", "R", "--a", "2", "--b", "1", "--kernel", "poly:0,1"],
        vec!["--op", "Q", "--a", "1", "--b", "1", "--kernel", "cos"],
        vec!["--op", "piDisk", "--alpha", "3", "--kernel", "exp"],
        vec!["--op", "Tinv", "--alpha", "2", "--kernel", "poly:1,0,1"],
    ] {
        let mut full = vec!["transform", "--grid", "11"];
        full.extend(args.iter().copied());
        let out = zonalval(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        let r = rows(&String::from_utf8(out.stdout).unwrap());
        assert!(r.iter().all(|p| p.1.is_finite()));
        if args[1] == "Tinv" {
            assert_eq!(r.len(), 9);
            assert!(r.iter().all(|p| (p.1 - 1.0).abs() < 1e-10));
        }
    }
}

#[test]
fn transform_exit_codes() {
    let bad = zonalval(&["transform", "--op", "T", "--alpha", "2", "--kernel", "nonsense"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown kernel"));
    let pre = zonalval(&["transform", "--op", "T", "--alpha", "1", "--kernel", "power-sing:0.5"]);
    assert_eq!(pre.status.code(), Some(3));
    let missing = zonalval(&["transform", "--op", "T", "--kernel", "cos"]);
    assert_eq!(missing.status.code(), Some(2));
    let bad_op = zonalval(&["transform", "--op", "X", "--kernel", "cos"]);
    assert_eq!(bad_op.status.code(), Some(2));
}

#[test]
fn round_trip_through_csv() {
    let dir = tempfile::tempdir().unwrap();
    let fwd = dir.path().join("t.csv");
    let back = dir.path().join("back.csv");
    let fwd_s = fwd.to_str().unwrap();
    for (kernel, f) in [("cos", f64::cos as fn(f64) -> f64), ("exp", f64::exp)] {
        let out = zonalval(&["transform", "--op", "T", "--alpha", "2", "--kernel", kernel, "--grid", "201", "--output", fwd_s]);
        assert_eq!(out.status.code(), Some(0));
        let csv_kernel = format!("csv:{fwd_s}");
        let out = zonalval(&[
            "transform", "--op", "Tinv", "--alpha", "2", "--kernel", &csv_kernel, "--grid", "201", "--output",
            back.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let r = rows(&std::fs::read_to_string(&back).unwrap());
        assert_eq!(r.len(), 199);
        for (t, v) in r {
            assert!((v - f(t)).abs() < 1e-7, "{kernel} at {t}: {v}");
        }
    }
}

#[test]
fn eval_examples() {
    let out = zonalval(&[
        "eval", "--spec", r#"{"n":3,"i":1,"rep":"disk","kernel":"const:1"}"#, "--body",
        r#"{"dim":3,"kind":"cone","s":0.5}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!((v["value"].as_f64().unwrap() - 3.0 * PI).abs() < 1e-12);
    assert_eq!(v["representation"], "disk");

    let out = zonalval(&[
        "eval", "--spec", r#"{"n":3,"i":1,"rep":"ball","kernel":"const:1"}"#, "--body",
        r#"{"dim":3,"kind":"ball","r":1}"#,
    ]);
    assert!((json(&out)["value"].as_f64().unwrap() - 4.0 * PI).abs() < 1e-9);

    let bodies = [
        r#"{"dim":4,"kind":"smooth","profile":{"type":"spheroid","a":0.5,"b":1}}"#,
        r#"{"dim":4,"kind":"cylinder"}"#,
        r#"{"dim":4,"kind":"sum","terms":[{"weight":1,"body":{"kind":"ball","r":0.5}},{"weight":2,"body":{"kind":"disk"}}]}"#,
    ];
    for body in bodies {
        let out = zonalval(&["eval", "--n", "4", "--i", "2", "--rep", "disk", "--kernel", "poly:0,1", "--body", body]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(json(&out)["value"].as_f64().unwrap().abs() < 1e-9, "{body}");
    }
}

#[test]
fn eval_exit_codes() {
    let parse = zonalval(&["eval", "--spec", "{\"n\":3,", "--body", r#"{"dim":3,"kind":"ball","r":1}"#]);
    assert_eq!(parse.status.code(), Some(2));
    let body = zonalval(&["eval", "--spec", r#"{"n":3,"i":1,"rep":"disk","kernel":"cos"}"#, "--body", r#"{"kind":"ball"}"#]);
    assert_eq!(body.status.code(), Some(2));
    let mismatch = zonalval(&[
        "eval", "--spec", r#"{"n":3,"i":1,"rep":"disk","kernel":"cos"}"#, "--body", r#"{"dim":4,"kind":"ball","r":1}"#,
    ]);
    assert_eq!(mismatch.status.code(), Some(3));
    let mixed = r#"{"dim":3,"kind":"sum","terms":[{"weight":1,"body":{"kind":"ball"}},{"weight":1,"body":{"kind":"cone","s":0.5}}]}"#;
    let out = zonalval(&["eval", "--n", "3", "--i", "1", "--kernel", "cos", "--body", mixed]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn eval_reads_files() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.json");
    let body = dir.path().join("body.json");
    std::fs::write(&spec, r#"{"n":4,"i":1,"rep":"ball","kernel":"const:1"}"#).unwrap();
    std::fs::write(&body, r#"{"dim":4,"kind":"cone","s":0.5}"#).unwrap();
    let out = zonalval(&["eval", "--spec", spec.to_str().unwrap(), "--body", body.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let kappa3 = 4.0 * PI / 3.0;
    assert!((json(&out)["value"].as_f64().unwrap() - kappa3 * 1.5f64.powi(2) / 0.5).abs() < 1e-10);
}

#[test]
fn verify_diagram_and_cones_pass() {
    let out = zonalval(&["verify", "--suite", "diagram", "--tol", "1e-7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["suite"], "diagram");
    assert!(v["max_rel_err"].as_f64().unwrap() < 1e-7);
    let case = &v["cases"][0];
    for key in ["params", "lhs", "rhs", "abs_err", "rel_err", "pass"] {
        assert!(case.get(key).is_some(), "missing {key}");
    }
    assert_eq!(zonalval(&["verify", "--suite", "cones"]).status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(zonalval(&["verify", "--suite", "everything"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let out = zonalval(&["verify", "--suite", "cone-ball", "--tol", "0", "--output", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["suite"], "cone-ball");
}

#[test]
fn crofton_report_is_deterministic() {
    let args = ["verify", "--suite", "crofton", "--samples", "20000", "--seed", "7"];
    let a = zonalval(&args);
    let b = zonalval(&args);
    let c = zonalval_env(&args, "ZONALVAL_THREADS", "1");
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
    assert!(v["cases"][0]["params"]["stderr"].as_f64().unwrap() > 0.0);
    let d = zonalval(&["verify", "--suite", "crofton", "--samples", "20000", "--seed", "8"]);
    assert_ne!(a.stdout, d.stdout);
}

#[test]
fn constants_table() {
    let out = zonalval(&["constants", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let kappa: Vec<f64> = serde_json::from_value(v["kappa"].clone()).unwrap();
    let expect = [1.0, 2.0, PI, 4.0 * PI / 3.0];
    for (a, b) in kappa.iter().zip(expect) {
        assert!((a - b).abs() < 1e-15);
    }
    // a_{3,2} = π·2·κ_2·κ_1 / (3·2·κ_3·κ_3) with κ from Γ directly
    let k = |m: f64| PI.powf(m / 2.0) / statrs::function::gamma::gamma(m / 2.0 + 1.0);
    let a32 = PI * 2.0 * k(2.0) * k(1.0) / (3.0 * 2.0 * k(3.0) * k(3.0));
    let listed = v["a_nj"].as_array().unwrap().iter().find(|e| e["j"] == 2).unwrap()["value"].as_f64().unwrap();
    assert!((listed - a32).abs() < 1e-14);
    let omega: Vec<f64> = serde_json::from_value(json(&zonalval(&["constants", "--n", "4"]))["omega"].clone()).unwrap();
    assert!((omega[5] - 8.0 * PI * PI / 3.0).abs() < 1e-13);
}

#[test]
fn config_file_with_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"op": "T", "alpha": 2, "kernel": "const:1", "grid": 3}"#).unwrap();
    let c = cfg.to_str().unwrap();
    let out = zonalval(&["--config", c, "transform"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 3);
    assert!((r[0].1 - 2.0).abs() < 1e-12);
    let out = zonalval(&["transform", "--config", c, "--kernel", "poly:0,1", "--grid", "5"]);
    let r = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(r.len(), 5);
    assert!((r[0].1 + 1.0).abs() < 1e-12);
    assert_eq!(zonalval(&["--config", "/nonexistent.json", "constants"]).status.code(), Some(2));
}

#[test]
fn csv_output_is_plain() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("o.csv");
    zonalval(&["transform", "--op", "T", "--alpha", "1", "--kernel", "cos", "--grid", "4", "--output", p.to_str().unwrap()]);
    let text = std::fs::read_to_string(Path::new(&p)).unwrap();
    assert!(!text.contains('\r'));
    let second = text.lines().nth(1).unwrap();
    let mantissa = second.split(',').nth(1).unwrap().split('e').next().unwrap();
    assert_eq!(mantissa.trim_start_matches('-').replace('.', "").len(), 17);
}
