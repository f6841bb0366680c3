use std::process::{Command, Output};

use serde_json::Value;

fn dtc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtc")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn plan_equal_points_is_dirac_constant() {
    let o = dtc(&["plan", "--planner", "rpn(2)", "--from", "[0,0,1]", "--to", "[0,0,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["support"], 1);
    assert_eq!(v["pieces"][0]["weight"], "1/1");
    let trace = v["pieces"][0]["trace"]["points"].as_array().unwrap();
    assert!(trace.len() > 2);
    assert!(trace.iter().all(|p| *p == serde_json::json!([0.0, 0.0, 1.0])), "{trace:?}");
}

#[test]
fn plan_rpn_weights() {
    // α = π/3 between the lines gives (2/3, 1/3)
    let o = dtc(&["plan", "--planner", "rpn(2)", "--from", "[1,0,0]", "--to", "[0.5,0.8660254037844386,0]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let frac = |s: &str| {
        let (p, q) = s.split_once('/').unwrap();
        p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap()
    };
    let mut w: Vec<f64> = v["pieces"].as_array().unwrap().iter().map(|p| frac(p["weight"].as_str().unwrap())).collect();
    w.sort_by(f64::total_cmp);
    assert_eq!(v["support"], 2);
    assert!((w[0] - 1.0 / 3.0).abs() < 1e-12 && (w[1] - 2.0 / 3.0).abs() < 1e-12, "{w:?}");
}

#[test]
fn bounds_on_s2() {
    let o = dtc(&["bounds", "--complex", "S2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["dTC_lower"], 2);
    assert_eq!(v["dcat_lower"], 1);
    let inline = dtc(&["bounds", "--complex", r#"{"vertices":4,"maximal":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#, "--field", "Q"]);
    assert_eq!(json(&inline)["dTC_lower"], 2);
    assert!(json(&inline).get("Z2").is_none());
}

#[test]
fn negative_controls_exit_two() {
    for planner in ["swapped_endpoints", "constant_output"] {
        let o = dtc(&["audit", "--planner", planner, "--samples", "50"]);
        assert_eq!(o.status.code(), Some(2), "{planner}");
        let v = json(&o);
        assert_eq!(v["pass"], false);
        assert!(v["audit"]["violation_count"].as_u64().unwrap() > 0);
    }
    let o = dtc(&["audit", "--planner", "circle", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_print_schema() {
    for args in [
        vec!["frobnicate"],
        vec!["plan", "--planner", "nope", "--from", "[1,0]", "--to", "[0,1]"],
        vec!["bounds", "--complex", "not_a_fixture"],
        vec!["plan", "--planner", "circle", "--from", "[1,0", "--to", "[0,1]"],
        vec!["sp2", "--complex", "S1", "--basepoint", "9"],
        vec!["audit", "--planner", "circle", "--format", "yaml"],
    ] {
        let o = dtc(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains("\"exit_codes\""), "{args:?}: {err}");
        assert!(o.stdout.is_empty());
    }
    assert_eq!(dtc(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_deterministic() {
    let runs = [
        vec!["--seed", "4", "audit", "--planner", "odd_sphere(3)", "--samples", "300"],
        vec!["plan", "--planner", "even_sphere(2)", "--from", "[1,0,0]", "--to", "[-1,0,0]"],
        vec!["sp2", "--complex", "S1"],
    ];
    for args in runs {
        let (a, b) = (dtc(&args), dtc(&args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
    let (a, b) = (dtc(&["--seed", "1", "audit", "--planner", "circle", "--samples", "100"]), dtc(&["--seed", "2", "audit", "--planner", "circle", "--samples", "100"]));
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn out_writes_file() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("bounds_t2.json");
    let o = dtc(&["bounds", "--complex", "T2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["dTC_lower"], 2);
}

#[test]
fn sp2_subcommand() {
    let v = json(&dtc(&["sp2", "--complex", "S2"]));
    assert_eq!(v["betti_SP2"], serde_json::json!([1, 0, 1, 0, 1]));
    assert_eq!(v["euler_check"], true);
    let o = dtc(&["sp2", "--complex", "T2", "--check", "bound"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["report"]["certifies_dcat_ge_2"], true);
    let o = dtc(&["sp2", "--complex", "S2", "--check", "bound"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dtc(&["sp2", "--complex", "S1", "--field", "Z2", "--check", "dold"]);
    assert_eq!(o.status.code(), Some(0));
}
