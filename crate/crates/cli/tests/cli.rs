use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_supersinh"))
        .args(args)
        .output()
        .expect("binary runs");
    let text = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&text).unwrap_or_else(|e| panic!("bad JSON ({e}): {text}"));
    (out.status.code().unwrap(), json)
}

#[test]
fn verify_algebra_and_sentinel() {
    let (code, r) = run(&["verify-algebra", "--fields", "20"]);
    assert_eq!(code, 0);
    assert_eq!(r["table1"]["passed"], 25);
    assert_eq!(
        r["kdv_brackets"]["detail"]["cells"]["A1,A1"]["computed"],
        "-2C1"
    );

    let (code, r) = run(&["verify-algebra", "--sentinel", "--fields", "5"]);
    assert_eq!(code, 1);
    assert!(r["table1"]["failures"]
        .as_array()
        .unwrap()
        .contains(&Value::from("Qt,Qt")));
}

#[test]
fn invariants_and_kdv() {
    let (code, r) = run(&["verify-invariants", "--degree", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r["s5_witness"]["reducible"], false);
    let (code, r) = run(&["kdv-check"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn reduce_writes_files_and_certify_reads_them() {
    let dir = tempfile::tempdir().unwrap();
    let sol = dir.path().join("sol.json");
    let csv = dir.path().join("sol.csv");
    let svg = dir.path().join("sol.svg");
    let (code, r) = run(&[
        "reduce",
        "--subalgebra",
        "S4",
        "--eps",
        "1",
        "--c0",
        "[[12,0.5]]",
        "--c1",
        "0.6",
        "--ic-alpha",
        "0.3",
        "--ic-dalpha",
        "0.0",
        "--grid",
        "-5:5:2001",
        "--out",
        sol.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{r}");
    assert!(r["reduced_residual"]["max_abs"].as_f64().unwrap() < 1e-10);
    assert!(r["diagnostics"]["warnings"].as_array().unwrap().len() == 1);
    let header = std::fs::read_to_string(&csv).unwrap();
    assert!(header.starts_with("sigma,alpha_0,alpha_12"));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polyline"));

    let (code, r) = run(&[
        "certify",
        "--solution",
        sol.to_str().unwrap(),
        "--nx",
        "11",
        "--nt",
        "11",
    ]);
    assert_eq!(code, 0, "{r}");
    // a window outside the integrated σ-range cannot be certified
    let (code, r) = run(&[
        "certify",
        "--solution",
        sol.to_str().unwrap(),
        "--x",
        "4:6",
        "--nx",
        "3",
        "--nt",
        "3",
    ]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "ExtrapolationError");
}

#[test]
fn solve_exit_codes() {
    let (code, r) = run(&[
        "solve",
        "--subalgebra",
        "S4",
        "--ic-alpha",
        "0.4",
        "--grid",
        "-3:3:601",
        "--nx",
        "21",
        "--nt",
        "21",
    ]);
    assert_eq!(code, 0);
    assert!(r["certification"]["max_abs"].as_f64().unwrap() < 1e-6);

    let (code, r) = run(&[
        "solve",
        "--subalgebra",
        "S1",
        "--grid",
        "0.5:2:101",
        "--ic-alpha",
        "0.2",
    ]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "DomainError");

    let (code, r) = run(&["solve", "--subalgebra", "S5"]);
    assert_eq!(code, 3);
    assert_eq!(r["error"], "NotReducible");

    let (code, _) = run(&["solve", "--subalgebra", "S17"]);
    assert_eq!(code, 2);
    let (code, r) = run(&["reduce", "--subalgebra", "S4", "--c0", "[[1,0.5]]"]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "ParityError");
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"command": "reduce", "subalgebra": "S4", "epsilon": 1, "ic": {"alpha": 0.3}, "grid": "-1:1:101"}"#,
    )
    .unwrap();
    let (code, r) = run(&[
        "reduce",
        "--config",
        cfg.to_str().unwrap(),
        "--grid",
        "-2:2:201",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["grid"]["n"], 201);
    let (code, r) = run(&["kdv-check", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(r["error"], "ConfigurationError");
}

#[test]
fn elliptic_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("e.csv");
    let (code, r) = run(&[
        "elliptic",
        "--c0",
        "[[12,0.1]]",
        "--c1",
        "2",
        "--grid",
        "-3:3:61",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{r}");
    assert!(r["ode_residual_max_abs"].as_f64().unwrap() < 1e-6);
    assert_eq!(r["invariants"]["g2_agree"], true);
    assert!(r["invariants"]["g3_discrepancy"].is_array());
    let header = std::fs::read_to_string(&csv).unwrap();
    assert!(header.starts_with("sigma,y_0,y_12"));
}
