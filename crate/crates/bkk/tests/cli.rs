use std::path::Path;
use std::process::{Command, Output};

use bkk_core::field::{gauss_sum, AdditiveCharacter, MultiplicativeCharacter, PrimeField};
use num_complex::Complex64;
use serde_json::Value;

fn bkk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkk"))
        .args(args)
        .env_remove("BKK_REPORT_DIR")
        .output()
        .expect("binary runs")
}

fn bkk_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkk"))
        .args(args)
        .env("BKK_REPORT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn pair(v: &Value) -> Complex64 {
    Complex64::new(v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn gamma_reports_match_golden_files_byte_for_byte() {
    for (q, file) in [("3", "gamma_gl2_q3_std_exact.json"), ("5", "gamma_gl2_q5_std_exact.json")] {
        let out = bkk(&["gamma", "--group", "gl2", "--q", q, "--mode", "exact"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(String::from_utf8(out.stdout).unwrap(), golden(file), "q={q}");
    }
}

#[test]
fn spelling_of_defaults_does_not_change_the_report() {
    let implicit = bkk(&["gamma", "--group", "gl2", "--q", "3", "--mode", "exact"]);
    let explicit = bkk(&[
        "gamma",
        "--group",
        "gl2",
        "--q",
        "3",
        "--mode",
        "exact",
        "--weights",
        "1,0; 0,1",
        "--psi",
        "1",
        "--convention",
        "+1,1,-4",
        "--tol",
        "eigen=1e-8",
    ]);
    assert_eq!(implicit.stdout, explicit.stdout);
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["verify", "vanishing", "--group", "gl2", "--q", "5"][..],
        &["verify", "descent", "--group", "sl2", "--q", "3", "--corpus", "20"][..],
        &["calibrate", "--group", "gl2", "--q", "3"][..],
    ] {
        let a = bkk(args);
        let b = bkk(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(json(&a)["checks"].as_array().unwrap().iter().all(|c| c.get("runtime_ms").is_none()));
    }
}

#[test]
fn timings_are_opt_in() {
    let out = bkk(&["verify", "eigen", "--group", "gl2", "--q", "3", "--timings"]);
    assert!(check(&json(&out), "eigen")["runtime_ms"].is_u64());
}

#[test]
fn gl1_gamma_is_minus_a_gauss_sum_per_character() {
    let out = bkk(&["gamma", "--group", "gl1", "--q", "5", "--weights", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let entries = r["gamma"]["by_datum"].as_array().unwrap();
    assert_eq!(entries.len(), 4);
    let field = PrimeField::new(5, 1).unwrap();
    let psi = AdditiveCharacter::new(5, 1).unwrap();
    for (a, e) in entries.iter().enumerate() {
        assert_eq!(e["datum"], format!("rank1({a})"));
        // canonical record: inverted character, sign +1, factor q^-4
        let eta = MultiplicativeCharacter::new(4, -(a as i64));
        let g: Complex64 = gauss_sum(&eta, &psi, &field, 1).unwrap();
        let expected = -g / 625.0;
        assert!((pair(&e["value"]) - expected).norm() < 1e-13, "a={a}");
    }
}

#[test]
fn gl2_trivial_datum_carries_only_the_normalization() {
    let r = json(&bkk(&["gamma", "--group", "gl2", "--q", "3", "--mode", "exact"]));
    assert_eq!(r["gamma"]["irreducibles"].as_array().unwrap().len(), 8);
    // over F_3 the trivial Gauss sum is ζ_3 + ζ_3² = −1, so γ₀ = (−(−1))² = 1
    let roots: Complex64 = (1..3)
        .map(|k| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 3.0))
        .sum();
    let gamma0 = (-roots) * (-roots);
    let trivial = &r["gamma"]["by_datum"][0];
    assert_eq!(trivial["datum"], "split(0,0)");
    assert!((pair(&trivial["value"]) - gamma0 / 81.0).norm() < 1e-14);
    let coeffs = trivial["exact"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0], "1/81");
    assert!(coeffs[1..].iter().all(|c| c == "0"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bkk(args).status.code();
    assert_eq!(code(&["verify", "eigen", "--group", "gl2", "--q", "3"]), Some(0));
    assert_eq!(code(&["calibrate", "--group", "gl2", "--q", "3", "--restrict-sign", "-1"]), Some(1));
    assert_eq!(code(&["gamma", "--group", "gl2", "--q", "5", "--weights", "1,0;x"]), Some(2));
    assert_eq!(code(&["gamma", "--group", "gl2"]), Some(2));
    assert_eq!(code(&["gamma", "--group", "e8", "--q", "5"]), Some(2));
    assert_eq!(code(&["gamma", "--group", "gl2", "--q", "6"]), Some(2));
    assert_eq!(code(&["gamma", "--group", "gl2", "--q", "5", "--psi", "5"]), Some(2));
    assert_eq!(code(&["gamma", "--group", "gl2", "--q", "5", "--weights", "1"]), Some(2));
    assert_eq!(code(&["verify", "eigen", "--group", "gl2", "--q", "5", "--chi", "1"]), Some(2));
    assert_eq!(code(&["verify", "vanishing", "--group", "gl2", "--q", "11", "--degree", "2"]), Some(3));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn budget_overrun_is_reported_as_skipped() {
    let out = bkk(&["verify", "vanishing", "--group", "gl2", "--q", "11", "--degree", "2"]);
    let r = json(&out);
    assert_eq!(r["status"], "skipped");
    assert_eq!(check(&r, "vanishing.off-borel")["status"], "pass");
    assert_eq!(check(&r, "vanishing.degree-2.off-borel")["status"], "skipped");
}

#[test]
fn sl2_quadratic_character_is_central_but_not_strongly_central() {
    let out = bkk(&["verify", "etheta", "--group", "sl2", "--q", "5", "--chi", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(check(&r, "etheta.central")["status"], "pass");
    let strong = check(&r, "etheta.strongly-central");
    assert_eq!(strong["status"], "fail");
    assert_eq!(strong["required"], false);
    let dim = check(&r, "etheta.dimension");
    assert_eq!(dim["detail"]["dim"], dim["detail"]["expected_dim"]);
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.lines().any(|l| l == "FAIL etheta.strongly-central (informational)"));
}

#[test]
fn negative_sign_calibration_finds_nothing() {
    let out = bkk(&["calibrate", "--group", "gl2", "--q", "5", "--restrict-sign", "-1"]);
    let r = json(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(check(&r, "calibration.nonempty")["status"], "fail");
    assert_eq!(r["calibration"]["trials"].as_array().unwrap().len(), 18);
}

#[test]
fn report_dir_receives_default_and_relative_names() {
    let dir = tempfile::tempdir().unwrap();
    let out = bkk_in(dir.path(), &["gamma", "--group", "gl2", "--q", "3", "--mode", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(dir.path().join("gamma-gl2-q3.json")).unwrap();
    assert_eq!(written, golden("gamma_gl2_q3_std_exact.json"));

    let out = bkk_in(
        dir.path(),
        &["verify", "packets", "--group", "gl2", "--q", "3", "--out", "nested/packets.json"],
    );
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("nested/packets.json")).unwrap()).unwrap();
    assert_eq!(r["command"], "verify packets");
}
