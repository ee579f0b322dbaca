//! Black-box tests of the command-line interface: exit codes, oracle values,
//! deterministic output, and the emit/reload cycle.

use std::fs;
use std::path::PathBuf;
use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homlie"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("no signal"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("homlie_cli_{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn valid_builtins_pass_the_checkers() {
    for builtin in [
        "twisted-line",
        "tangent-line",
        "tangent-plane",
        "heisenberg",
        "aff2",
    ] {
        let (code, stdout, _) = run(&["check", "--builtin", builtin]);
        assert_eq!(code, 0, "{builtin} should verify cleanly:\n{stdout}");
        assert!(stdout.contains("result: PASS"), "{stdout}");
    }
}

#[test]
fn differential_values_match_hand_computation() {
    let cases = [
        (
            vec![
                "differential",
                "--builtin",
                "twisted-line",
                "--function",
                "x",
                "--args",
                "[e1]",
            ],
            "1",
        ),
        (
            vec![
                "differential",
                "--builtin",
                "twisted-line",
                "--function",
                "x",
                "--s",
                "1",
                "--args",
                "[e1]",
            ],
            "-1",
        ),
        (
            vec![
                "differential",
                "--builtin",
                "tangent-line",
                "--function",
                "x^3",
                "--args",
                "[e1]",
            ],
            "3*x^2",
        ),
    ];
    for (args, expected) in cases {
        let (code, stdout, stderr) = run(&args);
        assert_eq!(code, 0, "{stderr}");
        assert_eq!(stdout.trim(), expected);
    }
}

#[test]
fn malformed_inputs_exit_with_code_two() {
    let (code, _, stderr) = run(&[
        "differential",
        "--builtin",
        "twisted-line",
        "--function",
        "x^",
        "--args",
        "[e1]",
    ]);
    assert_eq!(code, 2, "{stderr}");
    assert!(stderr.starts_with("error:"), "{stderr}");

    let (code, _, _) = run(&["check", "--builtin", "no-such-structure"]);
    assert_eq!(code, 2);

    let (code, _, _) = run(&["check", "--input", "/nonexistent/path.json"]);
    assert_eq!(code, 2);

    // Shape selection is meaningless for a plain algebra input.
    let (code, _, _) = run(&["check", "--builtin", "heisenberg", "--variant", "B"]);
    assert_eq!(code, 2);
}

#[test]
fn degenerate_twist_data_is_rejected_not_crashed() {
    let path = scratch("singular_beta.json");
    fs::write(
        &path,
        r#"{
            "dim": 1,
            "c": [[["0"]]],
            "alpha": [["1"]],
            "dimV": 1,
            "rho": [[["0"]]],
            "beta": [["0"]]
        }"#,
    )
    .unwrap();
    let (code, _, stderr) = run(&["check", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{stderr}");
}

#[test]
fn broken_structures_fail_with_nonzero_exit() {
    let (code, stdout, _) = run(&[
        "proptest",
        "--builtin",
        "twisted-line",
        "--perturb",
        "bracket:1,1,1",
    ]);
    assert_eq!(code, 1);
    assert!(stdout.contains("FAIL"), "{stdout}");
}

#[test]
fn foreign_shape_conditions_fail_on_twisted_data() {
    let (code, stdout, _) = run(&["proptest", "--builtin", "twisted-line", "--variant", "B"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("condition_4"), "{stdout}");

    let (code, stdout, _) = run(&["proptest", "--builtin", "twisted-line"]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn json_output_is_deterministic() {
    let args = ["proptest", "--builtin", "twisted-line", "--emit", "json"];
    let (code_a, first, _) = run(&args);
    let (code_b, second, _) = run(&args);
    assert_eq!(code_a, 0);
    assert_eq!(code_b, 0);
    assert_eq!(first, second, "two runs must emit identical bytes");

    let parsed: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(parsed["summary"]["failed"], serde_json::json!(0));
}

#[test]
fn conversion_flips_the_stored_shape() {
    let (code, stdout, _) = run(&[
        "convert",
        "--builtin",
        "twisted-line",
        "--target",
        "B",
        "--emit",
        "json",
    ]);
    assert_eq!(code, 0, "{stdout}");
    let parsed: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let emitted = &parsed["emitted"];
    assert_eq!(emitted["variant"], serde_json::json!("B"));
    assert_eq!(emitted["anchor"][0][0], serde_json::json!("-1"));
}

#[test]
fn conversion_needs_an_invertible_constant_twist() {
    let path = scratch("nonunit_twist.json");
    fs::write(
        &path,
        r#"{
            "base": { "vars": ["x"], "phi": ["x"] },
            "rank": 1,
            "alpha": [["x"]],
            "anchor": [["0"]],
            "bracket": [[["0"]]],
            "variant": "A"
        }"#,
    )
    .unwrap();
    let (code, stdout, _) = run(&[
        "convert",
        "--input",
        path.to_str().unwrap(),
        "--target",
        "B",
    ]);
    assert_eq!(code, 1, "{stdout}");
}

#[test]
fn reconstruction_reproduces_the_input_and_reloads() {
    let out_path = scratch("rebuilt.json");
    let (code, stdout, _) = run(&[
        "reconstruct",
        "--builtin",
        "twisted-line",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("result: PASS"), "{stdout}");

    let emitted: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(emitted["variant"], serde_json::json!("A"));
    assert_eq!(emitted["anchor"][0][0], serde_json::json!("1"));
    assert_eq!(emitted["alpha"][0][0], serde_json::json!("-1"));

    let (code, stdout, _) = run(&["check", "--input", out_path.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
}

#[test]
fn reconstruction_under_the_foreign_recipe_is_refused() {
    let (code, stdout, _) = run(&["reconstruct", "--builtin", "twisted-line", "--variant", "B"]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("refus"), "{stdout}");
}
