use std::process::{Command, Output};

use molien_core::polyrat::{ratfunc_from_json, ratfunc_to_json};

fn molien_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_molien"))
}

fn run(args: &[&str]) -> Output {
    molien_bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn json_round_trips() {
    for (class, target) in [
        ("molien", "cyclic_sl2:3"),
        ("hirzebruch", "s3_4dim"),
        ("crepant", "wreath_z2_s2"),
        ("csm", "binary_dihedral:5"),
    ] {
        let out = run(&["compute", class, "--catalog", target, "--format", "json"]);
        assert!(out.status.success(), "{} {} failed", class, target);
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
        assert_eq!(v["class"], class);
        assert!(v["fingerprint"]["order"].as_u64().unwrap() > 0);
        let rf = serde_json::json!({
            "vars": v["variables"],
            "num": v["numerator"],
            "den": v["denominator"],
        });
        let parsed = ratfunc_from_json(&rf).expect("parseable RatFunc");
        assert_eq!(ratfunc_to_json(&parsed).unwrap(), rf);
    }
}

#[test]
fn latex_matches_golden_files() {
    for (args, golden) in [
        (
            vec!["compute", "hirzebruch", "--catalog", "cyclic_sl2:5"],
            include_str!("golden/hirzebruch_cyclic_sl2_5.tex"),
        ),
        (
            vec!["compute", "crepant", "--catalog", "g32"],
            include_str!("golden/crepant_g32.tex"),
        ),
        (
            vec!["compute", "hirzebruch", "--catalog", "z5_nonreflect"],
            include_str!("golden/hirzebruch_z5_nonreflect.tex"),
        ),
    ] {
        let mut full = args.clone();
        full.extend(["--format", "latex"]);
        let out = run(&full);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden, "latex drift for {:?}", args);
    }
}

#[test]
fn identical_output_across_worker_counts() {
    let args = ["compute", "crepant", "--catalog", "g32", "--format", "json"];
    let run_with = |threads: &str| {
        let out = molien_bin()
            .args(args)
            .env("MOLIEN_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run_with("1"), run_with("3"));
}

#[test]
fn check_all_on_sl_group_exits_zero() {
    let out = run(&["check", "all", "--catalog", "z5_nonreflect"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("sl_duality: pass\n"));
    assert!(text.contains("symplectic_form: expected-fail (hypothesis not met)"));
}

#[test]
fn check_json_report_shape() {
    let out = run(&[
        "check",
        "duality",
        "--catalog",
        "cyclic_sl2:4",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["check"], "duality");
    assert_eq!(v[0]["pass"], true);
    assert_eq!(v[0]["hypothesis_held"], true);
}

#[test]
fn usage_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["compute", "hirzebruch", "--catalog", "nope"],
        vec!["compute", "hirzebruch", "--catalog", "cyclic_sl2:1"],
        vec!["check", "bogus", "--catalog", "g32"],
        vec!["compute", "duval", "--weights", "2,2"],
        vec!["compute", "hirzebruch"],
        vec![
            "compute",
            "crepant",
            "--catalog",
            "cyclic_diagonal:3,1,1", // determinant is not 1
        ],
    ];
    for args in cases {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {:?}", args);
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn malformed_json_reports_position() {
    let dir = std::env::temp_dir().join(format!("molien-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{\"conductor\": 4,\n  \"oops\"").unwrap();
    let out = run(&["compute", "molien", "--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("line"), "stderr: {}", err);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn catalog_show_round_trips_through_group_file() {
    let show = run(&["catalog", "show", "s3_4dim"]);
    assert!(show.status.success());
    let dir = std::env::temp_dir().join(format!("molien-cli-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    std::fs::write(&path, stdout(&show)).unwrap();

    let via_file = run(&[
        "compute",
        "hirzebruch",
        "--group",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let via_catalog = run(&[
        "compute",
        "hirzebruch",
        "--catalog",
        "s3_4dim",
        "--format",
        "json",
    ]);
    assert!(via_file.status.success());
    assert_eq!(via_file.stdout, via_catalog.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn catalog_list_names_every_entry() {
    let out = run(&["catalog", "list"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "cyclic_diagonal",
        "cyclic_sl2",
        "binary_dihedral",
        "binary_tetrahedral",
        "binary_octahedral",
        "binary_icosahedral",
        "g16",
        "g24",
        "g32",
        "g64",
        "bt_4dim",
        "wreath_z2_s2",
        "s3_4dim",
        "s4_6dim",
        "z5_nonreflect",
    ] {
        assert!(text.contains(name), "missing {}", name);
    }
}

#[test]
fn expand_crepant_constant_term_counts_classes() {
    // T^0 coefficient of the crepant class for the order-32 group evaluates
    // to the class count 17 at y = -1
    let out = run(&[
        "expand", "crepant", "--order", "0", "--catalog", "g32", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let coeff = &v["coefficients"][0];
    // terms are [[exponents...], [p, q]] over vars from the expansion
    let mut at_minus_one = 0i64;
    for term in coeff.as_array().unwrap() {
        let exps = term[0].as_array().unwrap();
        let p = term[1][0].as_i64().unwrap();
        let q = term[1][1].as_i64().unwrap();
        assert_eq!(q, 1);
        let ydeg: u64 = exps.iter().map(|e| e.as_u64().unwrap()).sum();
        at_minus_one += if ydeg % 2 == 0 { p } else { -p };
    }
    assert_eq!(at_minus_one, 17);
}
