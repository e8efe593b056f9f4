//! End-to-end tests of the `witt` binary: documented examples, exit
//! codes, and text/json agreement.

use serde_json::{json, Value};
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn witt(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_witt"));
    cmd.args(args);
    match stdin {
        Some(input) => {
            cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
            let mut child = cmd.spawn().expect("spawn witt");
            child
                .stdin
                .take()
                .expect("piped stdin")
                .write_all(input.as_bytes())
                .expect("write stdin");
            child.wait_with_output().expect("wait for witt")
        }
        None => cmd.output().expect("run witt"),
    }
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_str(&stdout_of(out)).expect("json stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn hirzebruch_even_json_cohomology() {
    let v = json_of(&witt(&["hirzebruch", "--n", "2", "--format", "json"], None));
    assert_eq!(v["cohomology"], json!([1, 2, 1]));
    assert_eq!(v["n"], json!(2));
    assert_eq!(v["labels"]["generators"], json!(["<1>", "<x>", "<y>", "<xy>"]));
    assert_eq!(v["d0"].as_array().unwrap().len(), 8);
    assert_eq!(v["d1"].as_array().unwrap().len(), 4);
    assert_eq!(v["snf"]["d0"]["d"]["rows"], json!(8));
}

#[test]
fn hirzebruch_odd_text_ends_with_h2_zero() {
    let text = stdout_of(&witt(&["hirzebruch", "--n", "3"], None));
    assert!(text.trim_end().ends_with("H^2 = 0"), "got:\n{text}");
}

#[test]
fn hirzebruch_sign_of_n_is_ignored() {
    for format in [&["hirzebruch", "--n", "-4"][..], &["hirzebruch", "--n", "-4", "--format", "json"][..]] {
        let mut positive = format.to_vec();
        positive[2] = "4";
        assert_eq!(
            stdout_of(&witt(format, None)),
            stdout_of(&witt(&positive, None))
        );
    }
}

#[test]
fn hirzebruch_text_and_json_agree_on_cohomology() {
    for n in ["0", "1", "2", "3"] {
        let v = json_of(&witt(&["hirzebruch", "--n", n, "--format", "json"], None));
        let text = stdout_of(&witt(&["hirzebruch", "--n", n], None));
        let h: Vec<usize> = (0..3)
            .map(|i| v["cohomology"][i].as_u64().unwrap() as usize)
            .collect();
        for (i, d) in h.iter().enumerate() {
            assert!(text.contains(&format!("H^{i} = {d}")), "mismatch at n={n}:\n{text}");
        }
    }
}

#[test]
fn classify_hyperbolic_plane_is_trivial() {
    let v = json_of(&witt(
        &["classify-q", "--format", "json"],
        Some(r#"{"field":"Q","gram":[[0,1],[1,0]]}"#),
    ));
    assert_eq!(v, json!({"signature": 0, "dyadic": 0, "residues": {}}));
}

#[test]
fn classify_three_has_residue_at_three() {
    let v = json_of(&witt(
        &["classify-q", "--format", "json"],
        Some(r#"{"field":"Q","diag":[3]}"#),
    ));
    assert_eq!(v["signature"], json!(1));
    assert_eq!(v["residues"]["3"]["kind"], json!("cyclic"));
    assert_eq!(v["residues"]["3"]["value"], json!(1));
}

#[test]
fn classify_unit_cube_form() {
    let v = json_of(&witt(
        &["classify-q", "--format", "json"],
        Some(r#"{"field":"Q","diag":[1,1,1]}"#),
    ));
    assert_eq!(v["signature"], json!(3));
    assert_eq!(v["residues"], json!({}));
}

#[test]
fn classify_text_and_json_agree() {
    let input = r#"{"field":"Q","diag":[3,5,-7]}"#;
    let v = json_of(&witt(&["classify-q", "--format", "json"], Some(input)));
    let text = stdout_of(&witt(&["classify-q"], Some(input)));
    assert!(text.contains(&format!("signature = {}", v["signature"])));
    assert!(text.contains(&format!("dyadic = {}", v["dyadic"])));
    for p in v["residues"].as_object().unwrap().keys() {
        assert!(text.contains(&format!("{p}: ")), "missing residue {p} in:\n{text}");
    }
}

#[test]
fn classify_rejects_garbage_and_singular() {
    assert_eq!(exit_code(&witt(&["classify-q"], Some("not json"))), 2);
    assert_eq!(
        exit_code(&witt(&["classify-q"], Some(r#"{"field":"Q","diag":[0]}"#))),
        3
    );
    assert_eq!(
        exit_code(&witt(&["classify-q"], Some(r#"{"field":"Q","gram":[[1,0],[0,0]]}"#))),
        3
    );
    assert_eq!(
        exit_code(&witt(&["classify-q"], Some(r#"{"field":{"Fp":5},"diag":[1]}"#))),
        2
    );
}

#[test]
fn classify_accepts_the_zero_form() {
    let v = json_of(&witt(
        &["classify-q", "--format", "json"],
        Some(r#"{"field":"Q","diag":[]}"#),
    ));
    assert_eq!(v, json!({"signature": 0, "dyadic": 0, "residues": {}}));
}

#[test]
fn fp_structure_follows_p_mod_4() {
    let v5 = json_of(&witt(&["fp-structure", "--p", "5", "--format", "json"], None));
    assert_eq!(v5["structure"], json!("klein"));
    let v7 = json_of(&witt(&["fp-structure", "--p", "7", "--format", "json"], None));
    assert_eq!(v7["structure"], json!("cyclic"));
    let text = stdout_of(&witt(&["fp-structure", "--p", "13"], None));
    assert!(text.contains("Klein"));
    assert_eq!(exit_code(&witt(&["fp-structure", "--p", "9"], None)), 2);
    assert_eq!(exit_code(&witt(&["fp-structure", "--p", "2"], None)), 2);
}

#[test]
fn residue_of_uniformizer_is_unit_class() {
    let v = json_of(&witt(
        &["residue", "--p", "5", "--i", "2", "--format", "json"],
        Some(r#"{"field":"Q","diag":[5]}"#),
    ));
    assert_eq!(v, json!({"p": 5, "kind": "klein", "value": [1, 0]}));
    let unit = json_of(&witt(
        &["residue", "--p", "5", "--i", "2", "--format", "json"],
        Some(r#"{"field":"Q","diag":[2]}"#),
    ));
    assert_eq!(unit["value"], json!([0, 0]));
}

#[test]
fn residue_first_and_second_split_by_valuation() {
    let form = r#"{"field":"Q","diag":[7]}"#;
    let first = json_of(&witt(&["residue", "--p", "7", "--i", "1", "--format", "json"], Some(form)));
    let second = json_of(&witt(&["residue", "--p", "7", "--i", "2", "--format", "json"], Some(form)));
    assert_eq!(first["value"], json!(0));
    assert_eq!(second["value"], json!(1));
    assert_eq!(exit_code(&witt(&["residue", "--p", "7", "--i", "3"], Some(form))), 2);
}

#[test]
fn snf_hand_reduction() {
    let v = json_of(&witt(&["snf", "--format", "json"], Some("[[2,4],[6,8]]")));
    assert_eq!(v["d"]["entries"], json!([[2, 0], [0, 4]]));
    let text = stdout_of(&witt(&["snf"], Some("[[2,4],[6,8]]")));
    assert!(text.starts_with("D = diag(2, 4)"), "got:\n{text}");
}

#[test]
fn snf_identity_and_sign_normalization() {
    let id = json_of(&witt(&["snf", "--format", "json"], Some("[[1,0],[0,1]]")));
    assert_eq!(id["d"]["entries"], json!([[1, 0], [0, 1]]));
    let neg = json_of(&witt(&["snf", "--format", "json"], Some("[[-6]]")));
    assert_eq!(neg["d"]["entries"], json!([[6]]));
}

#[test]
fn snf_output_satisfies_d_equals_uav() {
    let a = [[2i64, 1, 0], [3, 0, 5]];
    let v = json_of(&witt(&["snf", "--format", "json"], Some("[[2,1,0],[3,0,5]]")));
    let get = |m: &Value, i: usize, j: usize| m["entries"][i][j].as_i64().unwrap();
    for i in 0..2 {
        for j in 0..3 {
            let mut sum = 0;
            for (k, row) in a.iter().enumerate() {
                for (l, &akl) in row.iter().enumerate() {
                    sum += get(&v["u"], i, k) * akl * get(&v["v"], l, j);
                }
            }
            assert_eq!(sum, get(&v["d"], i, j), "entry ({i},{j})");
        }
    }
}

#[test]
fn snf_rejects_ragged_input() {
    assert_eq!(exit_code(&witt(&["snf"], Some("[[1,2],[3]]"))), 2);
}

#[test]
fn complex_cohomology_of_assembled_surface_complex() {
    let gw = json_of(&witt(&["hirzebruch", "--n", "2", "--format", "json"], None));
    let complex = json!({"dims": [4, 8, 4], "differentials": [gw["d0"], gw["d1"]]});
    let v = json_of(&witt(
        &["complex-cohomology", "--format", "json"],
        Some(&complex.to_string()),
    ));
    assert_eq!(v, json!({"cohomology": [1, 2, 1]}));
}

#[test]
fn complex_cohomology_rejects_non_complex() {
    let bad = r#"{"dims":[1,1,1],"differentials":[[[1]],[[1]]]}"#;
    assert_eq!(exit_code(&witt(&["complex-cohomology"], Some(bad))), 3);
}

#[test]
fn lift_then_classify_round_trips() {
    let target = json!({
        "signature": -3,
        "dyadic": 1,
        "residues": {
            "5": {"p": 5, "kind": "klein", "value": [1, 1]},
            "7": {"p": 7, "kind": "cyclic", "value": 3},
        },
    });
    let form = stdout_of(&witt(
        &["lift", "--spec", "-", "--format", "json"],
        Some(&target.to_string()),
    ));
    let v = json_of(&witt(&["classify-q", "--format", "json"], Some(&form)));
    assert_eq!(v, target);
}

#[test]
fn lift_text_lists_diagonal_entries() {
    let text = stdout_of(&witt(
        &["lift", "--spec", "-"],
        Some(r#"{"signature":1,"dyadic":0,"residues":{}}"#),
    ));
    assert!(text.starts_with("diag("), "got: {text}");
}

#[test]
fn reads_forms_from_files_too() {
    let dir = std::env::temp_dir().join("witt-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("form.json");
    std::fs::write(&path, r#"{"field":"Q","diag":[1,-1]}"#).unwrap();
    let v = json_of(&witt(&["classify-q", "--format", "json", path.to_str().unwrap()], None));
    assert_eq!(v["signature"], json!(0));
    assert_eq!(exit_code(&witt(&["classify-q", "/nonexistent/nope.json"], None)), 2);
}
