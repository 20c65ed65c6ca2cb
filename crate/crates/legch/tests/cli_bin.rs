//! End-to-end checks of the `legch` binary: exit codes, report content, and
//! the augmentation-cap environment variable.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_legch"))
}

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn missing_input_exits_2() {
    let out = bin().args(["dga", "missing.front"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn augs_lists_five_trefoil_augmentations() {
    let out = bin()
        .args(["augs", &corpus("trefoil.front")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("augmentations: 5"), "{text}");
}

#[test]
fn seidel_example_passes() {
    let out = bin()
        .args([
            "seidel",
            &corpus("trefoil.front"),
            "--aug",
            "4",
            "--betti-l",
            "0:1,1:2",
            "--n",
            "1",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn wrapped_nonacyclic_exits_1() {
    let path = std::env::temp_dir().join("legch_split_wrapped.blocks");
    std::fs::write(&path, "space zero 0 1\nspace inf 0 1\n").unwrap();
    let out = bin()
        .args(["wrapped", "--blocks", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&path).ok();
}

#[test]
fn aug_cap_env_var_is_honored() {
    let out = bin()
        .args(["augs", &corpus("trefoil.front")])
        .env("LEGCH_MAX_AUG_GENS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("too many grading-0 generators"), "{text}");
}

#[test]
fn json_output_parses() {
    let out = bin()
        .args(["dga", &corpus("unknot.front"), "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["generators"][0]["name"], "a1");
    assert_eq!(v["classical"][0]["tb"], -1);
}
