use std::fs;
use std::process::{Command, Output};

fn dendrite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dendrite"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn census_counts() {
    let out = dendrite(&["census", "--signature", "3", "--arity", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("S={3} p=2 all: 12 types\n"));

    let out = dendrite(&["census", "--signature", "3,inf", "--arity", "1", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["count"], 4);
    assert_eq!(json["types"].as_array().unwrap().len(), 4);

    let out = dendrite(&["census", "--signature", "3", "--arity", "3", "--distinct"]);
    assert!(stdout(&out).ends_with("81 types\n"));
}

#[test]
fn census_rejects_bad_input() {
    assert_eq!(
        dendrite(&["census", "--signature", "3", "--arity", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dendrite(&["census", "--signature", "", "--arity", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        dendrite(&["census", "--signature", "2", "--arity", "1"]).status.code(),
        Some(2)
    );
}

#[test]
fn grow_is_reproducible_and_valid() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = dendrite(&[
            "grow",
            "--signature",
            "3",
            "--steps",
            "100",
            "--seed",
            "5",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let model = dendrite::dendrite_model::DendriteModel::from_json(&text).unwrap();
    model.check_invariants().unwrap();
    assert_eq!(model.log().len(), 100);

    let fresh = stdout(&dendrite(&["grow", "--signature", "3"]));
    assert_eq!(fresh, "{\"signature\":[3],\"seed\":0,\"log\":[]}\n");
}

#[test]
fn seed_defaults_from_the_environment() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_dendrite"))
            .args(["grow", "--signature", "3", "--steps", "3"])
            .env("DENDRITE_SEED", seed)
            .output()
            .unwrap()
            .stdout
    };
    let explicit = dendrite(&["grow", "--signature", "3", "--steps", "3", "--seed", "9"]).stdout;
    assert_eq!(run("9"), explicit);
}

#[test]
fn grow_reports_io_failures() {
    let out = dendrite(&["grow", "--signature", "3", "--out", "/nonexistent/dir/model.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn complete_posets() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p.to_str().unwrap().to_string()
    };
    let vee = write("vee.json", r#"{"elements":[1,2,3],"leq":[[1,2],[1,3]]}"#);
    let out = dendrite(&["complete", &vee]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["chains"], serde_json::json!([[1], [1, 2], [1, 3]]));
    assert_eq!(json["embedding"]["3"], 2);

    let single = write("one.json", r#"{"elements":[4],"leq":[]}"#);
    let json: serde_json::Value = serde_json::from_slice(&dendrite(&["complete", &single]).stdout).unwrap();
    assert_eq!(json["chains"], serde_json::json!([[4]]));

    let split = write("split.json", r#"{"elements":[1,2],"leq":[]}"#);
    let out = dendrite(&["complete", &split]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no common lower bound"));

    assert_eq!(dendrite(&["complete", "/nonexistent.json"]).status.code(), Some(3));
}

#[test]
fn check_suites() {
    let out = dendrite(&["check", "--suite", "order", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["suites"][0]["suite"], "order");
    assert_eq!(dendrite(&["check", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn export_dot_for_models_and_trees() {
    let dir = tempfile::tempdir().unwrap();
    let model = dir.path().join("m.json");
    fs::write(&model, stdout(&dendrite(&["grow", "--signature", "3"]))).unwrap();
    let dot = stdout(&dendrite(&["export-dot", model.to_str().unwrap()]));
    assert!(dot.starts_with("graph "));
    assert_eq!(dot.matches("[label=").count(), 4);
    assert_eq!(dot.matches(" -- ").count(), 3);
    assert_eq!(dot, stdout(&dendrite(&["export-dot", model.to_str().unwrap()])));

    let tree = dir.path().join("t.json");
    fs::write(
        &tree,
        r#"{"vertices":[{"id":0,"label":1},{"id":1,"label":2}],"edges":[[0,1]],"marks":[1,0]}"#,
    )
    .unwrap();
    let dot = stdout(&dendrite(&["export-dot", tree.to_str().unwrap()]));
    assert!(dot.contains("(#1)"), "{dot}");
    assert!(dot.contains("(#0)"));

    assert_eq!(dendrite(&["export-dot", "/nonexistent.json"]).status.code(), Some(3));
}
