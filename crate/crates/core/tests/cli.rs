use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use vcwb::enriched::{verify_vcategory, VCategory};
use vcwb::workbench::{cmd_classify, cmd_complete, CompleteOptions, RunReport, Source};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn vcwb(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vcwb"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("VCWB_THREADS", n),
        None => cmd.env_remove("VCWB_THREADS"),
    };
    cmd.output().expect("binary runs")
}

fn src(s: &str) -> Source {
    s.parse().unwrap()
}

/// The skeleton of super vector spaces on {1, Π}, written out by hand: hom
/// objects are `u*⊗w` and every composition and identity block is `[1]`.
fn svec_skeleton() -> Value {
    let one = json!({ "coeffs": { "0": "1" }, "m": 2 });
    let grades = |g: u32| json!({ "grades": [g] });
    let block = |g: u32| json!([{ "entries": [[0, 0, one]], "grade": g }]);
    let mut hom = Vec::new();
    let mut comp = Vec::new();
    for i in 0..2u32 {
        for j in 0..2u32 {
            hom.push(json!({ "from": i, "to": j, "object": grades(i ^ j) }));
            for k in 0..2u32 {
                comp.push(json!({ "a": i, "b": j, "c": k, "blocks": block(i ^ k) }));
            }
        }
    }
    json!({
        "base": { "chi": [[0, 0, 1]], "group": [2], "root_order": 2 },
        "objects": [{ "base": "*", "weight": grades(0) }, { "base": "*", "weight": grades(1) }],
        "hom": hom,
        "comp": comp,
        "ident": [{ "a": 0, "blocks": block(0) }, { "a": 1, "blocks": block(0) }],
    })
}

#[test]
fn triv_completion_matches_golden_and_hand_built_skeleton() {
    let g = golden("triv_completion.json");
    let out = vcwb(&["complete", "builtin:triv", "builtin:simples", "--golden", g.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let on_disk: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(on_disk, svec_skeleton());
    let table = VCategory::from_json(&on_disk).unwrap();
    assert!(verify_vcategory(&table).passed());
}

#[test]
fn library_call_reproduces_cli_verdicts() {
    let o = cmd_complete(&src("builtin:triv"), &src("builtin:simples"), CompleteOptions { monoidal: true, dim_cap: 16 }).unwrap();
    let text = o.output_text().unwrap();
    assert_eq!(text, std::fs::read_to_string(golden("triv_monoidal_completion.json")).unwrap());
    assert!(o.report.checks.iter().any(|c| c.law == "vmonoidal.braided_interchange"));

    let c = cmd_classify(&src("builtin:vhat-svec-1"), &src("builtin:canonical")).unwrap();
    assert_eq!(c.output_text().unwrap(), std::fs::read_to_string(golden("svec_classification.json")).unwrap());

    let out = vcwb(&["classify", "builtin:vhat-svec-1", "builtin:canonical", "--report", "json"], None);
    let cli = RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(cli, c.report);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"objects\": [").unwrap();
    assert_eq!(vcwb(&["validate", "vcat", bad.to_str().unwrap()], None).status.code(), Some(2));
    assert_eq!(vcwb(&["validate", "base", "builtin:nope"], None).status.code(), Some(2));
    assert_eq!(vcwb(&["validate", "base", "builtin:z4"], None).status.code(), Some(0));

    let gap = vcwb(&["complete", "builtin:triv", "builtin:dim-2", "--dim-cap", "1", "--report", "json"], None);
    assert_eq!(gap.status.code(), Some(1));
    let r = RunReport::from_json(&String::from_utf8(gap.stdout).unwrap()).unwrap();
    assert_eq!(r.checks[0].witness.as_ref().unwrap().tuple.len(), 3);

    let none = vcwb(&["search-tensoring", "builtin:triv"], None);
    assert_eq!(none.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&none.stdout).contains("not a proof"));
}

#[test]
fn broken_unit_law_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut doc = svec_skeleton();
    doc["ident"][1]["blocks"][0]["entries"][0][2] = json!({ "coeffs": { "0": "-1" }, "m": 2 });
    std::fs::write(&path, doc.to_string()).unwrap();
    let out = vcwb(&["validate", "vcat", path.to_str().unwrap(), "--report", "json"], None);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let r = RunReport::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.law.as_str()).collect();
    assert_eq!(failed, ["vcat.unit_left", "vcat.unit_right"]);
    assert!(r.checks[1].anchor.contains("j_a"));
}

#[test]
fn outputs_are_byte_identical_across_runs_and_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let runs: &[&[&str]] = &[
        &["validate", "base", "builtin:z4", "--report", "json"],
        &["complete", "builtin:vhat-svec-2", "builtin:simples", "--report", "json"],
        &["check-tensored", "builtin:vhat-svec-1", "builtin:canonical", "--monoidal", "--report", "json"],
        &["search-tensoring", "builtin:vhat-svec-2", "--seed", "3", "--report", "json"],
    ];
    for args in runs {
        let mut seen: Option<(Vec<u8>, Vec<u8>)> = None;
        for (k, threads) in [Some("1"), Some("4"), None].into_iter().enumerate() {
            let out_path = dir.path().join(format!("out{k}.json"));
            let mut full: Vec<&str> = args.to_vec();
            let produces = matches!(args[0], "complete" | "search-tensoring");
            if produces {
                full.extend(["--out", out_path.to_str().unwrap()]);
            }
            let out = vcwb(&full, threads);
            assert_eq!(out.status.code(), Some(0), "{args:?}");
            let file = if produces { std::fs::read(&out_path).unwrap() } else { Vec::new() };
            match &seen {
                None => seen = Some((out.stdout, file)),
                Some((s, f)) => {
                    assert_eq!(s, &out.stdout, "{args:?} stdout with {threads:?}");
                    assert_eq!(f, &file, "{args:?} output with {threads:?}");
                }
            }
        }
    }
}

#[test]
fn bless_rewrites_and_a_changed_golden_fails() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    let args = ["complete", "builtin:triv", "builtin:simples", "--golden", g.to_str().unwrap()];
    let mut bless = args.to_vec();
    bless.push("--bless");
    assert_eq!(vcwb(&bless, None).status.code(), Some(0));
    assert_eq!(vcwb(&args, None).status.code(), Some(0));
    std::fs::write(&g, "{}\n").unwrap();
    assert_eq!(vcwb(&args, None).status.code(), Some(1));
}
