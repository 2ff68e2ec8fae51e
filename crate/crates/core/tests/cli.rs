use pseudolinear::cli::run_with;
use pseudolinear::ingest::fixtures::all_fixtures;
use pseudolinear::ingest::serialize_drawing;
use serde_json::Value;
use std::path::PathBuf;

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture_path(name: &str) -> String {
    fixture_dir()
        .join(format!("{name}.json"))
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, Vec<u8>, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["pseudolinear"];
    argv.extend_from_slice(args);
    let code = run_with(argv, &mut out, &mut err);
    (code, out, String::from_utf8(err).unwrap())
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pseudolinear-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// The shipped fixture files match the built-in catalogue. Set
/// `UPDATE_FIXTURES=1` to rewrite them.
#[test]
fn shipped_fixtures_in_sync() {
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for (name, doc) in all_fixtures() {
        let path = fixture_dir().join(format!("{name}.json"));
        let bytes = serialize_drawing(&doc);
        if update {
            std::fs::create_dir_all(fixture_dir()).unwrap();
            std::fs::write(&path, &bytes).unwrap();
        }
        let on_disk = std::fs::read(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert!(on_disk == bytes, "{name} differs from the catalogue");
    }
}

#[test]
fn check_exit_codes() {
    let (code, out, _) = run(&["check", &fixture_path("FIX_B")]);
    assert_eq!(code, 10);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["rainbows"].as_array().unwrap().len(), 2);
    assert_eq!(run(&["check", &fixture_path("FIX_X")]).0, 0);
    assert_eq!(run(&["check", "--oracle", &fixture_path("FIX_W")]).0, 10);
}

#[test]
fn extend_par_writes_one_crossing() {
    let out = tmp("arr.json");
    let (code, _, err) = run(&["extend", &fixture_path("FIX_PAR"), "-o", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let wiring = v["wiring"].as_array().unwrap();
    assert_eq!(wiring.len(), 2);
    for w in wiring {
        assert_eq!(w["crossings"].as_array().unwrap().len(), 1);
    }
    // The arrangement renders as a wiring diagram.
    let svg = tmp("arr.svg");
    assert_eq!(
        run(&["render", out.to_str().unwrap(), "--svg", svg.to_str().unwrap()]).0,
        0
    );
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("stroke-dasharray").count(), 4);
}

#[test]
fn extend_refuses_obstructed_input() {
    assert_eq!(run(&["extend", &fixture_path("FIX_B")]).0, 10);
}

#[test]
fn invalid_inputs_exit_2() {
    let bad = tmp("bad.json");
    std::fs::write(
        &bad,
        br#"{"format":"pseudolinear-drawing","version":9,"mode":"geometric","polylines":[]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("/version"), "{err}");
    let overlap = tmp("overlap.json");
    std::fs::write(
        &overlap,
        br#"{"format":"pseudolinear-drawing","version":1,"mode":"geometric","polylines":[
            {"id":"a","points":[[0,0],[4,0]]},{"id":"b","points":[[2,0],[6,0]]}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["validate", overlap.to_str().unwrap()]).0, 2);
    assert_eq!(run(&["check", "--cap", "2", &fixture_path("FIX_X")]).0, 2);
    assert_eq!(run(&["check", "missing-file.json"]).0, 2);
}

#[test]
fn oracle_cap_exceeded_exits_4() {
    assert_eq!(
        run(&["check", "--oracle", "--cap", "3", &fixture_path("FIX_K5_01")]).0,
        4
    );
}

#[test]
fn kn_b_and_forbidden() {
    let (code, out, _) = run(&["kn-b", &fixture_path("FIX_K4X_OUT")]);
    assert_eq!(code, 10);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert!(v["b_configuration"].is_object());
    assert_eq!(run(&["kn-b", &fixture_path("FIX_K4X_IN")]).0, 0);
    // Not a complete graph.
    assert_eq!(run(&["kn-b", &fixture_path("FIX_W")]).0, 2);

    let (code, out, _) = run(&["extract-forbidden", &fixture_path("FIX_K4X_OUT")]);
    assert_eq!(code, 10);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert!(v["rainbows"].as_u64().unwrap() <= 2);
    assert_eq!(run(&["extract-forbidden", &fixture_path("FIX_X")]).0, 0);
}

#[test]
fn validate_good_drawings() {
    let (code, out, _) = run(&["validate", &fixture_path("FIX_K5_03")]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["good_drawing"], Value::Bool(true));
}

#[test]
fn corpus_is_seeded() {
    let a = run(&["corpus", "--seed", "7", "--count", "5"]).1;
    let b = run(&["corpus", "--seed", "7", "--count", "5"]).1;
    let c = run(&["corpus", "--seed", "8", "--count", "5"]).1;
    assert_eq!(a, b);
    assert_ne!(a, c);
    let v: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["instances"].as_array().unwrap().len(), 5);
}

/// The FIX_B picture, highlight included, matches the stored file.
#[test]
fn fix_b_render_matches_golden() {
    let golden = fixture_dir().join("FIX_B.svg");
    let (code, out, _) = run(&["render", "--highlight", &fixture_path("FIX_B")]);
    assert_eq!(code, 0);
    if std::env::var_os("UPDATE_FIXTURES").is_some() {
        std::fs::write(&golden, &out).unwrap();
    }
    assert!(std::fs::read(&golden).unwrap() == out, "FIX_B.svg differs");
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("#d62728"));
}
