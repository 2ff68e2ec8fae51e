//! Acceptance checks. Runs as a plain binary so that each criterion prints one
//! PASS or FAIL line; exits non-zero if any fails.

use pseudolinear::cli::run_with;
use pseudolinear::corpus::{generate, CorpusParams, Instance, DEFAULT_SEED};
use pseudolinear::extension::{extend_to_arrangement, verify_arrangement, ExtendOptions, StepKind};
use pseudolinear::forbidden::{extract_forbidden, recheck_standalone};
use pseudolinear::ids::PointId;
use pseudolinear::ingest::fixtures::all_fixtures;
use pseudolinear::ingest::{load_drawing, serialize_drawing, Loaded};
use pseudolinear::kn::{crosscheck_b_configuration, good_drawing_violations, validate_good_drawing};
use pseudolinear::obstruction::{
    brute_force_avoiding, brute_force_obstruction, canonical_curve, find_obstruction, for_each_obstruction,
    SearchOptions,
};
use pseudolinear::stringset::StringSet;
use serde_json::Value;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

const CORPUS_SIZE: usize = 300;

fn corpus() -> Vec<Instance> {
    generate(DEFAULT_SEED, CORPUS_SIZE, CorpusParams::default())
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn scratch() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pseudolinear-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["pseudolinear"];
    argv.extend_from_slice(args);
    (run_with(argv, &mut out, &mut err), out)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `check` on the named fixtures and on every forest-shaped corpus instance.
fn criterion_1() -> Outcome {
    let dir = scratch();
    let mut runs: Vec<(String, PathBuf, i32)> = Vec::new();
    for name in ["FIX_B", "FIX_W", "FIX_TRI", "FIX_K4X_OUT"] {
        runs.push((name.into(), fixture_dir().join(format!("{name}.json")), 10));
    }
    for name in ["FIX_X", "FIX_PAR", "FIX_K4X_IN"] {
        runs.push((name.into(), fixture_dir().join(format!("{name}.json")), 0));
    }
    let mut forests = 0;
    for inst in corpus() {
        let der = inst.sigma.derived().unwrap();
        if der.map.cycle_rank() == 0 && forests < 40 {
            let p = dir.join(format!("forest_{}.json", inst.index));
            std::fs::write(&p, serialize_drawing(&inst.doc())).unwrap();
            runs.push((format!("forest #{}", inst.index), p, 0));
            forests += 1;
        }
    }
    ensure(forests >= 10, || format!("only {forests} forest-shaped instances"))?;
    let mut slowest = Duration::ZERO;
    for (name, path, want) in &runs {
        let t = Instant::now();
        let (code, out) = cli(&["check", path.to_str().unwrap()]);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        ensure(code == *want, || format!("{name}: exit {code}, expected {want}"))?;
        ensure(dt < Duration::from_secs(1), || format!("{name}: took {dt:?}"))?;
        if code == 10 {
            let v: Value = serde_json::from_slice(&out).unwrap();
            let r = v["rainbows"].as_array().unwrap().len();
            ensure(r <= 2, || format!("{name}: {r} rainbows"))?;
        }
    }
    Ok(format!("{} runs ({forests} forests), slowest {slowest:?}", runs.len()))
}

/// The peeling search agrees with exhaustive search on the random corpus.
fn criterion_2() -> Outcome {
    let t = Instant::now();
    let insts = corpus();
    let mut found = 0;
    for inst in &insts {
        let fast = find_obstruction(&inst.sigma).map_err(|e| format!("#{}: {e}", inst.index))?;
        let slow = brute_force_obstruction(&inst.sigma, 16).map_err(|e| format!("#{}: {e}", inst.index))?;
        ensure(fast.is_some() == slow.is_some(), || {
            format!(
                "#{}: search {} but exhaustive {}",
                inst.index,
                fast.is_some(),
                slow.is_some()
            )
        })?;
        found += slow.is_some() as usize;
    }
    let dt = t.elapsed();
    ensure(dt < Duration::from_secs(60), || format!("took {dt:?}"))?;
    Ok(format!(
        "{} instances, {found} with obstruction, 100% agreement in {dt:?}",
        insts.len()
    ))
}

/// Extension of every obstruction-free instance: verified output, oracle-clean
/// intermediate states (criterion 3), monotone pair count within budget (criterion 4).
fn criteria_3_4() -> (Outcome, Outcome) {
    let t = Instant::now();
    let mut extended = 0;
    let mut states = 0;
    let mut non_increasing = 0;
    let mut max_steps = 0;
    let mut c3: Result<(), String> = Ok(());
    let mut c4: Result<(), String> = Ok(());
    for inst in corpus() {
        if brute_force_obstruction(&inst.sigma, 16).unwrap().is_some() {
            continue;
        }
        let opts = ExtendOptions {
            keep_states: true,
            ..Default::default()
        };
        let (arr, trace) = match extend_to_arrangement(&inst.sigma, opts) {
            Ok(x) => x,
            Err(e) => {
                c3 = c3.and(Err(format!("#{}: {e}", inst.index)));
                continue;
            }
        };
        extended += 1;
        let problems = verify_arrangement(&arr, Some(&inst.sigma));
        if !problems.is_empty() {
            c3 = c3.and(Err(format!("#{}: {}", inst.index, problems.join("; "))));
        }
        for (i, st) in trace.states.iter().enumerate() {
            states += 1;
            match brute_force_obstruction(st, 1000) {
                Ok(None) => {}
                Ok(Some(r)) => c3 = c3.and(Err(format!("#{} state {i}: obstruction {:?}", inst.index, r.cycle))),
                Err(e) => c3 = c3.and(Err(format!("#{} state {i}: {e}", inst.index))),
            }
        }
        for s in &trace.steps {
            if s.pairs_after < s.pairs_before {
                c4 = c4.and(Err(format!("#{}: pair count fell at {}", inst.index, s.at)));
            }
            if s.kind == StepKind::ExteriorMeeting && s.pairs_after <= s.pairs_before {
                c4 = c4.and(Err(format!(
                    "#{}: exterior meeting at {} added no pair",
                    inst.index, s.at
                )));
            }
        }
        if trace.counted_steps() > trace.budget {
            c4 = c4.and(Err(format!(
                "#{}: {} steps over budget {}",
                inst.index,
                trace.counted_steps(),
                trace.budget
            )));
        }
        non_increasing += trace.non_increasing.len();
        max_steps = max_steps.max(trace.counted_steps());
    }
    let dt = t.elapsed();
    if dt > Duration::from_secs(300) {
        c3 = c3.and(Err(format!("took {dt:?}")));
    }
    (
        c3.map(|_| format!("{extended} extended and verified, {states} states oracle-clean, {dt:?}")),
        c4.map(|_| format!("max {max_steps} steps, {non_increasing} non-increasing steps logged")),
    )
}

/// Every obstruction curve of `Σ`, optionally avoiding `x`, in canonical form.
fn obstruction_curves(sigma: &StringSet, avoid: Option<PointId>) -> BTreeSet<Vec<PointId>> {
    let der = sigma.derived().unwrap();
    let av = avoid.map(|p| der.vertex(p).unwrap());
    let mut out = BTreeSet::new();
    for_each_obstruction(&der, av, |darts, _| {
        let c = der.map.cycle_interior(darts).unwrap();
        out.insert(canonical_curve(&der.cycle_curve(&c)));
        Some(u32::MAX)
    });
    out
}

/// Obstructions avoiding an outer vertex `x` are those of `Σ − x`.
fn criterion_5() -> Outcome {
    let mut instances = 0;
    let mut pairs = 0;
    for inst in corpus().into_iter().take(120) {
        let sigma = &inst.sigma;
        let der = sigma.derived().unwrap();
        let outer: Vec<PointId> = der
            .map
            .vertices()
            .filter(|&v| der.map.is_outer_vertex(v))
            .map(|v| der.point(v))
            .collect();
        instances += 1;
        for x in outer {
            let minus = sigma.remove_vertex(x).map_err(|e| format!("#{}: {e}", inst.index))?;
            let a = brute_force_avoiding(sigma, x, 16).unwrap();
            let b = brute_force_obstruction(&minus, 16).unwrap();
            let label = sigma.point_label(x);
            ensure(a.is_some() == b.is_some(), || {
                format!(
                    "#{} x={label}: avoiding {} but removed {}",
                    inst.index,
                    a.is_some(),
                    b.is_some()
                )
            })?;
            let ca = obstruction_curves(sigma, Some(x));
            let cb = obstruction_curves(&minus, None);
            if let Some(r) = &a {
                ensure(cb.contains(&canonical_curve(&curve_points(sigma, &r.curve))), || {
                    format!(
                        "#{} x={label}: witness avoiding x is not an obstruction of the removal",
                        inst.index
                    )
                })?;
            }
            if let Some(r) = &b {
                ensure(ca.contains(&canonical_curve(&curve_points(&minus, &r.curve))), || {
                    format!(
                        "#{} x={label}: witness of the removal is not an obstruction avoiding x",
                        inst.index
                    )
                })?;
            }
            pairs += 1;
        }
    }
    ensure(instances >= 100, || format!("only {instances} instances"))?;
    Ok(format!("{instances} instances, {pairs} outer vertices, 100% agreement"))
}

fn curve_points(sigma: &StringSet, labels: &[String]) -> Vec<PointId> {
    labels.iter().map(|l| sigma.find_point(l).unwrap()).collect()
}

fn good_drawings() -> Vec<(String, Loaded)> {
    all_fixtures()
        .into_iter()
        .filter_map(|(name, doc)| {
            let loaded = load_drawing(&doc).ok()?;
            let vs = loaded.graph_vertices.clone()?;
            good_drawing_violations(&loaded.sigma, &vs)
                .is_empty()
                .then_some((name, loaded))
        })
        .collect()
}

/// B configurations exactly when there is an obstruction, on good K4 and K5 drawings.
fn criterion_6() -> Outcome {
    let mut with_b = 0;
    let mut names = BTreeSet::new();
    let drawings = good_drawings();
    for (name, loaded) in &drawings {
        let gd = validate_good_drawing(&loaded.sigma, loaded.graph_vertices.as_ref().unwrap())
            .map_err(|e| format!("{name}: {e}"))?;
        let cc = crosscheck_b_configuration(&gd, SearchOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let oracle = brute_force_obstruction(&loaded.sigma, 64).unwrap().is_some();
        ensure(cc.b.is_some() == oracle, || {
            format!("{name}: B {} but exhaustive {oracle}", cc.b.is_some())
        })?;
        with_b += cc.b.is_some() as usize;
        names.insert(name.clone());
    }
    ensure(drawings.len() >= 12, || {
        format!("only {} good drawings", drawings.len())
    })?;
    ensure(names.contains("FIX_K4X_OUT") && names.contains("FIX_K4X_IN"), || {
        "K4 fixtures missing".into()
    })?;
    Ok(format!(
        "{} good drawings, {with_b} with B, no disagreement",
        drawings.len()
    ))
}

/// Forbidden configurations of non-pseudolinear good drawings.
fn criterion_7() -> Outcome {
    let mut n = 0;
    for (name, loaded) in good_drawings() {
        if brute_force_obstruction(&loaded.sigma, 64).unwrap().is_none() {
            continue;
        }
        let cfg = extract_forbidden(&loaded.sigma, 64).map_err(|e| format!("{name}: {e}"))?;
        ensure(cfg.rainbows <= 2, || format!("{name}: {} rainbows", cfg.rainbows))?;
        ensure(recheck_standalone(&cfg).map_err(|e| format!("{name}: {e}"))?, || {
            format!("{name}: standalone cycle is not an obstruction")
        })?;
        n += 1;
    }
    ensure(n > 0, || "no non-pseudolinear good drawing".into())?;
    Ok(format!(
        "{n} configurations, all with r <= 2 and standalone obstructions"
    ))
}

/// Runs the binary and collects stdout plus any written files.
fn binary_run(args: &[String], files: &[PathBuf]) -> (Option<i32>, Vec<u8>, Vec<Vec<u8>>) {
    for f in files {
        let _ = std::fs::remove_file(f);
    }
    let out = Command::new(env!("CARGO_BIN_EXE_pseudolinear"))
        .args(args)
        .output()
        .unwrap();
    let written = files.iter().map(|f| std::fs::read(f).unwrap_or_default()).collect();
    (out.status.code(), out.stdout, written)
}

/// Every subcommand, run twice as separate processes, gives identical bytes.
fn criterion_8() -> Outcome {
    let dir = scratch();
    let svg = dir.join("out.svg");
    let json = dir.join("out.json");
    let s = |p: &Path| p.to_string_lossy().into_owned();
    let mut runs = 0;
    let mut cases: Vec<Vec<String>> = vec![vec![
        "corpus".into(),
        "--seed".into(),
        "11".into(),
        "--count".into(),
        "20".into(),
    ]];
    for (name, _) in all_fixtures() {
        let f = s(&fixture_dir().join(format!("{name}.json")));
        cases.push(vec!["validate".into(), "--good".into(), f.clone()]);
        cases.push(vec![
            "check".into(),
            "--trace".into(),
            f.clone(),
            "--svg".into(),
            s(&svg),
        ]);
        cases.push(vec![
            "check".into(),
            "--oracle".into(),
            "--cap".into(),
            "64".into(),
            f.clone(),
        ]);
        cases.push(vec![
            "extend".into(),
            "--trace".into(),
            f.clone(),
            "-o".into(),
            s(&json),
            "--svg".into(),
            s(&svg),
        ]);
        cases.push(vec!["kn-b".into(), f.clone()]);
        cases.push(vec![
            "extract-forbidden".into(),
            "--cap".into(),
            "64".into(),
            f.clone(),
            "--svg".into(),
            s(&svg),
        ]);
        cases.push(vec!["render".into(), "--highlight".into(), f.clone()]);
    }
    let files = [svg.clone(), json.clone()];
    for args in &cases {
        let a = binary_run(args, &files);
        let b = binary_run(args, &files);
        ensure(a == b, || format!("output differs for `{}`", args.join(" ")))?;
        runs += 1;
    }
    Ok(format!("{runs} invocations byte-identical across two processes"))
}

fn main() {
    // Behave like a test binary under `cargo test -- --list` and friends.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut failed = 0;
    let mut report = |n: &str, what: &str, o: Outcome| match o {
        Ok(msg) => println!("PASS criterion {n} ({what}): {msg}"),
        Err(msg) => {
            failed += 1;
            println!("FAIL criterion {n} ({what}): {msg}");
        }
    };
    report("1", "fixture truths", criterion_1());
    report("2", "search agrees with exhaustive search", criterion_2());
    let (c3, c4) = criteria_3_4();
    report("3", "extension soundness", c3);
    report("4", "extension monotonicity and budget", c4);
    report("5", "outer-vertex removal correspondence", criterion_5());
    report("6", "B configuration iff obstruction", criterion_6());
    report("7", "forbidden configuration extraction", criterion_7());
    report("8", "determinism", criterion_8());
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
