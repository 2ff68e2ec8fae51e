//! Command-line front end.
//!
//! Exit codes: 0 ok or pseudolinear, 10 obstruction found, 2 invalid input,
//! 3 internal inconsistency, 4 cap exceeded.

use crate::corpus::{self, CorpusParams};
use crate::error::Error;
use crate::extension::{extend_to_arrangement, verify_arrangement, ExtendOptions, PseudolineArrangement};
use crate::forbidden::{extract_forbidden, recheck_standalone};
use crate::ingest::doc::{doc_to_value, to_json_bytes};
use crate::ingest::svg::{render_arrangement_svg, render_svg, SvgOptions};
use crate::ingest::{load_bytes, load_drawing, parse_drawing, Loaded};
use crate::kn::{crosscheck_b_configuration, default_graph_vertices, good_drawing_violations, validate_good_drawing};
use crate::obstruction::{
    brute_force_obstruction, find_obstruction_with, ObstructionReport, SearchOptions, DEFAULT_CAP,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OBSTRUCTION: i32 = 10;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "pseudolinear",
    version,
    about = "Decide whether strings in the plane extend to a pseudoline arrangement"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Use the exhaustive cycle search instead of the peeling search.
    #[arg(long)]
    oracle: bool,
    /// Vertex cap for exhaustive search.
    #[arg(long, default_value_t = DEFAULT_CAP, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(3..))]
    cap: usize,
    /// Include the search or extension log in the output.
    #[arg(long)]
    trace: bool,
    /// Write the JSON output here instead of stdout.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Also write an SVG picture.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check general position, and the good-drawing conditions when graph vertices are given.
    Validate {
        input: PathBuf,
        /// Check the good-drawing conditions, using all string ends as graph vertices if none are given.
        #[arg(long)]
        good: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Report an obstruction (exit 10) or that none exists (exit 0).
    Check {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Extend the strings to a pseudoline arrangement.
    Extend {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Look for a B configuration in a good drawing of a complete graph and cross-check it.
    KnB {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Extract the forbidden configuration of a non-pseudolinear drawing.
    ExtractForbidden {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Draw a drawing or an arrangement as SVG.
    Render {
        input: PathBuf,
        /// Highlight an obstruction if there is one.
        #[arg(long)]
        highlight: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Generate the seeded random corpus.
    Corpus {
        #[arg(long, default_value_t = corpus::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// Failure carrying its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(exit_code(&e), e.to_string())
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        Error::ObstructionPresent => EXIT_OBSTRUCTION,
        Error::SchemaError { .. }
        | Error::OverlapViolation(_)
        | Error::TangencyViolation(_)
        | Error::SelfCrossViolation(_)
        | Error::NotGood(_)
        | Error::NotComplete(_)
        | Error::UnknownEdge(_)
        | Error::UnknownPoint(_)
        | Error::NonPlanarEmbedding(_)
        | Error::DanglingDart(_)
        | Error::MissingOuterFace(_)
        | Error::Io(_) => EXIT_INVALID,
        _ => EXIT_INTERNAL,
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Fail> {
    std::fs::read(path).map_err(|e| Fail(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Fail> {
    std::fs::write(path, bytes).map_err(|e| Fail(EXIT_INTERNAL, format!("{}: {e}", path.display())))
}

struct Out<'a> {
    stdout: &'a mut dyn Write,
}

impl Out<'_> {
    fn emit(&mut self, common: &Common, v: &Value) -> Result<(), Fail> {
        let bytes = to_json_bytes(v);
        match &common.output {
            Some(p) => write_file(p, &bytes),
            None => self
                .stdout
                .write_all(&bytes)
                .map_err(|e| Fail(EXIT_INTERNAL, format!("stdout: {e}"))),
        }
    }
}

fn search(loaded: &Loaded, common: &Common) -> Result<Option<ObstructionReport>, Fail> {
    let mut rep = if common.oracle {
        brute_force_obstruction(&loaded.sigma, common.cap)?
    } else {
        find_obstruction_with(
            &loaded.sigma,
            SearchOptions {
                cap: common.cap,
                fallback: true,
            },
        )?
    };
    if let Some(r) = rep.as_mut() {
        if !common.trace {
            r.trace.clear();
        }
    }
    Ok(rep)
}

fn report_value(r: &ObstructionReport) -> Value {
    json!({
        "cycle": r.cycle,
        "rainbows": r.rainbows,
        "delta": r.delta,
        "curve": r.curve,
        "trace": r.trace,
    })
}

fn highlight_opts(r: Option<&ObstructionReport>) -> SvgOptions {
    SvgOptions {
        highlight: r.map(|r| r.segs.clone()).unwrap_or_default(),
        ..SvgOptions::default()
    }
}

fn validate(input: &Path, good: bool, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let bytes = read(input)?;
    let doc = parse_drawing(&bytes)?;
    let loaded = match load_drawing(&doc) {
        Ok(l) => l,
        Err(e) => {
            let code = exit_code(&e);
            out.emit(common, &json!({"valid": false, "violations": [e.to_string()]}))?;
            return Ok(code);
        }
    };
    let mut violations: Vec<String> = loaded
        .sigma
        .validate_general_position()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let mut good_drawing = Value::Null;
    if good || loaded.graph_vertices.is_some() {
        let vs = loaded
            .graph_vertices
            .clone()
            .unwrap_or_else(|| default_graph_vertices(&loaded.sigma));
        let g = good_drawing_violations(&loaded.sigma, &vs);
        good_drawing = json!(g.is_empty());
        violations.extend(g);
    }
    let ok = violations.is_empty();
    out.emit(
        common,
        &json!({
            "valid": ok,
            "strings": loaded.sigma.strings().count(),
            "good_drawing": good_drawing,
            "violations": violations,
        }),
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_INVALID })
}

fn check(input: &Path, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let loaded = load_bytes(&read(input)?)?;
    let rep = search(&loaded, common)?;
    if let Some(p) = &common.svg {
        write_file(p, &render_svg(&loaded.sigma, &highlight_opts(rep.as_ref())))?;
    }
    match rep {
        Some(r) => {
            out.emit(common, &report_value(&r))?;
            Ok(EXIT_OBSTRUCTION)
        }
        None => {
            out.emit(common, &json!({"pseudolinear": true}))?;
            Ok(EXIT_OK)
        }
    }
}

fn extend(input: &Path, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let loaded = load_bytes(&read(input)?)?;
    if common.oracle {
        if let Some(r) = brute_force_obstruction(&loaded.sigma, common.cap)? {
            return Err(Fail(
                EXIT_OBSTRUCTION,
                format!("obstruction through {}", r.cycle.join(" ")),
            ));
        }
    }
    let opts = ExtendOptions {
        search: SearchOptions {
            cap: common.cap,
            fallback: true,
        },
        keep_states: false,
    };
    let (arr, trace) = extend_to_arrangement(&loaded.sigma, opts)?;
    let problems = verify_arrangement(&arr, Some(&loaded.sigma));
    if !problems.is_empty() {
        return Err(Fail(
            EXIT_INTERNAL,
            format!("extension failed verification: {}", problems.join("; ")),
        ));
    }
    if let Some(p) = &common.svg {
        write_file(p, &render_arrangement_svg(&arr, &SvgOptions::default())?)?;
    }
    let mut v = arr.to_json();
    if common.trace {
        v["trace"] = serde_json::to_value(&trace).map_err(|e| Fail(EXIT_INTERNAL, e.to_string()))?;
    }
    out.emit(common, &v)?;
    Ok(EXIT_OK)
}

fn kn_b(input: &Path, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let loaded = load_bytes(&read(input)?)?;
    let vs = loaded
        .graph_vertices
        .clone()
        .unwrap_or_else(|| default_graph_vertices(&loaded.sigma));
    let gd = validate_good_drawing(&loaded.sigma, &vs)?;
    let cc = crosscheck_b_configuration(
        &gd,
        SearchOptions {
            cap: common.cap,
            fallback: true,
        },
    )?;
    let b = cc.b.as_ref().map(|b| {
        json!({
            "x": b.x, "y": b.y, "z": b.z, "w": b.w,
            "crossing": b.crossing,
            "cycle": report_value(&b.cycle),
        })
    });
    let obstruction = cc.obstruction.as_ref().map(|r| {
        let mut r = r.clone();
        if !common.trace {
            r.trace.clear();
        }
        report_value(&r)
    });
    let found = cc.b.is_some();
    if let Some(p) = &common.svg {
        let hl = cc.b.as_ref().map(|b| &b.cycle);
        write_file(p, &render_svg(&loaded.sigma, &highlight_opts(hl)))?;
    }
    out.emit(
        common,
        &json!({
            "vertices": gd.vertices.len(),
            "b_configuration": b,
            "obstruction": obstruction,
            "agree": true,
        }),
    )?;
    Ok(if found { EXIT_OBSTRUCTION } else { EXIT_OK })
}

fn forbidden(input: &Path, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let loaded = load_bytes(&read(input)?)?;
    let cfg = match extract_forbidden(&loaded.sigma, common.cap) {
        Ok(c) => c,
        Err(Error::NoObstruction) => {
            out.emit(common, &json!({"pseudolinear": true}))?;
            return Ok(EXIT_OK);
        }
        Err(e) => return Err(e.into()),
    };
    let standalone_ok = recheck_standalone(&cfg)?;
    if !standalone_ok {
        return Err(Fail(
            EXIT_INTERNAL,
            "extracted configuration is not an obstruction on its own".into(),
        ));
    }
    if let Some(p) = &common.svg {
        write_file(p, &render_svg(&cfg.sigma, &SvgOptions::default()))?;
    }
    let mut cycle = cfg.cycle.clone();
    if !common.trace {
        cycle.trace.clear();
    }
    out.emit(
        common,
        &json!({
            "rainbows": cfg.rainbows,
            "strings": cfg.strings,
            "junctions": cfg.junctions,
            "cycle": report_value(&cycle),
            "drawing": doc_to_value(&cfg.standalone_doc()),
        }),
    )?;
    Ok(EXIT_OBSTRUCTION)
}

fn render(input: &Path, highlight: bool, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let bytes = read(input)?;
    let v: Value = serde_json::from_slice(&bytes).map_err(|e| Fail(EXIT_INVALID, format!("invalid JSON: {e}")))?;
    let svg = if v.get("format").and_then(Value::as_str) == Some("pseudolinear-arrangement") {
        let drawing = v
            .get("drawing")
            .ok_or_else(|| Fail(EXIT_INVALID, "schema error at /drawing: missing".into()))?;
        let loaded = load_bytes(&to_json_bytes(drawing))?;
        let arr = PseudolineArrangement::from_stringset(&loaded.sigma);
        render_arrangement_svg(&arr, &SvgOptions::default())?
    } else {
        let loaded = load_bytes(&bytes)?;
        let rep = if highlight { search(&loaded, common)? } else { None };
        render_svg(&loaded.sigma, &highlight_opts(rep.as_ref()))
    };
    match (&common.svg, &common.output) {
        (Some(p), _) | (None, Some(p)) => write_file(p, &svg)?,
        (None, None) => out
            .stdout
            .write_all(&svg)
            .map_err(|e| Fail(EXIT_INTERNAL, format!("stdout: {e}")))?,
    }
    Ok(EXIT_OK)
}

fn corpus_cmd(seed: u64, count: usize, common: &Common, out: &mut Out) -> Result<i32, Fail> {
    let params = CorpusParams::default();
    let instances = corpus::generate(seed, count, params);
    let mut items = Vec::with_capacity(instances.len());
    for inst in &instances {
        let loaded = Loaded {
            sigma: inst.sigma.clone(),
            graph_vertices: None,
        };
        let rep = search(&loaded, common)?;
        items.push(json!({
            "index": inst.index,
            "pseudolinear": rep.is_none(),
            "drawing": doc_to_value(&inst.doc()),
        }));
    }
    out.emit(
        common,
        &json!({
            "seed": seed,
            "params": {
                "max_strings": params.max_strings,
                "max_segments": params.max_segments,
                "coord_max": params.coord_max,
                "max_vertices": params.max_vertices,
            },
            "instances": items,
        }),
    )?;
    Ok(EXIT_OK)
}

/// Runs the command line `args` (program name first), writing output to the
/// given streams. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(stderr, "{}", e.render())
            } else {
                write!(stdout, "{}", e.render())
            };
            return code;
        }
    };
    let mut out = Out { stdout };
    let res = match &cli.command {
        Command::Validate { input, good, common } => validate(input, *good, common, &mut out),
        Command::Check { input, common } => check(input, common, &mut out),
        Command::Extend { input, common } => extend(input, common, &mut out),
        Command::KnB { input, common } => kn_b(input, common, &mut out),
        Command::ExtractForbidden { input, common } => forbidden(input, common, &mut out),
        Command::Render {
            input,
            highlight,
            common,
        } => render(input, *highlight, common, &mut out),
        Command::Corpus { seed, count, common } => corpus_cmd(*seed, *count, common, &mut out),
    };
    match res {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            code
        }
    }
}

/// Runs with the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
