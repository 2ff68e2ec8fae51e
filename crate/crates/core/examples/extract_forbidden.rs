// Extracts the forbidden configuration behind each non-pseudolinear fixture
// and re-checks it on its own.
//
// cargo run --example extract_forbidden

use pseudolinear::forbidden::{classify_config, extract_forbidden, recheck_standalone};
use pseudolinear::ingest::fixtures::all_fixtures;
use pseudolinear::ingest::{load_drawing, serialize_drawing};
use pseudolinear::obstruction::find_obstruction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(_args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    for (name, doc) in all_fixtures() {
        let sigma = load_drawing(&doc)?.sigma;
        if find_obstruction(&sigma)?.is_none() {
            continue;
        }
        let cfg = extract_forbidden(&sigma, 64)?;
        let (r, m) = classify_config(&cfg);
        println!(
            "{name:14} {m} strings, {r} rainbows, standalone ok: {}",
            recheck_standalone(&cfg)?
        );
        for (s, j) in cfg.strings.iter().zip(&cfg.junctions) {
            println!(
                "  from {} ({:?}) along {}: {}",
                j.point,
                j.kind,
                s.source,
                s.nodes.join(" ")
            );
        }
        if name == "FIX_TRI" {
            print!("{}", String::from_utf8(serialize_drawing(&cfg.standalone_doc()))?);
        }
    }
    Ok(())
}
