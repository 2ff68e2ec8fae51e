// Looks for B configurations in good drawings of K4 and K5 and checks the
// answer against the general obstruction search.
//
// cargo run --example kn_b_configuration

use pseudolinear::ingest::fixtures::all_fixtures;
use pseudolinear::ingest::load_drawing;
use pseudolinear::kn::{crosscheck_b_configuration, good_drawing_violations, validate_good_drawing};
use pseudolinear::obstruction::SearchOptions;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(_args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    for (name, doc) in all_fixtures() {
        let loaded = load_drawing(&doc)?;
        let Some(vs) = loaded.graph_vertices else { continue };
        if !good_drawing_violations(&loaded.sigma, &vs).is_empty() {
            continue;
        }
        let gd = validate_good_drawing(&loaded.sigma, &vs)?;
        let cc = crosscheck_b_configuration(&gd, SearchOptions::default())?;
        match cc.b {
            Some(b) => println!(
                "{name:14} B at crossing {} on path {} {} {} {}",
                b.crossing, b.x, b.y, b.z, b.w
            ),
            None => println!("{name:14} no B, pseudolinear"),
        }
    }
    Ok(())
}
