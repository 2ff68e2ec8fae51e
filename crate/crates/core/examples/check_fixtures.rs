// Runs the obstruction search on every built-in fixture and prints the verdict.
//
// cargo run --example check_fixtures

use pseudolinear::ingest::fixtures::all_fixtures;
use pseudolinear::ingest::load_drawing;
use pseudolinear::obstruction::{brute_force_obstruction, find_obstruction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(_args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    for (name, doc) in all_fixtures() {
        let sigma = load_drawing(&doc)?.sigma;
        let found = find_obstruction(&sigma)?;
        // The exhaustive search is exponential but fine at this size.
        let oracle = brute_force_obstruction(&sigma, 64)?;
        assert_eq!(found.is_some(), oracle.is_some());
        match found {
            Some(r) => println!(
                "{name:14} obstruction  cycle {}  rainbows [{}]",
                r.cycle.join(" "),
                r.rainbows.join(", ")
            ),
            None => println!("{name:14} pseudolinear"),
        }
    }
    Ok(())
}
