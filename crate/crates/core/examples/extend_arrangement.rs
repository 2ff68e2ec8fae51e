// Extends two disjoint segments and a good K4 to pseudoline arrangements and
// prints each step and the resulting wiring diagram.
//
// cargo run --example extend_arrangement

use pseudolinear::extension::{extend_to_arrangement, verify_arrangement, ExtendOptions};
use pseudolinear::ingest::{fixtures, load_drawing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(_args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    for (name, doc) in [("FIX_PAR", fixtures::fix_par()), ("FIX_K4X_IN", fixtures::fix_k4x_in())] {
        let sigma = load_drawing(&doc)?.sigma;
        let (arr, trace) = extend_to_arrangement(&sigma, ExtendOptions::default())?;
        println!("{name}: {} steps (budget {})", trace.counted_steps(), trace.budget);
        for s in &trace.steps {
            println!(
                "  {:?} {} at {} ({} -> {} crossing pairs)",
                s.kind, s.string, s.at, s.pairs_before, s.pairs_after
            );
        }
        let problems = verify_arrangement(&arr, Some(&sigma));
        assert!(problems.is_empty(), "{problems:?}");
        let wd = arr.wiring_diagram()?;
        let top: Vec<&str> = wd.start.iter().map(|&i| wd.strings[i].as_str()).collect();
        println!("  left side, top to bottom: {}", top.join(" "));
        for (p, i, k) in &wd.events {
            println!("  swap {k} wires from position {i} at {p}");
        }
    }
    Ok(())
}
