// Generates a seeded random corpus and tallies obstructions and extensions.
//
// cargo run --release --example random_corpus [SEED] [COUNT]

use pseudolinear::corpus::{generate, CorpusParams, DEFAULT_SEED};
use pseudolinear::extension::{extend_to_arrangement, verify_arrangement, ExtendOptions};
use pseudolinear::obstruction::{brute_force_obstruction, find_obstruction};
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    let mut args = args.into_iter();
    let seed = args.next().map(|s| s.parse()).transpose()?.unwrap_or(DEFAULT_SEED);
    let count = args.next().map(|s| s.parse()).transpose()?.unwrap_or(100);

    let t = Instant::now();
    let corpus = generate(seed, count, CorpusParams::default());
    let (mut blocked, mut extended, mut steps) = (0, 0, 0);
    for inst in &corpus {
        let found = find_obstruction(&inst.sigma)?;
        assert_eq!(found.is_some(), brute_force_obstruction(&inst.sigma, 16)?.is_some());
        if found.is_some() {
            blocked += 1;
            continue;
        }
        let (arr, trace) = extend_to_arrangement(&inst.sigma, ExtendOptions::default())?;
        assert!(verify_arrangement(&arr, Some(&inst.sigma)).is_empty());
        extended += 1;
        steps += trace.counted_steps();
    }
    println!(
        "seed {seed}: {} instances, {blocked} with an obstruction, {extended} extended in {steps} steps, {:?}",
        corpus.len(),
        t.elapsed()
    );
    Ok(())
}
