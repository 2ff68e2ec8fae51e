// Removes each outer vertex of a drawing in turn and compares the obstructions
// of the smaller drawing with those of the original that avoid the vertex.
//
// cargo run --example remove_vertex

use pseudolinear::ingest::{fixtures, load_drawing};
use pseudolinear::obstruction::{brute_force_avoiding, brute_force_obstruction};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(_args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    for (name, doc) in [("FIX_B", fixtures::fix_b()), ("FIX_K4X_OUT", fixtures::fix_k4x_out())] {
        let sigma = load_drawing(&doc)?.sigma;
        let der = sigma.derived()?;
        println!("{name}");
        for v in der.map.outer_vertices() {
            let x = der.point(v);
            let minus = sigma.remove_vertex(x)?;
            let avoiding = brute_force_avoiding(&sigma, x, 64)?;
            let removed = brute_force_obstruction(&minus, 64)?;
            assert_eq!(avoiding.is_some(), removed.is_some());
            let show = |r: Option<pseudolinear::obstruction::ObstructionReport>| {
                r.map(|r| r.curve.join(" ")).unwrap_or_else(|| "none".into())
            };
            println!(
                "  without {:4} {} strings left; obstruction {}",
                sigma.point_label(x),
                minus.string_count(),
                show(removed)
            );
        }
    }
    Ok(())
}
