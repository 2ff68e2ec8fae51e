// Writes SVG pictures: FIX_B with its obstruction highlighted, and the
// wiring diagram of the extended FIX_K4X_IN.
//
// cargo run --example render_svg [OUT_DIR]

use pseudolinear::extension::{extend_to_arrangement, ExtendOptions};
use pseudolinear::ingest::svg::{render_arrangement_svg, render_svg, SvgOptions};
use pseudolinear::ingest::{fixtures, load_drawing};
use pseudolinear::obstruction::find_obstruction;
use std::path::PathBuf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run(std::env::args().skip(1).collect())
}

pub fn run(args: Vec<String>) -> Result<(), Box<dyn std::error::Error>> {
    let dir = args.first().map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;

    let b = load_drawing(&fixtures::fix_b())?.sigma;
    let rep = find_obstruction(&b)?.expect("FIX_B has an obstruction");
    let opts = SvgOptions {
        highlight: rep.segs.clone(),
        ..SvgOptions::default()
    };
    let path = dir.join("fix_b.svg");
    std::fs::write(&path, render_svg(&b, &opts))?;
    println!("wrote {}", path.display());

    let k4 = load_drawing(&fixtures::fix_k4x_in())?.sigma;
    let (arr, _) = extend_to_arrangement(&k4, ExtendOptions::default())?;
    let path = dir.join("k4_wiring.svg");
    std::fs::write(&path, render_arrangement_svg(&arr, &SvgOptions::default())?)?;
    println!("wrote {}", path.display());
    Ok(())
}
