//! Seeded instance generation across densities, with the largest sizes
//! timed through the full construction.

use std::time::Instant;

use zpr::gen::gen;
use zpr::graph::validate;
use zpr::pipeline::draw;

fn main() -> zpr::Result<()> {
    for density in [0.0, 0.25, 0.5, 1.0] {
        let g = gen(1, 200, density)?;
        println!(
            "n=200 density={density}: {} edges, {} crossings, valid: {}",
            g.edges.len(),
            g.crossings.len(),
            validate(&g).is_ok()
        );
    }
    for n in [1000, 2000, 4000] {
        let g = gen(2, n, 0.5)?;
        let t = Instant::now();
        draw(&g)?;
        println!("n={n}: drawn in {:?}", t.elapsed());
    }
    Ok(())
}
