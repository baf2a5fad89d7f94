//! Builds a 1-plane graph from a straight-line drawing, validates it, and
//! shows what a broken rotation system looks like to the validator.

use zpr::graph::{faces, piece_id, validate, OnePlaneGraph};

fn main() -> zpr::Result<()> {
    // a square with both diagonals: one crossing inside an empty kite
    let points = [(0, 0), (2, 0), (2, 2), (0, 2)];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)];
    let g = OnePlaneGraph::from_straight_line(&points, &edges)?;
    println!(
        "vertices {}, edges {}, crossings {}",
        g.vertices.len(),
        g.edges.len(),
        g.crossings.len()
    );
    println!("validation: {}", validate(&g));
    for (i, f) in faces(&g)?.iter().enumerate() {
        println!(
            "face {i}: {} darts{}",
            f.boundary.len(),
            if f.outer { " (outer)" } else { "" }
        );
    }

    let mut broken = g.clone();
    broken.rotation.get_mut(&0).unwrap()[0] = piece_id(1, 0);
    println!(
        "after corrupting the rotation at vertex 0: {}",
        validate(&broken)
    );
    Ok(())
}
