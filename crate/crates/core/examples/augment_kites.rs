//! Augments a sparse 1-plane graph until every crossing sits in an empty
//! kite and no further uncrossed edge fits.

use zpr::augment::{augment, check_kites, check_maximality};
use zpr::gen::gen;

fn main() -> zpr::Result<()> {
    let g = gen(7, 12, 0.8)?;
    let a = augment(&g)?;
    println!(
        "input: {} edges, {} crossings",
        g.edges.len(),
        g.crossings.len()
    );
    println!(
        "augmented: {} edges ({} added)",
        a.graph.edges.len(),
        a.added_edges()
    );
    let mut by_origin = std::collections::BTreeMap::new();
    for origin in a.origins.values() {
        *by_origin.entry(format!("{origin:?}")).or_insert(0) += 1;
    }
    println!("edge origins: {by_origin:?}");
    println!("kites: {}", check_kites(&a));
    println!("maximality: {}", check_maximality(&a));
    Ok(())
}
