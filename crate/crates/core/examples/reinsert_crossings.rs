//! Puts the crossing pairs back into the bar drawing. One edge of each
//! kite is seen through a single intermediate bar; an independent sweep
//! confirms the bookkeeping.

use zpr::augment::augment;
use zpr::bars::{bars, choose_st_and_orient};
use zpr::extend::{audit_traversals, reinsert_crossings};
use zpr::gen::gen;
use zpr::skeleton::PlanarSkeleton;

fn main() -> zpr::Result<()> {
    let g = gen(11, 30, 0.7)?;
    let sk = PlanarSkeleton::from_augmented(&augment(&g)?);
    let o = choose_st_and_orient(&sk)?;
    let (gamma1, tm) = reinsert_crossings(&sk, &o, &bars(&sk, &o)?)?;
    println!(
        "{} kites, {} visibilities",
        sk.kites.len(),
        gamma1.visibilities.len()
    );
    for (bar, edge) in &tm.by_bar {
        println!("  edge {edge} is seen through bar {bar}");
    }
    match audit_traversals(&gamma1) {
        Ok(swept) => println!("sweep agrees with the records: {}", swept == tm),
        Err(issues) => println!("sweep found problems: {issues:?}"),
    }
    Ok(())
}
