//! Removes the crossing pairs to obtain the planar skeleton and orients it
//! from s to t. Every vertex other than s and t gets an incoming and an
//! outgoing edge.

use zpr::augment::augment;
use zpr::bars::{check_st, choose_st_and_orient};
use zpr::gen::fixtures;
use zpr::skeleton::PlanarSkeleton;

fn main() -> zpr::Result<()> {
    let g = &fixtures()["fig6"];
    let sk = PlanarSkeleton::from_augmented(&augment(g)?);
    let o = choose_st_and_orient(&sk)?;
    println!(
        "skeleton: {} vertices, {} edges, {} kites",
        sk.vertex_count(),
        sk.edges.len(),
        sk.kites.len()
    );
    println!("s = {}, t = {}", o.s, o.t);
    for &v in &sk.vertex_ids {
        println!("  vertex {v}: z = {}", o.z_of(&sk, v).unwrap());
    }
    for [from, to, id] in o.arcs(&sk) {
        println!("  edge {id}: {from} -> {to}");
    }
    println!("bipolar: {:?}", check_st(&sk, &o));
    Ok(())
}
