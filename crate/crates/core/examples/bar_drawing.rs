//! Lays out the oriented skeleton as horizontal bars with vertical
//! visibilities, leaving two spare columns inside every kite face.

use zpr::augment::augment;
use zpr::bars::{bars, choose_st_and_orient};
use zpr::gen::fixtures;
use zpr::skeleton::PlanarSkeleton;

fn main() -> zpr::Result<()> {
    let sk = PlanarSkeleton::from_augmented(&augment(&fixtures()["k5"])?);
    let o = choose_st_and_orient(&sk)?;
    let bd = bars(&sk, &o)?;
    for b in &bd.bars {
        println!("bar {} at z={} spans x=[{}, {}]", b.v, b.z, b.x_l, b.x_r);
    }
    for vis in &bd.visibilities {
        println!(
            "edge {} at x={} from z={} to z={}",
            vis.edge, vis.x, vis.z_low, vis.z_high
        );
    }
    Ok(())
}
