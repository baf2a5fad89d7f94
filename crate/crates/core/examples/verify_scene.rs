//! Checks a scene with the geometric verifier, then moves one cylinder
//! and shows the verifier's complaints.

use zpr::gen::fixtures;
use zpr::pipeline::draw;
use zpr::scene::q;
use zpr::verify::{verify_one_visible, verify_volume, verify_zpr};

fn main() -> zpr::Result<()> {
    let g = &fixtures()["fig6"];
    let mut scene = draw(g)?.scene;
    println!("zpr: {}", verify_zpr(&scene, g));
    println!("1-visible: {}", verify_one_visible(&scene, g));
    let (volume, per_n3) = verify_volume(&scene, g.vertices.len());
    println!("bounding volume {volume} ({per_n3:.3} n^3)");

    scene.cylinders[2].y += q(50);
    print!("{}", verify_zpr(&scene, g).json_lines());
    Ok(())
}
