//! Runs the whole construction and prints how the bars are lifted into
//! rectangles: the two vertex orders, the y-extents, and where each
//! cylinder sits.

use zpr::gen::fixtures;
use zpr::pipeline::draw;

fn main() -> zpr::Result<()> {
    let d = draw(&fixtures()["k6"])?;
    for shape in &d.shapes {
        println!(
            "kite {} ({:?}): o={} u={} v={} d={}, traversed bar {:?}",
            shape.kite, shape.kind, shape.o, shape.u, shape.v, shape.d, shape.traversed
        );
    }
    println!("sigma1 = {:?}", d.sigma1.0);
    println!("sigma2 = {:?}", d.sigma2.0);
    for r in &d.scene.rects {
        println!(
            "rect {} z={} x=[{}, {}] y=[{}, {}]",
            r.v, r.z, r.x_l, r.x_r, r.y_bot, r.y_top
        );
    }
    for c in &d.scene.cylinders {
        println!(
            "cylinder {} at (x={}, y={}) z={}..{}",
            c.edge, c.x, c.y, c.z_low, c.z_high
        );
    }
    Ok(())
}
