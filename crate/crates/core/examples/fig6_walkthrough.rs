//! Follows the eight-vertex example with two crossings through every
//! stage, printing the intermediate JSON that `zpr draw --dump-stage`
//! would write.

use zpr::gen::fixtures;
use zpr::lift::{assign_y, preliminary_rects, TotalOrder};
use zpr::pipeline::draw;

const NAMES: [&str; 8] = ["s", "a", "b", "e", "f", "g", "h", "t"];

fn main() -> zpr::Result<()> {
    let d = draw(&fixtures()["fig6"])?;
    println!("== st-orientation\n{}", d.orientation.to_json(&d.skeleton));
    println!("== bars with crossings\n{}", d.gamma1.to_json());
    println!("== orientations\n{}", d.orientations.to_json());
    let named = |o: &TotalOrder| {
        o.0.iter()
            .map(|&v| NAMES[v as usize])
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!(
        "== computed orders\nsigma1: {}\nsigma2: {}",
        named(&d.sigma1),
        named(&d.sigma2)
    );

    // a different pair of orders yields different heights
    let s1 = TotalOrder(vec![7, 1, 6, 4, 2, 3, 5, 0]);
    let s2 = TotalOrder(vec![6, 7, 5, 3, 2, 4, 1, 0]);
    println!(
        "== heights for sigma1 = {}, sigma2 = {}",
        named(&s1),
        named(&s2)
    );
    for r in assign_y(&s1, &s2, &preliminary_rects(&d.gamma1))? {
        println!("  {}: y = [{}, {}]", NAMES[r.v as usize], r.y_bot, r.y_top);
    }
    Ok(())
}
