//! Writes the fig6 scene as OBJ and both SVG views into a directory
//! (first argument, default `figures`).

use std::fs;
use std::path::PathBuf;

use zpr::export::{export, Format};
use zpr::gen::fixtures;
use zpr::pipeline::draw;

fn main() -> zpr::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    fs::create_dir_all(&dir)?;
    let scene = draw(&fixtures()["fig6"])?.scene;
    for (name, format) in [
        ("fig6.obj", Format::Obj),
        ("fig6-section.svg", Format::SvgSection),
        ("fig6-yz.svg", Format::SvgYz),
    ] {
        let path = dir.join(name);
        fs::write(&path, export(&scene, format))?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
