//! Figure exporters for scenes: Wavefront OBJ and two SVG views.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::scene::{Cylinder, ZprScene, Q};

/// Sides of the polygon that stands in for a cylinder in OBJ output.
pub const PRISM_SIDES: usize = 12;

const UNIT: f64 = 24.0;
const MARGIN: f64 = 24.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Obj,
    SvgSection,
    SvgYz,
}

impl Format {
    pub const NAMES: [&'static str; 3] = ["obj", "svg-section", "svg-yz"];

    pub fn parse(name: &str) -> Option<Format> {
        match name {
            "obj" => Some(Format::Obj),
            "svg-section" => Some(Format::SvgSection),
            "svg-yz" => Some(Format::SvgYz),
            _ => None,
        }
    }
}

pub fn export(scene: &ZprScene, format: Format) -> String {
    match format {
        Format::Obj => obj(scene),
        Format::SvgSection => svg_section(scene),
        Format::SvgYz => svg_yz(scene),
    }
}

fn f(v: Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

fn exact(v: Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// A cylinder passes through a rectangle strictly between its end planes
/// whose x-range covers the axis.
pub fn is_traversing(scene: &ZprScene, c: &Cylinder) -> bool {
    scene
        .rects
        .iter()
        .any(|r| c.z_low < r.z && r.z < c.z_high && r.x_l <= c.x && c.x <= r.x_r)
}

/// Rectangles as two triangles each, cylinders as closed prisms.
pub fn obj(scene: &ZprScene) -> String {
    let mut out = String::from("# zpr scene\n");
    let mut next = 1usize;
    for r in &scene.rects {
        let _ = writeln!(
            out,
            "# rect {} z={} x=[{},{}] y=[{},{}]",
            r.v,
            r.z,
            exact(r.x_l),
            exact(r.x_r),
            exact(r.y_bot),
            exact(r.y_top)
        );
        let _ = writeln!(out, "o rect_{}", r.v);
        let z = r.z as f64;
        for (x, y) in [
            (r.x_l, r.y_bot),
            (r.x_r, r.y_bot),
            (r.x_r, r.y_top),
            (r.x_l, r.y_top),
        ] {
            let _ = writeln!(out, "v {} {} {}", f(x), f(y), z);
        }
        let _ = writeln!(out, "f {} {} {}", next, next + 1, next + 2);
        let _ = writeln!(out, "f {} {} {}", next, next + 2, next + 3);
        next += 4;
    }
    let radius = f(scene.epsilon);
    for c in &scene.cylinders {
        let _ = writeln!(
            out,
            "# cylinder {} axis x={} y={} z=[{},{}] radius={}",
            c.edge,
            exact(c.x),
            exact(c.y),
            c.z_low,
            c.z_high,
            exact(scene.epsilon)
        );
        let _ = writeln!(out, "o cylinder_{}", c.edge);
        for z in [c.z_low, c.z_high] {
            for k in 0..PRISM_SIDES {
                let a = std::f64::consts::TAU * k as f64 / PRISM_SIDES as f64;
                let _ = writeln!(
                    out,
                    "v {} {} {}",
                    f(c.x) + radius * a.cos(),
                    f(c.y) + radius * a.sin(),
                    z
                );
            }
        }
        let (lo, hi) = (next, next + PRISM_SIDES);
        for k in 0..PRISM_SIDES {
            let k1 = (k + 1) % PRISM_SIDES;
            let _ = writeln!(out, "f {} {} {} {}", lo + k, lo + k1, hi + k1, hi + k);
        }
        let cap = |base: usize, rev: bool| {
            let mut idx: Vec<usize> = (0..PRISM_SIDES).map(|k| base + k).collect();
            if rev {
                idx.reverse();
            }
            let list: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            format!("f {}\n", list.join(" "))
        };
        out.push_str(&cap(lo, true));
        out.push_str(&cap(hi, false));
        next += 2 * PRISM_SIDES;
    }
    out
}

struct Canvas {
    min_h: f64,
    max_z: i64,
    width: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(h_range: (f64, f64), z_range: (i64, i64)) -> Canvas {
        let width = (h_range.1 - h_range.0) * UNIT + 2.0 * MARGIN;
        let height = (z_range.1 - z_range.0) as f64 * UNIT + 2.0 * MARGIN;
        Canvas {
            min_h: h_range.0,
            max_z: z_range.1,
            width,
            height,
            body: String::new(),
        }
    }

    fn px(&self, h: f64) -> f64 {
        MARGIN + (h - self.min_h) * UNIT
    }

    fn pz(&self, z: i64) -> f64 {
        MARGIN + (self.max_z - z) as f64 * UNIT
    }

    fn line(&mut self, h0: f64, z0: i64, h1: f64, z1: i64, class: &str, title: &str) {
        let (x0, y0, x1, y1) = (self.px(h0), self.pz(z0), self.px(h1), self.pz(z1));
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"><title>{title}</title></line>"#
        );
    }

    fn finish(self) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
                "\n  <style>\n",
                "    .bar {{ stroke: #222; stroke-width: 4; }}\n",
                "    .vis {{ stroke: #2a6fb0; stroke-width: 1.5; }}\n",
                "    .vis.traversing {{ stroke: #c0392b; stroke-width: 3.5; }}\n",
                "  </style>\n{body}</svg>\n"
            ),
            w = self.width,
            h = self.height,
            body = self.body
        )
    }
}

fn z_range(scene: &ZprScene) -> (i64, i64) {
    let zs = scene.rects.iter().map(|r| r.z);
    (zs.clone().min().unwrap_or(0), zs.max().unwrap_or(0))
}

/// The cut at Y = 0 seen in the xz-plane: bars plus every visibility,
/// with traversing ones drawn bold.
pub fn svg_section(scene: &ZprScene) -> String {
    let lo = scene
        .rects
        .iter()
        .map(|r| f(r.x_l))
        .fold(f64::INFINITY, f64::min);
    let hi = scene
        .rects
        .iter()
        .map(|r| f(r.x_r))
        .fold(f64::NEG_INFINITY, f64::max);
    let h_range = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    let mut c = Canvas::new(h_range, z_range(scene));
    for cyl in &scene.cylinders {
        let class = if is_traversing(scene, cyl) {
            "vis traversing"
        } else {
            "vis"
        };
        c.line(
            f(cyl.x),
            cyl.z_low,
            f(cyl.x),
            cyl.z_high,
            class,
            &format!("edge {}", cyl.edge),
        );
    }
    for r in &scene.rects {
        if r.y_bot <= Q::from_integer(0) && Q::from_integer(0) <= r.y_top {
            c.line(
                f(r.x_l),
                r.z,
                f(r.x_r),
                r.z,
                "bar",
                &format!("vertex {}", r.v),
            );
        }
    }
    c.finish()
}

/// Projection to the yz-plane with only the traversing visibilities.
pub fn svg_yz(scene: &ZprScene) -> String {
    let lo = scene
        .rects
        .iter()
        .map(|r| f(r.y_bot))
        .fold(f64::INFINITY, f64::min);
    let hi = scene
        .rects
        .iter()
        .map(|r| f(r.y_top))
        .fold(f64::NEG_INFINITY, f64::max);
    let h_range = if lo.is_finite() { (lo, hi) } else { (0.0, 0.0) };
    let mut c = Canvas::new(h_range, z_range(scene));
    for cyl in scene
        .cylinders
        .iter()
        .filter(|cyl| is_traversing(scene, cyl))
    {
        c.line(
            f(cyl.y),
            cyl.z_low,
            f(cyl.y),
            cyl.z_high,
            "vis traversing",
            &format!("edge {}", cyl.edge),
        );
    }
    for r in &scene.rects {
        c.line(
            f(r.y_bot),
            r.z,
            f(r.y_top),
            r.z,
            "bar",
            &format!("vertex {}", r.v),
        );
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::fixtures;
    use crate::pipeline::draw;

    #[test]
    fn k4_obj_has_four_quads_and_six_prisms() {
        let scene = draw(&fixtures()["k4_kite"]).unwrap().scene;
        let text = obj(&scene);
        let vertices = text.lines().filter(|l| l.starts_with("v ")).count();
        assert_eq!(vertices, 4 * 4 + 6 * 2 * PRISM_SIDES);
        assert_eq!(text.lines().filter(|l| l.starts_with("o rect_")).count(), 4);
        assert_eq!(
            text.lines()
                .filter(|l| l.starts_with("o cylinder_"))
                .count(),
            6
        );
        let max_index = text
            .lines()
            .filter(|l| l.starts_with("f "))
            .flat_map(|l| l[2..].split(' ').map(|t| t.parse::<usize>().unwrap()))
            .max()
            .unwrap();
        assert_eq!(max_index, vertices);
    }

    #[test]
    fn fig6_section_marks_traversals() {
        let d = draw(&fixtures()["fig6"]).unwrap();
        let svg = svg_section(&d.scene);
        let bold = svg.matches(r#"class="vis traversing""#).count();
        let traversing = d
            .gamma1
            .visibilities
            .iter()
            .filter(|v| !v.traverses.is_empty())
            .count();
        assert!(bold > 0);
        assert_eq!(bold, traversing);
        assert_eq!(svg.matches(r#"class="bar""#).count(), 8);
        assert_eq!(
            svg_yz(&d.scene)
                .matches(r#"class="vis traversing""#)
                .count(),
            traversing
        );
    }

    #[test]
    fn single_vertex_scene_exports() {
        let g = crate::gen::gen(3, 1, 0.5).unwrap();
        let scene = draw(&g).unwrap().scene;
        assert_eq!(scene.rects.len(), 1);
        assert!(scene.cylinders.is_empty());
        assert_eq!(
            obj(&scene).lines().filter(|l| l.starts_with("v ")).count(),
            4
        );
        assert!(svg_section(&scene).contains(r#"class="bar""#));
    }
}
