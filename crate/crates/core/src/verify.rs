//! Geometric oracle for scenes and bar drawings.
//!
//! Everything here reads raw coordinates and the input graph only. A
//! cylinder of radius ε is certified through the closed square of
//! half-side ε around its axis, which contains the disk: the square must
//! lie inside both end rectangles and its interior must miss every
//! rectangle strictly between them in z.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::bars::Bar;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, OnePlaneGraph, VertexId};
use crate::scene::{q, Rect, ZprScene, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Issue {
    MissingRect {
        v: VertexId,
    },
    Disjointness {
        u: VertexId,
        v: VertexId,
    },
    SamePlane {
        edge: EdgeId,
        u: VertexId,
        v: VertexId,
    },
    NoVisibility {
        edge: EdgeId,
        u: VertexId,
        v: VertexId,
    },
    BadCylinder {
        edge: EdgeId,
        reason: String,
    },
    NotCut {
        v: VertexId,
    },
    TraversalCount {
        edge: EdgeId,
        count: usize,
    },
    BarOverused {
        edges: Vec<EdgeId>,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::MissingRect { v } => write!(f, "no rectangle for vertex {v}"),
            Issue::Disjointness { u, v } => write!(f, "disjointness({u},{v})"),
            Issue::SamePlane { edge, u, v } => {
                write!(f, "edge {edge}: rectangles {u} and {v} share a plane")
            }
            Issue::NoVisibility { edge, u, v } => {
                write!(f, "no visibility({u},{v}) for edge {edge}")
            }
            Issue::BadCylinder { edge, reason } => write!(f, "cylinder of edge {edge}: {reason}"),
            Issue::NotCut { v } => write!(f, "plane Y=0 misses rectangle {v}"),
            Issue::TraversalCount { edge, count } => {
                write!(f, "edge {edge}: traversal count {count}")
            }
            Issue::BarOverused { edges } => {
                write!(f, "edges {edges:?} cannot be given distinct traversed bars")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub issues: Vec<Issue>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.issues.is_empty()
    }

    /// One JSON object per line; a passing report prints a single summary.
    pub fn json_lines(&self) -> String {
        if self.issues.is_empty() {
            return "{\"kind\":\"pass\"}\n".into();
        }
        self.issues
            .iter()
            .map(|i| serde_json::to_string(i).expect("issue serializes") + "\n")
            .collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            return write!(f, "pass");
        }
        for (i, issue) in self.issues.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{issue}")?;
        }
        Ok(())
    }
}

fn index(scene: &ZprScene) -> HashMap<VertexId, &Rect> {
    scene.rects.iter().map(|r| (r.v, r)).collect()
}

fn between(scene: &ZprScene, lo: i64, hi: i64) -> impl Iterator<Item = &Rect> {
    scene.rects.iter().filter(move |r| lo < r.z && r.z < hi)
}

/// Whether the ε-square centred at `(x, y)` is a channel between `a` and `b`.
fn square_is_free(
    scene: &ZprScene,
    a: &Rect,
    b: &Rect,
    x: Q,
    y: Q,
) -> std::result::Result<(), String> {
    let eps = scene.epsilon;
    for r in [a, b] {
        if x - eps < r.x_l || x + eps > r.x_r || y - eps < r.y_bot || y + eps > r.y_top {
            return Err(format!("square leaves rectangle {}", r.v));
        }
    }
    let (lo, hi) = (a.z.min(b.z), a.z.max(b.z));
    for w in between(scene, lo, hi) {
        if x - eps < w.x_r && w.x_l < x + eps && y - eps < w.y_top && w.y_bot < y + eps {
            return Err(format!("blocked by rectangle {}", w.v));
        }
    }
    Ok(())
}

/// Finds an axis position for an ε-cylinder between the rectangles of `u`
/// and `v`, or `None` when every candidate is blocked.
pub fn free_channel(scene: &ZprScene, u: VertexId, v: VertexId) -> Result<Option<(Q, Q)>> {
    let rects = index(scene);
    let (a, b) = match (rects.get(&u), rects.get(&v)) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Err(Error::Scene(format!("missing rectangle for {u} or {v}"))),
    };
    if a.z == b.z {
        return Err(Error::SamePlane(u, v));
    }
    Ok(channel(scene, a, b))
}

fn channel(scene: &ZprScene, a: &Rect, b: &Rect) -> Option<(Q, Q)> {
    let eps = scene.epsilon;
    let (x0, x1) = (a.x_l.max(b.x_l) + eps, a.x_r.min(b.x_r) - eps);
    let (y0, y1) = (a.y_bot.max(b.y_bot) + eps, a.y_top.min(b.y_top) - eps);
    if x0 > x1 || y0 > y1 {
        return None;
    }
    // forbidden centres: open boxes grown by ε
    let blockers: Vec<(Q, Q, Q, Q)> = between(scene, a.z.min(b.z), a.z.max(b.z))
        .map(|w| (w.x_l - eps, w.x_r + eps, w.y_bot - eps, w.y_top + eps))
        .filter(|&(l, r, bo, t)| l < x1 && r > x0 && bo < y1 && t > y0)
        .collect();
    let mut xs = vec![x0, x1];
    for &(l, r, _, _) in &blockers {
        xs.extend([l, r].into_iter().filter(|&x| x0 <= x && x <= x1));
    }
    xs.sort();
    xs.dedup();
    let mids: Vec<Q> = xs.windows(2).map(|w| (w[0] + w[1]) / q(2)).collect();
    xs.extend(mids);
    for x in xs {
        let open: Vec<(Q, Q)> = blockers
            .iter()
            .filter(|&&(l, r, _, _)| l < x && x < r)
            .map(|&(_, _, bo, t)| (bo, t))
            .collect();
        let candidates = std::iter::once(y0).chain(open.iter().map(|&(_, t)| t));
        for y in candidates {
            if y0 <= y && y <= y1 && open.iter().all(|&(bo, t)| !(bo < y && y < t)) {
                return Some((x, y));
            }
        }
    }
    None
}

fn check_disjoint(scene: &ZprScene, rep: &mut Report) {
    let mut by_z: BTreeMap<i64, Vec<&Rect>> = BTreeMap::new();
    for r in &scene.rects {
        by_z.entry(r.z).or_default().push(r);
    }
    for rs in by_z.values() {
        for (i, a) in rs.iter().enumerate() {
            for b in &rs[i + 1..] {
                let apart =
                    a.x_r < b.x_l || b.x_r < a.x_l || a.y_top < b.y_bot || b.y_top < a.y_bot;
                if !apart {
                    rep.issues.push(Issue::Disjointness { u: a.v, v: b.v });
                }
            }
        }
    }
}

/// Certifies a ZPR of `g`.
pub fn verify_zpr(scene: &ZprScene, g: &OnePlaneGraph) -> Report {
    let edges: Vec<(VertexId, VertexId, EdgeId)> =
        g.edges.iter().map(|e| (e.u, e.v, e.id)).collect();
    verify_zpr_edges(scene, &g.vertices, &edges)
}

/// [`verify_zpr`] for an explicit vertex and edge list, such as a subgraph.
pub fn verify_zpr_edges(
    scene: &ZprScene,
    vertices: &[VertexId],
    edges: &[(VertexId, VertexId, EdgeId)],
) -> Report {
    let mut rep = Report::default();
    let rects = index(scene);
    for &v in vertices {
        if !rects.contains_key(&v) {
            rep.issues.push(Issue::MissingRect { v });
        }
    }
    check_disjoint(scene, &mut rep);
    let mut ends: HashMap<EdgeId, (VertexId, VertexId)> = HashMap::new();
    for &(u, v, id) in edges {
        ends.insert(id, (u, v));
        let (Some(a), Some(b)) = (rects.get(&u), rects.get(&v)) else {
            continue;
        };
        if a.z == b.z {
            rep.issues.push(Issue::SamePlane { edge: id, u, v });
            continue;
        }
        let recorded = scene
            .cylinders
            .iter()
            .any(|c| c.edge == id && square_is_free(scene, a, b, c.x, c.y).is_ok());
        if !recorded && channel(scene, a, b).is_none() {
            rep.issues.push(Issue::NoVisibility { edge: id, u, v });
        }
    }
    for c in &scene.cylinders {
        let Some(&(u, v)) = ends.get(&c.edge) else {
            continue;
        };
        let (Some(a), Some(b)) = (rects.get(&u), rects.get(&v)) else {
            continue;
        };
        if (c.z_low, c.z_high) != (a.z.min(b.z), a.z.max(b.z)) {
            rep.issues.push(Issue::BadCylinder {
                edge: c.edge,
                reason: "z-range does not span its end rectangles".into(),
            });
        } else if let Err(reason) = square_is_free(scene, a, b, c.x, c.y) {
            rep.issues.push(Issue::BadCylinder {
                edge: c.edge,
                reason,
            });
        }
    }
    rep
}

/// Cut of the scene with the plane Y=0, as bars in rectangle order.
pub fn section(scene: &ZprScene) -> Vec<(VertexId, i64, Q, Q)> {
    scene
        .rects
        .iter()
        .filter(|r| r.y_bot <= q(0) && q(0) <= r.y_top)
        .map(|r| (r.v, r.z, r.x_l, r.x_r))
        .collect()
}

/// Whether the section of `scene` coincides with the bars of a drawing.
pub fn section_matches(scene: &ZprScene, bars: &[Bar]) -> bool {
    let mut cut = section(scene);
    let mut want: Vec<(VertexId, i64, Q, Q)> = bars
        .iter()
        .map(|b| (b.v, b.z, q(b.x_l), q(b.x_r)))
        .collect();
    cut.sort();
    want.sort();
    cut.len() == scene.rects.len() && cut == want
}

/// Certifies that the Y=0 section is a bar 1-visibility drawing of `g`.
pub fn verify_one_visible(scene: &ZprScene, g: &OnePlaneGraph) -> Report {
    let mut rep = Report::default();
    let rects = index(scene);
    for r in &scene.rects {
        if !(r.y_bot <= q(0) && q(0) <= r.y_top) {
            rep.issues.push(Issue::NotCut { v: r.v });
        }
    }
    let bars: Vec<(VertexId, i64, Q, Q)> = section(scene);
    let mut needs_one: Vec<(EdgeId, Vec<VertexId>)> = Vec::new();
    for e in &g.edges {
        let (Some(a), Some(b)) = (rects.get(&e.u), rects.get(&e.v)) else {
            rep.issues.push(Issue::MissingRect {
                v: if rects.contains_key(&e.u) { e.v } else { e.u },
            });
            continue;
        };
        if a.z == b.z {
            rep.issues.push(Issue::SamePlane {
                edge: e.id,
                u: e.u,
                v: e.v,
            });
            continue;
        }
        let (x0, x1) = (a.x_l.max(b.x_l), a.x_r.min(b.x_r));
        if x0 > x1 {
            rep.issues.push(Issue::NoVisibility {
                edge: e.id,
                u: e.u,
                v: e.v,
            });
            continue;
        }
        let (lo, hi) = (a.z.min(b.z), a.z.max(b.z));
        let mid: Vec<&(VertexId, i64, Q, Q)> =
            bars.iter().filter(|b| lo < b.1 && b.1 < hi).collect();
        let mut xs = vec![x0, x1];
        for b in &mid {
            xs.extend([b.2, b.3].into_iter().filter(|&x| x0 <= x && x <= x1));
        }
        xs.sort();
        xs.dedup();
        let mids: Vec<Q> = xs.windows(2).map(|w| (w[0] + w[1]) / q(2)).collect();
        xs.extend(mids);
        let mut best = usize::MAX;
        let mut singles: Vec<VertexId> = Vec::new();
        for x in xs {
            let crossed: Vec<VertexId> = mid
                .iter()
                .filter(|b| b.2 <= x && x <= b.3)
                .map(|b| b.0)
                .collect();
            best = best.min(crossed.len());
            if crossed.len() == 1 && !singles.contains(&crossed[0]) {
                singles.push(crossed[0]);
            }
        }
        match best {
            0 => {}
            1 => needs_one.push((e.id, singles)),
            count => rep.issues.push(Issue::TraversalCount { edge: e.id, count }),
        }
    }
    let unmatched = unmatched_edges(&needs_one);
    if !unmatched.is_empty() {
        rep.issues.push(Issue::BarOverused { edges: unmatched });
    }
    rep
}

/// Edges left without a private bar by a maximum bipartite matching.
fn unmatched_edges(options: &[(EdgeId, Vec<VertexId>)]) -> Vec<EdgeId> {
    fn augment(
        i: usize,
        options: &[(EdgeId, Vec<VertexId>)],
        owner: &mut HashMap<VertexId, usize>,
        seen: &mut Vec<VertexId>,
    ) -> bool {
        for &w in &options[i].1 {
            if seen.contains(&w) {
                continue;
            }
            seen.push(w);
            let free = match owner.get(&w) {
                None => true,
                Some(&j) => augment(j, options, owner, seen),
            };
            if free {
                owner.insert(w, i);
                return true;
            }
        }
        false
    }
    let mut owner = HashMap::new();
    let mut lost = Vec::new();
    for i in 0..options.len() {
        if !augment(i, options, &mut owner, &mut Vec::new()) {
            lost.push(options[i].0);
        }
    }
    lost
}

/// Bounding-box volume `xSpan * ySpan * (zSpan + 1)` and its ratio to n³.
pub fn verify_volume(scene: &ZprScene, n: usize) -> (Q, f64) {
    if scene.rects.is_empty() {
        return (q(0), 0.0);
    }
    let eps = scene.epsilon;
    let mut x = (scene.rects[0].x_l, scene.rects[0].x_r);
    let mut y = (scene.rects[0].y_bot, scene.rects[0].y_top);
    let mut z = (scene.rects[0].z, scene.rects[0].z);
    for r in &scene.rects {
        x = (x.0.min(r.x_l), x.1.max(r.x_r));
        y = (y.0.min(r.y_bot), y.1.max(r.y_top));
        z = (z.0.min(r.z), z.1.max(r.z));
    }
    for c in &scene.cylinders {
        x = (x.0.min(c.x - eps), x.1.max(c.x + eps));
        y = (y.0.min(c.y - eps), y.1.max(c.y + eps));
    }
    let vol = (x.1 - x.0) * (y.1 - y.0) * q(z.1 - z.0 + 1);
    let ratio = *vol.numer() as f64 / *vol.denom() as f64 / (n as f64).powi(3);
    (vol, ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{ratio, Cylinder};

    fn rect(v: VertexId, z: i64, x: (i64, i64), y: (i64, i64)) -> Rect {
        Rect {
            v,
            z,
            x_l: q(x.0),
            x_r: q(x.1),
            y_bot: q(y.0),
            y_top: q(y.1),
        }
    }

    fn scene(rects: Vec<Rect>) -> ZprScene {
        ZprScene {
            epsilon: ratio(1, 4),
            rects,
            cylinders: Vec::new(),
        }
    }

    #[test]
    fn open_overlap_has_witness() {
        let s = scene(vec![rect(0, 0, (0, 2), (0, 2)), rect(1, 3, (1, 3), (1, 3))]);
        let (x, y) = free_channel(&s, 0, 1).unwrap().unwrap();
        assert!(square_is_free(&s, &s.rects[0], &s.rects[1], x, y).is_ok());
    }

    #[test]
    fn covered_overlap_has_none() {
        let s = scene(vec![
            rect(0, 0, (0, 4), (0, 4)),
            rect(1, 2, (0, 4), (0, 4)),
            rect(2, 1, (-1, 5), (-1, 5)),
        ]);
        assert_eq!(free_channel(&s, 0, 1).unwrap(), None);
        assert!(free_channel(&s, 0, 0).is_err());
    }

    #[test]
    fn narrow_slab_is_found() {
        // blockers leave x in [2, 2 + 3/4] free, wide enough for a 1/2 square
        let mut s = scene(vec![rect(0, 0, (0, 6), (0, 2)), rect(1, 4, (0, 6), (0, 2))]);
        s.rects.push(Rect {
            v: 2,
            z: 1,
            x_l: q(-1),
            x_r: q(2),
            y_bot: q(-1),
            y_top: q(3),
        });
        s.rects.push(Rect {
            v: 3,
            z: 2,
            x_l: ratio(11, 4),
            x_r: q(7),
            y_bot: q(-1),
            y_top: q(3),
        });
        let (x, _) = free_channel(&s, 0, 1).unwrap().unwrap();
        assert!(x >= ratio(9, 4) && x <= ratio(10, 4));
        // a slab of width 1/4 is too thin
        s.rects[3].x_l = ratio(9, 4);
        assert_eq!(free_channel(&s, 0, 1).unwrap(), None);
    }

    #[test]
    fn overlapping_rectangles_are_reported() {
        let g = OnePlaneGraph::from_straight_line(&[(0, 0), (1, 0)], &[(0, 1)]).unwrap();
        let s = scene(vec![
            rect(0, 0, (0, 2), (-1, 1)),
            rect(1, 0, (1, 3), (-1, 1)),
        ]);
        let rep = verify_zpr(&s, &g);
        assert!(rep.issues.contains(&Issue::Disjointness { u: 0, v: 1 }));
    }

    #[test]
    fn blocked_edge_is_reported() {
        let g =
            OnePlaneGraph::from_straight_line(&[(0, 0), (1, 0), (0, 1)], &[(0, 1), (1, 2), (2, 0)])
                .unwrap();
        let mut s = scene(vec![
            rect(0, 0, (0, 2), (-1, 1)),
            rect(1, 2, (0, 2), (-1, 1)),
            rect(2, 1, (-1, 3), (-2, 2)),
        ]);
        s.cylinders.push(Cylinder {
            edge: 0,
            x: q(1),
            y: q(0),
            z_low: 0,
            z_high: 2,
        });
        let rep = verify_zpr(&s, &g);
        assert!(rep
            .issues
            .iter()
            .any(|i| matches!(i, Issue::NoVisibility { u: 0, v: 1, .. })));
        assert!(rep
            .issues
            .iter()
            .any(|i| matches!(i, Issue::BadCylinder { edge: 0, .. })));
    }

    #[test]
    fn two_traversals_fail_one_visibility() {
        let g = OnePlaneGraph::from_straight_line(
            &[(0, 0), (4, 0), (2, 1), (2, 3)],
            &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        )
        .unwrap();
        // stack 0 at z=0, 2 and 3 between, 1 on top: edge (0,1) crosses two bars
        let s = scene(vec![
            rect(0, 0, (0, 4), (-1, 1)),
            rect(2, 1, (0, 4), (-1, 1)),
            rect(3, 2, (0, 4), (-1, 1)),
            rect(1, 3, (0, 4), (-1, 1)),
        ]);
        let rep = verify_one_visible(&s, &g);
        assert!(rep
            .issues
            .contains(&Issue::TraversalCount { edge: 0, count: 2 }));
    }

    #[test]
    fn shared_bar_cannot_serve_two_edges() {
        let opts = vec![(1, vec![7]), (2, vec![7])];
        assert_eq!(unmatched_edges(&opts), vec![2]);
        let opts = vec![(1, vec![7, 8]), (2, vec![7])];
        assert!(unmatched_edges(&opts).is_empty());
    }

    #[test]
    fn volume_of_single_rectangle() {
        let s = scene(vec![rect(0, 0, (0, 2), (-1, 1))]);
        assert_eq!(verify_volume(&s, 1), (q(4), 4.0));
    }
}
