//! Lifting the bar 1-visibility drawing to rectangles and cylinders in 3D.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

use serde::Serialize;

use crate::bars::{BarDrawing, Columns, StOrientation};
use crate::error::{internal, Error, Result};
use crate::extend::{kite_roles, FaceKind, TraversalMap};
use crate::graph::{EdgeId, OnePlaneGraph, VertexId};
use crate::scene::{q, ratio, Cylinder, Rect, ZprScene, Q};
use crate::skeleton::PlanarSkeleton;

/// A classified kite face of the oriented skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceShape {
    /// Index of the crossing pair in [`PlanarSkeleton::kites`].
    pub kite: usize,
    pub kind: FaceKind,
    pub o: VertexId,
    pub u: VertexId,
    pub v: VertexId,
    pub d: VertexId,
    pub crossing: [EdgeId; 2],
    /// Skeleton edges of the left and right path, from `o` to `d`.
    pub left_path: Vec<EdgeId>,
    pub right_path: Vec<EdgeId>,
    /// The bar crossed by one of the two crossing edges, if any.
    pub traversed: Option<VertexId>,
}

pub fn classify_faces(
    sk: &PlanarSkeleton,
    o: &StOrientation,
    tm: &TraversalMap,
) -> Result<Vec<FaceShape>> {
    if sk.kites.is_empty() {
        return Ok(Vec::new());
    }
    let cols = Columns::new(sk, o)?;
    let id = |w| sk.vertex_ids[w];
    (0..sk.kites.len())
        .map(|k| {
            let r = kite_roles(sk, o, &cols, k)?;
            let walk = sk.kite_walk(k);
            let p = crate::bars::paths_of_walk(sk, o, &walk).expect("kite roles found paths");
            let traversed = [r.diag_a, r.diag_b]
                .iter()
                .find_map(|&e| tm.traversed_by(e));
            Ok(FaceShape {
                kite: k,
                kind: r.kind,
                o: id(r.o),
                u: id(r.u),
                v: id(r.v),
                d: id(r.d),
                crossing: [r.diag_a, r.diag_b],
                left_path: p.left_links.iter().map(|&l| sk.edges[l].id).collect(),
                right_path: p.right_links.iter().map(|&l| sk.edges[l].id).collect(),
                traversed,
            })
        })
        .collect()
}

/// Directions assigned to some skeleton edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PartialOrientation {
    pub label: u8,
    /// Edge id to (from, to).
    pub arcs: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

impl PartialOrientation {
    pub fn new(label: u8) -> Self {
        PartialOrientation {
            label,
            arcs: BTreeMap::new(),
        }
    }

    pub fn orient(&mut self, edge: EdgeId, from: VertexId, to: VertexId) -> Result<()> {
        if self.arcs.insert(edge, (from, to)).is_some() {
            return Err(internal(format!(
                "edge {edge} oriented twice in O{}",
                self.label
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layer {
    Above,
    Below,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Orientations {
    pub o1: PartialOrientation,
    pub o2: PartialOrientation,
    /// Side of the traversed rectangle for each traversing edge.
    pub layer: BTreeMap<EdgeId, Layer>,
}

impl Orientations {
    pub fn to_json(&self) -> String {
        let arcs = |po: &PartialOrientation| -> Vec<[u64; 3]> {
            po.arcs.iter().map(|(&e, &(a, b))| [a, b, e]).collect()
        };
        serde_json::to_string_pretty(&serde_json::json!({
            "o1": arcs(&self.o1),
            "o2": arcs(&self.o2),
            "layer": self.layer,
        }))
        .expect("orientations serialize")
    }
}

/// Applies the wing and diamond rules to every kite whose crossing pair
/// traverses a bar.
pub fn build_orientations(shapes: &[FaceShape]) -> Result<Orientations> {
    let mut out = Orientations {
        o1: PartialOrientation::new(1),
        o2: PartialOrientation::new(2),
        ..Default::default()
    };
    for f in shapes {
        let Some(w) = f.traversed else { continue };
        let on_v = if w == f.v {
            true
        } else if w == f.u {
            false
        } else {
            return Err(internal(format!(
                "kite {} traverses a non-intermediate bar",
                f.kite
            )));
        };
        let [diag_a, diag_b] = f.crossing;
        let (po, layer, edge) = match f.kind {
            FaceKind::RightWing | FaceKind::LeftWing => {
                let path = if f.kind == FaceKind::RightWing {
                    &f.right_path
                } else {
                    &f.left_path
                };
                let po = if f.kind == FaceKind::RightWing {
                    &mut out.o1
                } else {
                    &mut out.o2
                };
                let (ou, uv, vd) = (path[0], path[1], path[2]);
                if on_v {
                    po.orient(uv, f.u, f.v)?;
                    po.orient(vd, f.d, f.v)?;
                } else {
                    po.orient(ou, f.o, f.u)?;
                    po.orient(uv, f.v, f.u)?;
                }
                let layer = if f.kind == FaceKind::RightWing {
                    Layer::Above
                } else {
                    Layer::Below
                };
                (po.label, layer, if on_v { diag_b } else { diag_a })
            }
            FaceKind::Diamond => {
                if on_v {
                    out.o1.orient(f.right_path[0], f.o, f.v)?;
                    out.o1.orient(f.right_path[1], f.d, f.v)?;
                    (1, Layer::Above, diag_a)
                } else {
                    out.o2.orient(f.left_path[0], f.o, f.u)?;
                    out.o2.orient(f.left_path[1], f.d, f.u)?;
                    (2, Layer::Below, diag_a)
                }
            }
        };
        debug_assert_eq!(po, if layer == Layer::Above { 1 } else { 2 });
        out.layer.insert(edge, layer);
    }
    Ok(out)
}

fn adjacency(po: &PartialOrientation) -> BTreeMap<VertexId, Vec<VertexId>> {
    let mut out: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for &(a, b) in po.arcs.values() {
        out.entry(a).or_default().push(b);
        out.entry(b).or_default();
    }
    out
}

/// `Ok` when the oriented edges contain no directed cycle, otherwise the
/// vertices of one cycle in order.
pub fn check_acyclic(po: &PartialOrientation) -> std::result::Result<(), Vec<VertexId>> {
    let adj = adjacency(po);
    let mut indeg: HashMap<VertexId, usize> = adj.keys().map(|&v| (v, 0)).collect();
    for outs in adj.values() {
        for w in outs {
            *indeg.get_mut(w).unwrap() += 1;
        }
    }
    let mut queue: Vec<VertexId> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| v)
        .collect();
    let mut removed = HashSet::new();
    while let Some(v) = queue.pop() {
        removed.insert(v);
        for w in &adj[&v] {
            let d = indeg.get_mut(w).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push(*w);
            }
        }
    }
    if removed.len() == adj.len() {
        return Ok(());
    }
    // every remaining vertex has a remaining successor; walk until a repeat
    let mut v = *adj.keys().find(|v| !removed.contains(v)).unwrap();
    let mut pos: HashMap<VertexId, usize> = HashMap::new();
    let mut path = Vec::new();
    while !pos.contains_key(&v) {
        pos.insert(v, path.len());
        path.push(v);
        v = *adj[&v].iter().find(|w| !removed.contains(w)).unwrap();
    }
    Err(path[pos[&v]..].to_vec())
}

/// A permutation of the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TotalOrder(pub Vec<VertexId>);

impl TotalOrder {
    pub fn extends(&self, po: &PartialOrientation) -> bool {
        let at: HashMap<VertexId, usize> =
            self.0.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        po.arcs
            .values()
            .all(|(a, b)| matches!((at.get(a), at.get(b)), (Some(i), Some(j)) if i < j))
    }
}

/// Topological order of every weakly connected oriented part (parts by
/// smallest vertex id, ties inside a part by id), then the vertices that
/// no oriented edge touches, by id.
pub fn total_order(po: &PartialOrientation, vertices: &[VertexId]) -> Result<TotalOrder> {
    if let Err(cycle) = check_acyclic(po) {
        return Err(Error::Cyclic(cycle));
    }
    let adj = adjacency(po);
    let mut comp: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    {
        // union-find over arcs, labelled by smallest member
        let mut parent: HashMap<VertexId, VertexId> = adj.keys().map(|&v| (v, v)).collect();
        fn find(p: &mut HashMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let mut r = v;
            while p[&r] != r {
                r = p[&r];
            }
            let mut x = v;
            while p[&x] != r {
                let nx = p[&x];
                p.insert(x, r);
                x = nx;
            }
            r
        }
        for &(a, b) in po.arcs.values() {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        }
        for &v in adj.keys() {
            comp.insert(v, find(&mut parent, v));
        }
    }
    let mut indeg: HashMap<VertexId, usize> = adj.keys().map(|&v| (v, 0)).collect();
    for outs in adj.values() {
        for w in outs {
            *indeg.get_mut(w).unwrap() += 1;
        }
    }
    let mut order = Vec::with_capacity(vertices.len());
    let mut heap: BinaryHeap<Reverse<(VertexId, VertexId)>> = indeg
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| Reverse((comp[&v], v)))
        .collect();
    while let Some(Reverse((_, v))) = heap.pop() {
        order.push(v);
        for &w in &adj[&v] {
            let d = indeg.get_mut(&w).unwrap();
            *d -= 1;
            if *d == 0 {
                heap.push(Reverse((comp[&w], w)));
            }
        }
    }
    let mut rest: Vec<VertexId> = vertices
        .iter()
        .copied()
        .filter(|v| !adj.contains_key(v))
        .collect();
    rest.sort_unstable();
    order.extend(rest);
    if order.len() != vertices.len() {
        return Err(Error::NotPermutation(vertices.len()));
    }
    Ok(TotalOrder(order))
}

/// Rectangles of height 2 around Y=0 over the bars of a drawing.
pub fn preliminary_rects(gamma: &BarDrawing) -> Vec<Rect> {
    gamma
        .bars
        .iter()
        .map(|b| Rect {
            v: b.v,
            z: b.z,
            x_l: q(b.x_l),
            x_r: q(b.x_r),
            y_bot: q(-1),
            y_top: q(1),
        })
        .collect()
}

/// Gives the i-th vertex of σ₁ top side `n - i + 1` and the i-th vertex of
/// σ₂ bottom side `i - n - 1`, counting from 1.
pub fn assign_y(sigma1: &TotalOrder, sigma2: &TotalOrder, rects: &[Rect]) -> Result<Vec<Rect>> {
    let n = rects.len();
    let pos = |s: &TotalOrder| -> Result<HashMap<VertexId, usize>> {
        let m: HashMap<VertexId, usize> =
            s.0.iter().enumerate().map(|(i, &v)| (v, i + 1)).collect();
        if s.0.len() != n || m.len() != n || rects.iter().any(|r| !m.contains_key(&r.v)) {
            return Err(Error::NotPermutation(n));
        }
        Ok(m)
    };
    let (p1, p2) = (pos(sigma1)?, pos(sigma2)?);
    let n = n as i64;
    Ok(rects
        .iter()
        .map(|r| Rect {
            y_top: q(n - p1[&r.v] as i64 + 1),
            y_bot: q(p2[&r.v] as i64 - n - 1),
            ..r.clone()
        })
        .collect())
}

pub const EPSILON: (i64, i64) = (1, 4);

/// Cylinders for the edges of `g`: direct ones on Y=0, traversing ones half
/// a unit beyond the traversed rectangle.
pub fn place_cylinders(
    gamma: &BarDrawing,
    tm: &TraversalMap,
    orientations: &Orientations,
    rects: &[Rect],
    g: &OnePlaneGraph,
) -> Result<ZprScene> {
    let eps = ratio(EPSILON.0, EPSILON.1);
    let half = ratio(1, 2);
    let by_v: HashMap<VertexId, &Rect> = rects.iter().map(|r| (r.v, r)).collect();
    let vis: HashMap<EdgeId, i64> = gamma.visibilities.iter().map(|v| (v.edge, v.x)).collect();
    let mut cylinders = Vec::with_capacity(g.edges.len());
    for e in &g.edges {
        let x = *vis
            .get(&e.id)
            .ok_or_else(|| internal(format!("edge {} has no visibility", e.id)))?;
        let (a, b) = match (by_v.get(&e.u), by_v.get(&e.v)) {
            (Some(a), Some(b)) => (*a, *b),
            _ => {
                return Err(internal(format!(
                    "edge {} has a missing end rectangle",
                    e.id
                )))
            }
        };
        let y: Q = match tm.traversed_by(e.id) {
            None => q(0),
            Some(w) => {
                let rw = by_v[&w];
                let layer = orientations
                    .layer
                    .get(&e.id)
                    .ok_or_else(|| internal(format!("traversing edge {} has no layer", e.id)))?;
                let (y, clear) = match layer {
                    Layer::Above => {
                        let y = rw.y_top + half;
                        (y, a.y_top.min(b.y_top) >= y + eps)
                    }
                    Layer::Below => {
                        let y = rw.y_bot - half;
                        (y, a.y_bot.max(b.y_bot) <= y - eps)
                    }
                };
                if !clear {
                    return Err(internal(format!(
                        "edge {} does not clear rectangle {w}",
                        e.id
                    )));
                }
                y
            }
        };
        cylinders.push(Cylinder {
            edge: e.id,
            x: q(x),
            y,
            z_low: a.z.min(b.z),
            z_high: a.z.max(b.z),
        });
    }
    Ok(ZprScene {
        epsilon: eps,
        rects: rects.to_vec(),
        cylinders,
    })
}

/// The scene of directly seen edges over the preliminary rectangles.
pub fn direct_subscene(gamma: &BarDrawing, tm: &TraversalMap) -> ZprScene {
    let rects = preliminary_rects(gamma);
    let cylinders = gamma
        .visibilities
        .iter()
        .filter(|v| tm.traversed_by(v.edge).is_none())
        .map(|v| Cylinder {
            edge: v.edge,
            x: q(v.x),
            y: q(0),
            z_low: v.z_low,
            z_high: v.z_high,
        })
        .collect();
    ZprScene {
        epsilon: ratio(EPSILON.0, EPSILON.1),
        rects,
        cylinders,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn po(label: u8, arcs: &[(EdgeId, VertexId, VertexId)]) -> PartialOrientation {
        let mut p = PartialOrientation::new(label);
        for &(e, a, b) in arcs {
            p.orient(e, a, b).unwrap();
        }
        p
    }

    #[test]
    fn two_arcs_into_one_vertex_are_acyclic() {
        assert!(check_acyclic(&po(1, &[(0, 1, 3), (1, 2, 3)])).is_ok());
    }

    #[test]
    fn back_and_forth_is_a_cycle() {
        let cyc = check_acyclic(&po(1, &[(0, 1, 2), (1, 2, 1)])).unwrap_err();
        let mut c = cyc.clone();
        c.sort();
        assert_eq!(c, vec![1, 2]);
        assert!(matches!(
            total_order(&po(1, &[(0, 1, 2), (1, 2, 1)]), &[1, 2]),
            Err(Error::Cyclic(_))
        ));
    }

    #[test]
    fn orienting_twice_fails() {
        let mut p = po(2, &[(4, 1, 2)]);
        assert!(p.orient(4, 2, 1).is_err());
    }

    #[test]
    fn unoriented_vertices_come_last_in_id_order() {
        let sigma = total_order(&PartialOrientation::new(1), &[2, 0, 1]).unwrap();
        assert_eq!(sigma.0, vec![0, 1, 2]);
        let sigma = total_order(&po(1, &[(0, 5, 6), (1, 6, 7)]), &[8, 7, 6, 5]).unwrap();
        assert_eq!(sigma.0, vec![5, 6, 7, 8]);
    }

    #[test]
    fn components_follow_their_smallest_vertex() {
        let p = po(1, &[(0, 9, 3), (1, 4, 1)]);
        let sigma = total_order(&p, &[1, 3, 4, 9, 0]).unwrap();
        assert_eq!(sigma.0, vec![4, 1, 9, 3, 0]);
        assert!(sigma.extends(&p));
    }

    #[test]
    fn y_formulas() {
        let rects: Vec<Rect> = (0..8)
            .map(|v| Rect {
                v,
                z: v as i64,
                x_l: q(0),
                x_r: q(2),
                y_bot: q(-1),
                y_top: q(1),
            })
            .collect();
        let s1 = TotalOrder(vec![7, 1, 6, 4, 2, 3, 5, 0]);
        let s2 = TotalOrder(vec![6, 1, 2, 3, 4, 5, 7, 0]);
        let out = assign_y(&s1, &s2, &rects).unwrap();
        assert_eq!(out[7].y_top, q(8));
        assert_eq!(out[0].y_top, q(1));
        assert_eq!(out[6].y_bot, q(-8));
        assert_eq!(out[0].y_bot, q(-1));
        assert!(assign_y(&TotalOrder(vec![0, 1]), &s2, &rects).is_err());
        let one = vec![rects[0].clone()];
        let out = assign_y(&TotalOrder(vec![0]), &TotalOrder(vec![0]), &one).unwrap();
        assert_eq!((out[0].y_bot, out[0].y_top), (q(-1), q(1)));
    }
}
