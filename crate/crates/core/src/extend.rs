//! Reinsertion of crossing pairs into the bar drawing of the skeleton.
//!
//! Every kite face owns two strip cells `S1 < S2` just left of its own
//! column `E`. Intermediate bars of the face are stretched into the strips
//! so that one crossing edge is seen directly and the other one crosses a
//! single intermediate bar. Each vertex is an intermediate of at most two
//! faces (the faces left and right of it), so choosing the traversed bar
//! per face is an orientation problem on a graph of maximum degree two.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bars::{
    cell_left, cell_mid, paths_of_walk, BarDrawing, Columns, StOrientation, Visibility,
};
use crate::embedding::Node;
use crate::error::{internal, Result};
use crate::graph::{EdgeId, VertexId};
use crate::skeleton::PlanarSkeleton;
use crate::verify::Issue;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FaceKind {
    RightWing,
    LeftWing,
    Diamond,
}

/// Corner roles of a kite face in the st-oriented skeleton.
#[derive(Clone, Debug)]
pub(crate) struct KiteRoles {
    pub kind: FaceKind,
    pub o: Node,
    pub u: Node,
    pub v: Node,
    pub d: Node,
    pub column: usize,
    /// Crossing edge joining `o` to `v` (wings) or `o` to `d` (diamond).
    pub diag_a: EdgeId,
    /// Crossing edge joining `u` to `d` (wings) or `u` to `v` (diamond).
    pub diag_b: EdgeId,
}

pub(crate) fn kite_roles(
    sk: &PlanarSkeleton,
    o: &StOrientation,
    cols: &Columns,
    k: usize,
) -> Result<KiteRoles> {
    let walk = sk.kite_walk(k);
    if walk.len() != 4 {
        return Err(internal(format!("kite face {k} has {} sides", walk.len())));
    }
    let p = paths_of_walk(sk, o, &walk).ok_or_else(|| internal("kite face is not an st-face"))?;
    let (kind, origin, u, v, dest) = match (p.left.len(), p.right.len()) {
        (2, 4) => (
            FaceKind::RightWing,
            p.right[0],
            p.right[1],
            p.right[2],
            p.right[3],
        ),
        (4, 2) => (
            FaceKind::LeftWing,
            p.left[0],
            p.left[1],
            p.left[2],
            p.left[3],
        ),
        (3, 3) => (
            FaceKind::Diamond,
            p.left[0],
            p.left[1],
            p.right[1],
            p.left[2],
        ),
        _ => return Err(internal("kite face is neither a wing nor a diamond")),
    };
    let id = |w: Node| sk.vertex_ids[w];
    let (a_ends, b_ends) = match kind {
        FaceKind::Diamond => ((origin, dest), (u, v)),
        _ => ((origin, v), (u, dest)),
    };
    let find = |(x, y): (Node, Node)| {
        sk.kites[k]
            .crossing
            .iter()
            .find(|c| (c[0], c[1]) == (id(x), id(y)) || (c[0], c[1]) == (id(y), id(x)))
            .map(|c| c[2])
            .ok_or_else(|| internal(format!("kite {k}: crossing edges do not match its corners")))
    };
    Ok(KiteRoles {
        kind,
        o: origin,
        u,
        v,
        d: dest,
        column: cols.kite_x[k],
        diag_a: find(a_ends)?,
        diag_b: find(b_ends)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Realization {
    Direct,
    Traversing(VertexId),
}

/// How each realized edge is seen, and which edge traverses each bar.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TraversalMap {
    pub edges: BTreeMap<EdgeId, Realization>,
    pub by_bar: BTreeMap<VertexId, EdgeId>,
}

impl TraversalMap {
    pub fn direct_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges
            .iter()
            .filter(|(_, r)| **r == Realization::Direct)
            .map(|(&e, _)| e)
    }

    pub fn traversed_by(&self, e: EdgeId) -> Option<VertexId> {
        match self.edges.get(&e) {
            Some(Realization::Traversing(w)) => Some(*w),
            _ => None,
        }
    }
}

/// Picks for every kite one of its intermediates `u`, `v` so that no
/// vertex is picked twice.
fn choose_traversed(n: usize, pairs: &[(Node, Node)]) -> Result<Vec<Node>> {
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(u, v)) in pairs.iter().enumerate() {
        at[u].push(k);
        at[v].push(k);
    }
    if let Some(w) = (0..n).find(|&w| at[w].len() > 2) {
        return Err(internal(format!(
            "node {w} is an intermediate of {} kites",
            at[w].len()
        )));
    }
    let mut pick = vec![usize::MAX; pairs.len()];
    let mut open: Vec<usize> = at.iter().map(Vec::len).collect();
    let mut used = vec![false; n];
    let mut stack: Vec<Node> = (0..n).filter(|&w| open[w] == 1).collect();
    while let Some(w) = stack.pop() {
        if used[w] || open[w] != 1 {
            continue;
        }
        let k = *at[w].iter().find(|&&k| pick[k] == usize::MAX).unwrap();
        pick[k] = w;
        used[w] = true;
        open[w] = 0;
        let (a, b) = pairs[k];
        let other = if a == w { b } else { a };
        open[other] -= 1;
        if open[other] == 1 && !used[other] {
            stack.push(other);
        }
    }
    // what is left are cycles: orient each one around
    for k0 in 0..pairs.len() {
        if pick[k0] != usize::MAX {
            continue;
        }
        let mut k = k0;
        let mut w = pairs[k0].1;
        loop {
            if used[w] {
                return Err(internal("traversal choice ran into a used bar"));
            }
            pick[k] = w;
            used[w] = true;
            match at[w].iter().copied().find(|&j| pick[j] == usize::MAX) {
                Some(j) => {
                    let (a, b) = pairs[j];
                    w = if a == w { b } else { a };
                    k = j;
                }
                None => break,
            }
        }
    }
    Ok(pick)
}

/// Extends bars and adds one visibility per crossing edge.
pub fn reinsert_crossings(
    sk: &PlanarSkeleton,
    o: &StOrientation,
    bd: &BarDrawing,
) -> Result<(BarDrawing, TraversalMap)> {
    let mut gamma = bd.clone();
    let mut tm = TraversalMap::default();
    for vis in &bd.visibilities {
        tm.edges.insert(vis.edge, Realization::Direct);
    }
    if sk.kites.is_empty() {
        return Ok((gamma, tm));
    }
    let cols = Columns::new(sk, o)?;
    let roles = (0..sk.kites.len())
        .map(|k| kite_roles(sk, o, &cols, k))
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(Node, Node)> = roles.iter().map(|r| (r.u, r.v)).collect();
    let pick = choose_traversed(sk.vertex_count(), &pairs)?;

    let mut cells: Vec<(usize, usize)> =
        (0..sk.vertex_count()).map(|v| cols.bar_cells(v)).collect();
    for (r, &w) in roles.iter().zip(&pick) {
        let [s1, s2] =
            cols.cell_s[r.column].ok_or_else(|| internal("kite column without strips"))?;
        let e = cols.cell_e[r.column];
        let on_v = w == r.v;
        // (node, extend-left-to) / (node, extend-right-to), then the two visibilities
        let (a_cell, b_cell) = match (r.kind, on_v) {
            (FaceKind::RightWing, true) => {
                cells[r.v].0 = s1;
                (s1, e)
            }
            (FaceKind::RightWing, false) => {
                cells[r.u].0 = s1;
                (e, s1)
            }
            (FaceKind::LeftWing, true) => {
                cells[r.u].1 = s1;
                cells[r.v].1 = s2;
                (s2, s1)
            }
            (FaceKind::LeftWing, false) => {
                cells[r.u].1 = s2;
                cells[r.v].1 = s1;
                (s1, s2)
            }
            (FaceKind::Diamond, true) => {
                cells[r.u].1 = s1;
                cells[r.v].0 = s1;
                (s2, s1)
            }
            (FaceKind::Diamond, false) => {
                cells[r.u].1 = s2;
                cells[r.v].0 = s2;
                (s1, s2)
            }
        };
        // the diagonal not containing the traversed bar's role crosses it
        let traversing = match (r.kind, on_v) {
            (FaceKind::Diamond, _) => r.diag_a,
            (_, true) => r.diag_b,
            (_, false) => r.diag_a,
        };
        let (a_ends, b_ends) = match r.kind {
            FaceKind::Diamond => ((r.o, r.d), (r.u, r.v)),
            _ => ((r.o, r.v), (r.u, r.d)),
        };
        let span = |(x, y): (Node, Node)| {
            let (zx, zy) = (o.number[x] as i64, o.number[y] as i64);
            (zx.min(zy), zx.max(zy))
        };
        for (edge, cell, ends) in [(r.diag_a, a_cell, a_ends), (r.diag_b, b_cell, b_ends)] {
            let (z_low, z_high) = span(ends);
            let traverses = if edge == traversing {
                vec![sk.vertex_ids[w]]
            } else {
                Vec::new()
            };
            if edge == traversing {
                tm.edges
                    .insert(edge, Realization::Traversing(sk.vertex_ids[w]));
                tm.by_bar.insert(sk.vertex_ids[w], edge);
            } else {
                tm.edges.insert(edge, Realization::Direct);
            }
            gamma.visibilities.push(Visibility {
                edge,
                x: cell_mid(cell),
                z_low,
                z_high,
                traverses,
            });
        }
    }
    for (v, bar) in gamma.bars.iter_mut().enumerate() {
        bar.x_l = cell_left(cells[v].0);
        bar.x_r = cell_left(cells[v].1) + 2;
    }
    Ok((gamma, tm))
}

/// Recomputes traversals of every visibility from the drawing alone.
pub fn audit_traversals(gamma: &BarDrawing) -> std::result::Result<TraversalMap, Vec<Issue>> {
    let mut issues = Vec::new();
    let mut tm = TraversalMap::default();
    let mut by_z: Vec<&crate::bars::Bar> = gamma.bars.iter().collect();
    by_z.sort_by_key(|b| b.z);
    let covers = |b: &crate::bars::Bar, x: i64| b.x_l <= x && x <= b.x_r;
    for vis in &gamma.visibilities {
        let lo = by_z.partition_point(|b| b.z < vis.z_low);
        let hi = by_z.partition_point(|b| b.z <= vis.z_high);
        let column = &by_z[lo..hi];
        let anchored = |z: i64| column.iter().any(|b| b.z == z && covers(b, vis.x));
        if !anchored(vis.z_low) || !anchored(vis.z_high) {
            issues.push(Issue::BadCylinder {
                edge: vis.edge,
                reason: "visibility does not end on two bars".into(),
            });
        }
        let crossed: Vec<VertexId> = column
            .iter()
            .filter(|b| vis.z_low < b.z && b.z < vis.z_high && covers(b, vis.x))
            .map(|b| b.v)
            .collect();
        match crossed.as_slice() {
            [] => {
                tm.edges.insert(vis.edge, Realization::Direct);
            }
            [w] => {
                tm.edges.insert(vis.edge, Realization::Traversing(*w));
                if let Some(prev) = tm.by_bar.insert(*w, vis.edge) {
                    issues.push(Issue::BarOverused {
                        edges: vec![prev, vis.edge],
                    });
                }
            }
            many => issues.push(Issue::TraversalCount {
                edge: vis.edge,
                count: many.len(),
            }),
        }
    }
    if issues.is_empty() {
        Ok(tm)
    } else {
        Err(issues)
    }
}
