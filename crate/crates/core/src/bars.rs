//! st-orientation of the skeleton and its weak bar visibility drawing.
//!
//! Vertices get their st-number as z. Faces of the skeleton form a dual
//! DAG (left face to right face of every edge); a topological numbering X
//! of it lays out columns. Column k becomes one grid cell `E_k`, preceded by
//! two spare strip cells `S1_k`, `S2_k` when face k hosts a crossing pair.
//! Cell c spans x in `[2c, 2c + 2]` and visibilities run at the odd
//! abscissa `2c + 1`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::embedding::{link_of, twin, Dart, Link, Node};
use crate::error::{internal, Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::skeleton::PlanarSkeleton;

/// Direction of every skeleton edge together with source and sink.
#[derive(Clone, Debug)]
pub struct StOrientation {
    pub s: VertexId,
    pub t: VertexId,
    pub(crate) s_node: Node,
    pub(crate) t_node: Node,
    /// st-number of each node, used as its z level.
    pub(crate) number: Vec<usize>,
    /// Per link: true when directed from `tail(2l)` to `head(2l)`.
    pub(crate) forward: Vec<bool>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct OrientDump {
    s: VertexId,
    t: VertexId,
    z: Vec<(VertexId, usize)>,
    arcs: Vec<[u64; 3]>,
}

impl StOrientation {
    pub(crate) fn dart_is_forward(&self, d: Dart) -> bool {
        (d & 1 == 0) == self.forward[link_of(d)]
    }

    /// The dart of link `l` that follows its direction.
    pub(crate) fn forward_dart(&self, l: Link) -> Dart {
        if self.forward[l] {
            2 * l
        } else {
            2 * l + 1
        }
    }

    pub fn z_of(&self, sk: &PlanarSkeleton, v: VertexId) -> Option<usize> {
        sk.vertex_ids
            .iter()
            .position(|&w| w == v)
            .map(|i| self.number[i])
    }

    /// Directed skeleton edges as `[from, to, edge id]`.
    pub fn arcs(&self, sk: &PlanarSkeleton) -> Vec<[u64; 3]> {
        (0..sk.edges.len())
            .map(|l| {
                let d = self.forward_dart(l);
                [
                    sk.vertex_ids[sk.tail(d)],
                    sk.vertex_ids[sk.head(d)],
                    sk.edges[l].id,
                ]
            })
            .collect()
    }

    pub fn to_json(&self, sk: &PlanarSkeleton) -> String {
        let dump = OrientDump {
            s: self.s,
            t: self.t,
            z: sk
                .vertex_ids
                .iter()
                .copied()
                .zip(self.number.iter().copied())
                .collect(),
            arcs: self.arcs(sk),
        };
        serde_json::to_string_pretty(&dump).expect("orientation serializes")
    }
}

/// Picks s and t as the lexicographically smallest outer edge and orients
/// the skeleton by an st-numbering.
pub fn choose_st_and_orient(sk: &PlanarSkeleton) -> Result<StOrientation> {
    let n = sk.vertex_count();
    if n == 0 {
        return Err(Error::EmptyInstance);
    }
    if n == 1 {
        return Ok(StOrientation {
            s: sk.vertex_ids[0],
            t: sk.vertex_ids[0],
            s_node: 0,
            t_node: 0,
            number: vec![0],
            forward: Vec::new(),
        });
    }
    let key = |d: Dart| {
        let (a, b) = (sk.vertex_ids[sk.tail(d)], sk.vertex_ids[sk.head(d)]);
        (a.min(b), a.max(b), sk.edges[link_of(d)].id)
    };
    let st_dart = sk
        .outer_darts()
        .into_iter()
        .min_by_key(|&d| key(d))
        .ok_or_else(|| internal("skeleton has no outer face"))?;
    let st_dart = if sk.vertex_ids[sk.tail(st_dart)] < sk.vertex_ids[sk.head(st_dart)] {
        st_dart
    } else {
        twin(st_dart)
    };
    let number = st_number(sk, st_dart)?;
    let forward = (0..sk.edges.len())
        .map(|l| number[sk.tail(2 * l)] < number[sk.head(2 * l)])
        .collect();
    let (s_node, t_node) = (sk.tail(st_dart), sk.head(st_dart));
    Ok(StOrientation {
        s: sk.vertex_ids[s_node],
        t: sk.vertex_ids[t_node],
        s_node,
        t_node,
        number,
        forward,
    })
}

/// st-numbering by a DFS that starts along `st_dart`, followed by the
/// signed list construction over the preorder.
fn st_number(sk: &PlanarSkeleton, st_dart: Dart) -> Result<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = sk.vertex_count();
    let (s, t) = (sk.tail(st_dart), sk.head(st_dart));
    let mut pre = vec![UNSEEN; n];
    let mut parent = vec![UNSEEN; n];
    let mut parent_link = vec![UNSEEN; n];
    let mut low = (0..n).collect::<Vec<Node>>();
    let mut order = Vec::with_capacity(n);

    let ring = |v: Node| -> Vec<Dart> {
        let mut r = sk.map.darts_around(v);
        if v == s {
            let i = r.iter().position(|&d| d == st_dart).unwrap();
            r.rotate_left(i);
        }
        r
    };
    pre[s] = 0;
    order.push(s);
    let mut stack: Vec<(Node, Vec<Dart>, usize)> = vec![(s, ring(s), 0)];
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        if top.2 == top.1.len() {
            stack.pop();
            if let Some(up) = stack.last() {
                let p = up.0;
                if pre[low[v]] < pre[low[p]] {
                    low[p] = low[v];
                }
            }
            continue;
        }
        let d = top.1[top.2];
        top.2 += 1;
        let w = sk.head(d);
        if pre[w] == UNSEEN {
            pre[w] = order.len();
            order.push(w);
            parent[w] = v;
            parent_link[w] = link_of(d);
            stack.push((w, ring(w), 0));
        } else if link_of(d) != parent_link[v] && pre[w] < pre[low[v]] {
            low[v] = w;
        }
    }
    if order.len() != n {
        return Err(internal("skeleton is disconnected"));
    }
    if order[1] != t || (2..n).any(|i| parent[order[i]] == s) {
        return Err(internal("source is a cut vertex of the skeleton"));
    }
    for &v in &order[2..] {
        if pre[low[v]] >= pre[parent[v]] {
            return Err(internal(format!(
                "skeleton vertex {} is a cut vertex",
                sk.vertex_ids[parent[v]]
            )));
        }
    }

    let (mut next, mut prev) = (vec![UNSEEN; n], vec![UNSEEN; n]);
    let mut plus = vec![false; n];
    next[s] = t;
    prev[t] = s;
    for &v in &order[2..] {
        let p = parent[v];
        if plus[low[v]] {
            let after = next[p];
            next[p] = v;
            prev[v] = p;
            next[v] = after;
            if after != UNSEEN {
                prev[after] = v;
            }
            plus[p] = false;
        } else {
            let before = prev[p];
            prev[p] = v;
            next[v] = p;
            prev[v] = before;
            if before != UNSEEN {
                next[before] = v;
            }
            plus[p] = true;
        }
    }
    let mut number = vec![0; n];
    let mut v = s;
    for k in 0..n {
        number[v] = k;
        v = next[v];
    }
    Ok(number)
}

/// Checks the planar st-graph properties: single source and sink on the
/// outer face, z increasing along edges, and bimodal rotations.
pub fn check_st(sk: &PlanarSkeleton, o: &StOrientation) -> std::result::Result<(), String> {
    let n = sk.vertex_count();
    if n == 1 {
        return Ok(());
    }
    let mut ins = vec![0; n];
    let mut outs = vec![0; n];
    for l in 0..sk.edges.len() {
        let d = o.forward_dart(l);
        if o.number[sk.tail(d)] >= o.number[sk.head(d)] {
            return Err(format!("edge {} does not increase z", sk.edges[l].id));
        }
        outs[sk.tail(d)] += 1;
        ins[sk.head(d)] += 1;
    }
    for v in 0..n {
        let id = sk.vertex_ids[v];
        if ins[v] == 0 && v != o.s_node {
            return Err(format!("extra source {id}"));
        }
        if outs[v] == 0 && v != o.t_node {
            return Err(format!("extra sink {id}"));
        }
        let ring = sk.map.darts_around(v);
        let changes = (0..ring.len())
            .filter(|&i| {
                o.dart_is_forward(ring[i]) != o.dart_is_forward(ring[(i + 1) % ring.len()])
            })
            .count();
        if changes > 2 {
            return Err(format!("vertex {id} is not bimodal"));
        }
    }
    let outer: Vec<Node> = sk.outer_darts().iter().map(|&d| sk.tail(d)).collect();
    if !outer.contains(&o.s_node) || !outer.contains(&o.t_node) {
        return Err("source or sink not on the outer face".into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Bar {
    pub v: VertexId,
    pub z: i64,
    pub x_l: i64,
    pub x_r: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Visibility {
    pub edge: EdgeId,
    pub x: i64,
    pub z_low: i64,
    pub z_high: i64,
    pub traverses: Vec<VertexId>,
}

/// Bars in vertex order and one visibility per realized edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BarDrawing {
    pub bars: Vec<Bar>,
    pub visibilities: Vec<Visibility>,
}

impl BarDrawing {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("drawing serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn bar(&self, v: VertexId) -> Option<&Bar> {
        self.bars.iter().find(|b| b.v == v)
    }

    pub fn visibility(&self, e: EdgeId) -> Option<&Visibility> {
        self.visibilities.iter().find(|vis| vis.edge == e)
    }
}

/// Column structure shared by the bar layout and the crossing reinsertion.
#[derive(Clone, Debug)]
pub(crate) struct Columns {
    /// Dual node (X value) left and right of each link.
    pub left_x: Vec<usize>,
    /// Per node: first column and one past its last column.
    pub lo_x: Vec<usize>,
    pub hi_x: Vec<usize>,
    /// Per column X: cell index of `E_X`, and of the strip cells if any.
    pub cell_e: Vec<usize>,
    pub cell_s: Vec<Option<[usize; 2]>>,
    /// Per kite: its column.
    pub kite_x: Vec<usize>,
}

pub(crate) fn cell_left(c: usize) -> i64 {
    2 * c as i64
}

pub(crate) fn cell_mid(c: usize) -> i64 {
    2 * c as i64 + 1
}

impl Columns {
    pub fn new(sk: &PlanarSkeleton, o: &StOrientation) -> Result<Columns> {
        let faces = sk.map.faces();
        let nf = faces.len();
        let outer = sk
            .outer
            .map(|d| faces.of_dart[d])
            .ok_or_else(|| internal("no outer face"))?;
        // dual nodes: face ids, with the outer face standing for s* and nf for t*
        let links = sk.edges.len();
        let mut left = vec![0; links];
        let mut right = vec![0; links];
        let mut indeg = vec![0usize; nf + 1];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); nf + 1];
        for l in 0..links {
            let d = o.forward_dart(l);
            let lf = faces.of_dart[d];
            let rf = faces.of_dart[twin(d)];
            left[l] = lf;
            right[l] = if rf == outer { nf } else { rf };
            out[left[l]].push(right[l]);
            indeg[right[l]] += 1;
        }
        let mut x_of = vec![usize::MAX; nf + 1];
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..=nf).filter(|&f| indeg[f] == 0).map(Reverse).collect();
        let mut next = 0;
        while let Some(Reverse(f)) = heap.pop() {
            x_of[f] = next;
            next += 1;
            for &g in &out[f] {
                indeg[g] -= 1;
                if indeg[g] == 0 {
                    heap.push(Reverse(g));
                }
            }
        }
        if next != nf + 1 || x_of[outer] != 0 {
            return Err(internal("dual of the skeleton is not an st-DAG"));
        }
        let left_x: Vec<usize> = left.iter().map(|&f| x_of[f]).collect();
        let right_x: Vec<usize> = right.iter().map(|&f| x_of[f]).collect();
        let n = sk.vertex_count();
        let mut lo_x = vec![usize::MAX; n];
        let mut hi_x = vec![0; n];
        for l in 0..links {
            for v in [sk.tail(2 * l), sk.head(2 * l)] {
                lo_x[v] = lo_x[v].min(left_x[l]);
                hi_x[v] = hi_x[v].max(right_x[l]);
            }
        }
        let kite_x: Vec<usize> = (0..sk.kites.len())
            .map(|k| x_of[faces.of_dart[sk.kites[k].dart]])
            .collect();
        let columns = nf; // X(t*) = nf; columns 0..nf carry cells
        let mut is_kite = vec![false; columns];
        for &x in &kite_x {
            is_kite[x] = true;
        }
        let mut cell_e = Vec::with_capacity(columns);
        let mut cell_s = Vec::with_capacity(columns);
        let mut c = 0;
        for &kite in &is_kite {
            if kite {
                cell_s.push(Some([c, c + 1]));
                c += 2;
            } else {
                cell_s.push(None);
            }
            cell_e.push(c);
            c += 1;
        }
        Ok(Columns {
            left_x,
            lo_x,
            hi_x,
            cell_e,
            cell_s,
            kite_x,
        })
    }

    /// First and last cell covered by node `v` before any extension.
    pub fn bar_cells(&self, v: Node) -> (usize, usize) {
        (self.cell_e[self.lo_x[v]], self.cell_e[self.hi_x[v] - 1])
    }
}

/// Weak bar visibility drawing of the st-oriented skeleton.
pub fn bars(sk: &PlanarSkeleton, o: &StOrientation) -> Result<BarDrawing> {
    if sk.vertex_count() == 1 {
        return Ok(BarDrawing {
            bars: vec![Bar {
                v: sk.vertex_ids[0],
                z: 0,
                x_l: 0,
                x_r: 2,
            }],
            visibilities: Vec::new(),
        });
    }
    let cols = Columns::new(sk, o)?;
    Ok(layout(sk, o, &cols))
}

pub(crate) fn layout(sk: &PlanarSkeleton, o: &StOrientation, cols: &Columns) -> BarDrawing {
    let bars = (0..sk.vertex_count())
        .map(|v| {
            let (a, b) = cols.bar_cells(v);
            Bar {
                v: sk.vertex_ids[v],
                z: o.number[v] as i64,
                x_l: cell_left(a),
                x_r: cell_left(b) + 2,
            }
        })
        .collect();
    let visibilities = (0..sk.edges.len())
        .map(|l| {
            let d = o.forward_dart(l);
            Visibility {
                edge: sk.edges[l].id,
                x: cell_mid(cols.cell_e[cols.left_x[l]]),
                z_low: o.number[sk.tail(d)] as i64,
                z_high: o.number[sk.head(d)] as i64,
                traverses: Vec::new(),
            }
        })
        .collect();
    BarDrawing { bars, visibilities }
}

/// Origin, destination and the two directed boundary paths of an inner
/// face, as vertex ids from origin to destination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePaths {
    pub origin: VertexId,
    pub destination: VertexId,
    pub left: Vec<VertexId>,
    pub right: Vec<VertexId>,
}

/// Node-level form of [`FacePaths`].
#[derive(Clone, Debug)]
pub(crate) struct Paths {
    pub left: Vec<Node>,
    pub right: Vec<Node>,
    pub left_links: Vec<Link>,
    pub right_links: Vec<Link>,
}

pub(crate) fn paths_of_walk(
    sk: &PlanarSkeleton,
    o: &StOrientation,
    walk: &[Dart],
) -> Option<Paths> {
    let k = walk.len();
    let fwd: Vec<bool> = walk.iter().map(|&d| o.dart_is_forward(d)).collect();
    let starts: Vec<usize> = (0..k)
        .filter(|&i| fwd[i] && !fwd[(i + k - 1) % k])
        .collect();
    if starts.len() != 1 {
        return None;
    }
    let mut rot = walk.to_vec();
    rot.rotate_left(starts[0]);
    let split = rot.iter().position(|&d| !o.dart_is_forward(d))?;
    let (right_darts, left_darts) = rot.split_at(split);
    let mut right = vec![sk.tail(right_darts[0])];
    right.extend(right_darts.iter().map(|&d| sk.head(d)));
    let mut left: Vec<Node> = left_darts.iter().map(|&d| sk.tail(d)).collect();
    left.push(sk.head(*left_darts.last().unwrap()));
    left.reverse();
    let mut left_links: Vec<Link> = left_darts.iter().map(|&d| link_of(d)).collect();
    left_links.reverse();
    Some(Paths {
        left,
        right,
        left_links,
        right_links: right_darts.iter().map(|&d| link_of(d)).collect(),
    })
}

/// Left and right paths of inner face `face` (an index into
/// [`PlanarSkeleton::face_walks`]).
pub fn left_right_paths(sk: &PlanarSkeleton, o: &StOrientation, face: usize) -> Result<FacePaths> {
    let faces = sk.map.faces();
    if sk.outer.map(|d| faces.of_dart[d]) == Some(face) {
        return Err(internal("the outer face has no left and right path"));
    }
    let walk = faces
        .walks
        .get(face)
        .ok_or_else(|| internal("unknown face"))?;
    let p = paths_of_walk(sk, o, walk).ok_or_else(|| internal("face is not an st-face"))?;
    let ids = |v: &[Node]| v.iter().map(|&w| sk.vertex_ids[w]).collect::<Vec<_>>();
    Ok(FacePaths {
        origin: sk.vertex_ids[p.left[0]],
        destination: sk.vertex_ids[*p.left.last().unwrap()],
        left: ids(&p.left),
        right: ids(&p.right),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::augment;
    use crate::graph::OnePlaneGraph;

    fn skeleton(points: &[(i64, i64)], edges: &[(usize, usize)]) -> PlanarSkeleton {
        let g = OnePlaneGraph::from_straight_line(points, edges).unwrap();
        PlanarSkeleton::from_augmented(&augment(&g).unwrap())
    }

    #[test]
    fn single_edge_orients_s_to_t() {
        let sk = skeleton(&[(0, 0), (1, 0)], &[(0, 1)]);
        let o = choose_st_and_orient(&sk).unwrap();
        assert_eq!((o.s, o.t), (0, 1));
        let bd = bars(&sk, &o).unwrap();
        assert_eq!(bd.bars[0].z, 0);
        assert_eq!(bd.bars[1].z, 1);
        assert_eq!(bd.visibilities.len(), 1);
        let vis = &bd.visibilities[0];
        for b in &bd.bars {
            assert!(b.x_l < vis.x && vis.x < b.x_r);
        }
    }

    #[test]
    fn triangulated_square_is_st_graph() {
        let sk = skeleton(
            &[(0, 0), (2, 0), (2, 2), (0, 2)],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        );
        let o = choose_st_and_orient(&sk).unwrap();
        check_st(&sk, &o).unwrap();
        assert_eq!(o.s, 0);
        let bd = bars(&sk, &o).unwrap();
        assert_eq!(bd.visibilities.len(), sk.edges.len());
        assert!(bd.visibilities.iter().all(|v| v.z_low < v.z_high));
    }

    #[test]
    fn path_drawing_stacks_bars() {
        let sk = skeleton(&[(0, 0), (1, 0), (2, 1)], &[(0, 1), (1, 2)]);
        let o = choose_st_and_orient(&sk).unwrap();
        let bd = bars(&sk, &o).unwrap();
        let mut zs: Vec<i64> = bd.bars.iter().map(|b| b.z).collect();
        zs.sort();
        assert_eq!(zs, vec![0, 1, 2]);
    }

    #[test]
    fn triangle_face_has_paths_of_two_and_one() {
        let sk = skeleton(&[(0, 0), (2, 0), (1, 2)], &[(0, 1), (1, 2), (2, 0)]);
        let o = choose_st_and_orient(&sk).unwrap();
        let (walks, outer) = sk.face_walks();
        let inner = (0..walks.len()).find(|&f| Some(f) != outer).unwrap();
        let p = left_right_paths(&sk, &o, inner).unwrap();
        let mut lens = [p.left.len(), p.right.len()];
        lens.sort();
        assert_eq!(lens, [2, 3]);
        assert_eq!(p.left[0], p.origin);
        assert_eq!(*p.right.last().unwrap(), p.destination);
        assert!(left_right_paths(&sk, &o, outer.unwrap()).is_err());
    }
}
