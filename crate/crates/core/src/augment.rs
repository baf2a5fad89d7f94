//! Augmentation of a 1-plane graph so that every crossing pair spans an
//! empty kite, no further edge fits without a crossing, and parallel edges
//! are uncrossed and pairwise non-homotopic.
//!
//! Kites are completed first by routing each missing side right along the
//! two crossing half-edges it spans; a parallel copy that is crossed or
//! homotopic to the new side is dropped and the new side takes over its
//! identity. Remaining faces are then triangulated.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::embedding::{link_of, twin, Dart, Node};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, OnePlaneGraph, Origin, PEdge, Planarized, ValidationReport, Violation};

/// The augmented graph G' with the origin of every edge.
#[derive(Clone, Debug)]
pub struct AugmentedGraph {
    pub graph: OnePlaneGraph,
    pub origins: BTreeMap<EdgeId, Origin>,
    pub(crate) work: Planarized,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct AugmentDump {
    #[serde(flatten)]
    graph: OnePlaneGraph,
    origins: BTreeMap<EdgeId, Origin>,
}

impl AugmentedGraph {
    pub fn to_json(&self) -> String {
        let dump = AugmentDump {
            graph: self.graph.clone(),
            origins: self.origins.clone(),
        };
        serde_json::to_string_pretty(&dump).expect("dump serializes")
    }

    pub fn added_edges(&self) -> usize {
        self.origins
            .values()
            .filter(|o| **o != Origin::FromG)
            .count()
    }
}

/// Augments a simple 1-plane graph.
pub fn augment(g: &OnePlaneGraph) -> Result<AugmentedGraph> {
    let p = Planarized::build(g, false).map_err(Error::Invalid)?;
    Ok(augment_planarized(p))
}

/// Augments a 1-plane multigraph, for example the output of [`augment`].
pub fn augment_multigraph(g: &OnePlaneGraph) -> Result<AugmentedGraph> {
    let p = Planarized::build(g, true).map_err(Error::Invalid)?;
    Ok(augment_planarized(p))
}

pub(crate) fn augment_planarized(mut p: Planarized) -> AugmentedGraph {
    let mut next_id = p.edges.iter().map(|e| e.id + 1).max().unwrap_or(0);
    let mut pairs: HashMap<(Node, Node), Vec<usize>> = HashMap::new();
    for (i, e) in p.edges.iter().enumerate() {
        pairs.entry(key(e.u, e.v)).or_default().push(i);
    }

    for c in 0..p.crossings.len() {
        if !p.crossings[c].alive {
            continue;
        }
        let x = p.crossings[c].dummy;
        for xa in p.map.darts_around(x) {
            if !p.crossings[c].alive {
                break;
            }
            let xb = p.map.prev_ccw(xa);
            let (a, b) = (p.map.head(xa), p.map.head(xb));
            let ax = twin(xa);
            let at_b = p.map.face_next(xb);
            let side = if p.map.head(at_b) == a {
                p.link_edge[link_of(at_b)].0
            } else {
                let e = p.add_edge(a, Some(ax), b, Some(at_b), next_id, Origin::KiteCompletion);
                next_id += 1;
                pairs.entry(key(a, b)).or_default().push(e);
                if p.outer == ax || p.outer == xb {
                    p.outer = 2 * p.edges[e].pieces[0];
                }
                e
            };
            drop_conflicting_parallels(&mut p, &mut pairs, side);
        }
    }

    move_outer_off_kites(&mut p);
    triangulate(&mut p, &mut next_id);

    let graph = p.to_graph();
    let origins = p
        .edges
        .iter()
        .filter(|e| e.alive)
        .map(|e| (e.id, e.origin))
        .collect();
    AugmentedGraph {
        graph,
        origins,
        work: p,
    }
}

fn key(u: Node, v: Node) -> (Node, Node) {
    (u.min(v), u.max(v))
}

fn drop_conflicting_parallels(
    p: &mut Planarized,
    pairs: &mut HashMap<(Node, Node), Vec<usize>>,
    side: usize,
) {
    let k = key(p.edges[side].u, p.edges[side].v);
    let others: Vec<usize> = pairs[&k]
        .iter()
        .copied()
        .filter(|&e| e != side && p.edges[e].alive)
        .collect();
    for e in others {
        if !p.edges[e].alive {
            continue;
        }
        let drop = p.edges[e].crossing.is_some() || p.edges_homotopic(side, e);
        if !drop {
            continue;
        }
        if p.edges[e].origin == Origin::FromG && p.edges[side].origin != Origin::FromG {
            p.edges[side].id = p.edges[e].id;
            p.edges[side].origin = Origin::FromG;
        }
        p.remove_edge(e);
    }
    pairs.get_mut(&k).unwrap().retain(|&e| p.edges[e].alive);
}

fn move_outer_off_kites(p: &mut Planarized) {
    if p.map.links().next().is_none() {
        return;
    }
    let walk = p.map.face_walk(p.outer);
    if walk.iter().all(|&d| p.is_real(p.map.tail(d))) {
        return;
    }
    let faces = p.map.faces();
    if let Some(w) = faces
        .walks
        .iter()
        .find(|w| w.iter().all(|&d| p.is_real(p.map.tail(d))))
    {
        p.outer = w[0];
    }
}

type Pairs = HashMap<(Node, Node), Vec<usize>>;

fn pair_index(p: &Planarized) -> Pairs {
    let mut pairs: Pairs = HashMap::new();
    for (i, e) in p.edges.iter().enumerate().filter(|(_, e)| e.alive) {
        pairs.entry(key(e.u, e.v)).or_default().push(i);
    }
    pairs
}

fn triangulate(p: &mut Planarized, next_id: &mut u64) {
    let mut pairs = pair_index(p);
    let mut work = p.map.faces().walks;
    while let Some(mut walk) = work.pop() {
        if walk.len() < 4 || walk.iter().any(|&d| !p.is_real(p.map.tail(d))) {
            continue;
        }
        let start = (0..walk.len())
            .min_by_key(|&i| p.map.tail(walk[i]))
            .unwrap();
        walk.rotate_left(start);
        let nodes: Vec<Node> = walk.iter().map(|&d| p.map.tail(d)).collect();
        let chord = chord_candidates(&nodes).find_map(|(i, j)| {
            try_chord(
                p,
                &mut pairs,
                walk[i],
                walk[j],
                *next_id,
                Origin::AugmentationOnly,
            )
        });
        if let Some(e) = chord {
            *next_id += 1;
            let l = p.edges[e].pieces[0];
            work.push(p.map.face_walk(2 * l));
            work.push(p.map.face_walk(2 * l + 1));
        }
    }
}

/// Position pairs `i < j` of a face walk whose chord splits the face into
/// two parts that each keep a third vertex. Pairs from the first position
/// come first, so a simple face yields a fan.
pub(crate) fn chord_candidates(nodes: &[Node]) -> impl Iterator<Item = (usize, usize)> + '_ {
    let k = nodes.len();
    (0..k)
        .flat_map(move |i| (i + 2..k).map(move |j| (i, j)))
        .filter(move |&(i, j)| {
            if i == 0 && j == k - 1 {
                return false;
            }
            let (a, b) = (nodes[i], nodes[j]);
            if a == b {
                return false;
            }
            let inner = nodes[i + 1..j].iter().any(|&w| w != a && w != b);
            let outer = nodes[j + 1..]
                .iter()
                .chain(&nodes[..i])
                .any(|&w| w != a && w != b);
            inner && outer
        })
}

/// Inserts a chord between the tails of two darts of one face walk, unless it
/// would be parallel to a crossed edge or homotopic to an existing edge.
fn try_chord(
    p: &mut Planarized,
    pairs: &mut Pairs,
    du: Dart,
    dv: Dart,
    id: EdgeId,
    origin: Origin,
) -> Option<usize> {
    let (u, v) = (p.map.tail(du), p.map.tail(dv));
    let k = key(u, v);
    let existing: Vec<usize> = pairs
        .get(&k)
        .map(|es| es.iter().copied().filter(|&e| p.edges[e].alive).collect())
        .unwrap_or_default();
    if existing.iter().any(|&e| p.edges[e].crossing.is_some()) {
        return None;
    }
    let e = p.add_edge(u, Some(du), v, Some(dv), id, origin);
    if existing.iter().any(|&o| p.edges_homotopic(e, o)) {
        p.remove_edge(e);
        return None;
    }
    pairs.entry(k).or_default().push(e);
    Some(e)
}

impl Planarized {
    pub(crate) fn add_edge(
        &mut self,
        u: Node,
        after_u: Option<Dart>,
        v: Node,
        after_v: Option<Dart>,
        id: EdgeId,
        origin: Origin,
    ) -> usize {
        let l = self.map.insert_link(u, after_u, v, after_v);
        let e = self.edges.len();
        self.edges.push(PEdge {
            u,
            v,
            id,
            pieces: vec![l],
            crossing: None,
            origin,
            alive: true,
        });
        self.set_link_edge(l, e, 0);
        e
    }

    fn set_link_edge(&mut self, l: usize, e: usize, part: u8) {
        if self.link_edge.len() <= l {
            self.link_edge.resize(l + 1, (usize::MAX, 0));
        }
        self.link_edge[l] = (e, part);
    }

    /// Deletes edge `e`; if it is crossed, its partner becomes uncrossed.
    pub(crate) fn remove_edge(&mut self, e: usize) {
        let pieces = self.edges[e].pieces.clone();
        let survivor = pieces
            .iter()
            .flat_map(|&l| [2 * l, 2 * l + 1])
            .map(|d| self.map.face_next(d))
            .find(|&d| !pieces.contains(&link_of(d)));
        let outer_hit = pieces.contains(&link_of(self.outer));
        for &l in &pieces {
            self.map.remove_link(l);
        }
        self.edges[e].alive = false;
        if let Some(c) = self.edges[e].crossing.take() {
            self.crossings[c].alive = false;
            let other = self.crossings[c]
                .edges
                .iter()
                .copied()
                .find(|&o| o != e)
                .unwrap();
            let x = self.crossings[c].dummy;
            let old = self.edges[other].pieces.clone();
            let from_u = self
                .map
                .darts_around(x)
                .into_iter()
                .find(|&d| self.map.head(d) == self.edges[other].u);
            let l = self.map.smooth(x);
            let (u, _) = (self.edges[other].u, self.edges[other].v);
            // smooth() orients the new link from the head of the first dart around x
            let flipped = self.map.tail(2 * l) != u;
            let _ = from_u;
            let l = if flipped { self.reverse_link(l) } else { l };
            self.edges[other].pieces = vec![l];
            self.edges[other].crossing = None;
            self.set_link_edge(l, other, 0);
            if old.contains(&link_of(self.outer)) {
                let was_forward = self.outer.is_multiple_of(2);
                let from_u_side = (link_of(self.outer) == old[0]) == was_forward;
                self.outer = if from_u_side { 2 * l } else { 2 * l + 1 };
            }
        }
        if outer_hit {
            if let Some(d) = survivor {
                self.outer = d;
            }
        }
    }

    /// Replaces link `l` by an identical link running the other way.
    fn reverse_link(&mut self, l: usize) -> usize {
        let (a, b) = (self.map.tail(2 * l), self.map.head(2 * l));
        let pa = self.map.prev_ccw(2 * l);
        let pb = self.map.prev_ccw(2 * l + 1);
        let pa = (pa != 2 * l).then_some(pa);
        let pb = (pb != 2 * l + 1).then_some(pb);
        self.map.remove_link(l);
        self.map.insert_link(b, pb, a, pa)
    }
}

/// Checks the kite and parallel-class properties of an augmented graph.
pub fn check_kites(g1: &AugmentedGraph) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let p = match Planarized::build(&g1.graph, true) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let faces = p.map.faces();
    let outer = if p.map.links().next().is_some() {
        faces.of_dart[p.outer]
    } else {
        usize::MAX
    };
    for c in &p.crossings {
        let x = c.dummy;
        let ok = p.map.darts_around(x).iter().all(|&d| {
            let w = &faces.walks[faces.of_dart[d]];
            w.len() == 3 && faces.of_dart[d] != outer
        });
        if !ok {
            rep.push(Violation::KiteNotEmpty(p.node_id(x)));
        }
    }
    let mut classes: HashMap<(Node, Node), Vec<usize>> = HashMap::new();
    for (i, e) in p.edges.iter().enumerate() {
        classes.entry(key(e.u, e.v)).or_default().push(i);
    }
    let mut keys: Vec<_> = classes.keys().copied().collect();
    keys.sort_unstable();
    for k in keys {
        let class = &classes[&k];
        if class.len() < 2 {
            continue;
        }
        for &e in class {
            if p.edges[e].crossing.is_some() {
                rep.push(Violation::CrossedParallel(p.edges[e].id));
            }
        }
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if p.edges[a].crossing.is_none()
                    && p.edges[b].crossing.is_none()
                    && p.edges_homotopic(a, b)
                {
                    rep.push(Violation::HomotopicParallels(p.edges[a].id, p.edges[b].id));
                }
            }
        }
    }
    rep
}

/// Reports every uncrossed edge that could still be drawn inside a face
/// without duplicating an existing edge homotopically.
pub fn check_maximality(g1: &AugmentedGraph) -> ValidationReport {
    let mut rep = ValidationReport::default();
    let mut p = match Planarized::build(&g1.graph, true) {
        Ok(p) => p,
        Err(r) => return r,
    };
    let mut pairs = pair_index(&p);
    let probe_id = p.edges.iter().map(|e| e.id + 1).max().unwrap_or(0);
    for walk in p.map.faces().walks {
        let nodes: Vec<Node> = walk.iter().map(|&d| p.map.tail(d)).collect();
        if nodes.iter().any(|&v| !p.is_real(v)) {
            continue;
        }
        let found = chord_candidates(&nodes).find_map(|(i, j)| {
            try_chord(
                &mut p,
                &mut pairs,
                walk[i],
                walk[j],
                probe_id,
                Origin::AugmentationOnly,
            )
            .map(|e| (e, i, j))
        });
        if let Some((e, i, j)) = found {
            p.remove_edge(e);
            rep.push(Violation::ChordAddable {
                u: p.node_id(nodes[i]),
                v: p.node_id(nodes[j]),
            });
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_multigraph;

    fn square_with_diagonals(sides: &[(usize, usize)]) -> OnePlaneGraph {
        let mut edges = vec![(0, 2), (1, 3)];
        edges.extend_from_slice(sides);
        OnePlaneGraph::from_straight_line(&[(0, 0), (2, 0), (2, 2), (0, 2)], &edges).unwrap()
    }

    #[test]
    fn lone_crossing_becomes_k4_kite() {
        let g = square_with_diagonals(&[]);
        let a = augment(&g).unwrap();
        assert!(validate_multigraph(&a.graph).is_ok());
        assert_eq!(a.graph.edges.len(), 6);
        assert_eq!(
            a.origins
                .values()
                .filter(|o| **o == Origin::KiteCompletion)
                .count(),
            4
        );
        assert!(check_kites(&a).is_ok(), "{}", check_kites(&a));
        assert!(check_maximality(&a).is_ok(), "{}", check_maximality(&a));
    }

    #[test]
    fn k4_kite_needs_nothing() {
        let g = square_with_diagonals(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let a = augment(&g).unwrap();
        assert_eq!(a.added_edges(), 0);
        assert!(check_kites(&a).is_ok());
        assert!(check_maximality(&a).is_ok());
    }

    #[test]
    fn plane_four_cycle_is_not_maximal() {
        let g = OnePlaneGraph::from_straight_line(
            &[(0, 0), (2, 0), (2, 2), (0, 2)],
            &[(0, 1), (1, 2), (2, 3), (3, 0)],
        )
        .unwrap();
        let p = Planarized::build(&g, false).unwrap();
        let fake = AugmentedGraph {
            graph: g.clone(),
            origins: BTreeMap::new(),
            work: p,
        };
        assert!(!check_maximality(&fake).is_ok());
        let a = augment(&g).unwrap();
        assert!(check_maximality(&a).is_ok());
        // both faces of the cycle get a chord; parallel chords are not homotopic
        assert_eq!(a.graph.edges.len(), 6);
        assert!(check_kites(&a).is_ok(), "{}", check_kites(&a));
    }

    #[test]
    fn chord_search_skips_degenerate_walks() {
        let first = |n: &[Node]| chord_candidates(n).next();
        assert_eq!(first(&[0, 1, 0, 1]), None);
        assert_eq!(first(&[0, 1, 2]), None);
        assert_eq!(first(&[0, 1, 2, 3]), Some((0, 2)));
        assert_eq!(first(&[0, 1, 0, 2]), Some((1, 3)));
    }

    #[test]
    fn augmentation_is_idempotent_on_kite() {
        let g = square_with_diagonals(&[(1, 2)]);
        let a = augment(&g).unwrap();
        let b = augment_multigraph(&a.graph).unwrap();
        assert_eq!(b.added_edges(), 0);
        assert_eq!(b.graph.edges.len(), a.graph.edges.len());
    }
}
