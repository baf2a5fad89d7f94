//! 1-plane graphs given by the rotation system of their planarization.
//!
//! Every crossing is replaced by a dummy vertex. An uncrossed edge `id` is a
//! single piece with id `2 * id`; a crossed edge is split into piece `2 * id`
//! (from its first endpoint to the dummy) and piece `2 * id + 1` (from the
//! dummy to its second endpoint). The rotation lists, for each real and
//! dummy vertex, the incident piece ids in counterclockwise order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::embedding::{link_of, Dart, Link, Node, PlaneMap};
use crate::error::{Error, Result};

pub type VertexId = u64;
pub type EdgeId = u64;
pub type PieceId = u64;

pub fn piece_id(edge: EdgeId, part: u8) -> PieceId {
    2 * edge + part as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub id: EdgeId,
}

impl From<[u64; 3]> for Edge {
    fn from([u, v, id]: [u64; 3]) -> Self {
        Edge { u, v, id }
    }
}

impl From<Edge> for [u64; 3] {
    fn from(e: Edge) -> Self {
        [e.u, e.v, e.id]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 3]", into = "[u64; 3]")]
pub struct Crossing {
    pub first: EdgeId,
    pub second: EdgeId,
    pub dummy: VertexId,
}

impl From<[u64; 3]> for Crossing {
    fn from([first, second, dummy]: [u64; 3]) -> Self {
        Crossing {
            first,
            second,
            dummy,
        }
    }
}

impl From<Crossing> for [u64; 3] {
    fn from(c: Crossing) -> Self {
        [c.first, c.second, c.dummy]
    }
}

/// A directed edge piece: `piece` traversed starting at vertex `from`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[u64; 2]", into = "[u64; 2]")]
pub struct DartRef {
    pub piece: PieceId,
    pub from: VertexId,
}

impl From<[u64; 2]> for DartRef {
    fn from([piece, from]: [u64; 2]) -> Self {
        DartRef { piece, from }
    }
}

impl From<DartRef> for [u64; 2] {
    fn from(d: DartRef) -> Self {
        [d.piece, d.from]
    }
}

/// Graph with a fixed 1-planar embedding. `outer_face` is a dart whose left
/// side is the outer face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OnePlaneGraph {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<Edge>,
    #[serde(default)]
    pub crossings: Vec<Crossing>,
    pub rotation: BTreeMap<VertexId, Vec<PieceId>>,
    pub outer_face: DartRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateVertex(VertexId),
    DuplicateEdge(EdgeId),
    DuplicateDummy(VertexId),
    DummyIdClash(VertexId),
    UnknownEndpoint {
        edge: EdgeId,
        vertex: VertexId,
    },
    SelfLoop(EdgeId),
    ParallelEdges(EdgeId, EdgeId),
    UnknownCrossingEdge(EdgeId),
    SelfCrossing(EdgeId),
    EdgeCrossedTwice(EdgeId),
    AdjacentCrossing(EdgeId, EdgeId),
    UnknownRotationNode(VertexId),
    UnknownPiece {
        node: VertexId,
        piece: PieceId,
    },
    PieceNotIncident {
        node: VertexId,
        piece: PieceId,
    },
    PieceIncidence {
        piece: PieceId,
    },
    DummyDegree {
        dummy: VertexId,
        degree: usize,
    },
    DummyNotAlternating(VertexId),
    BadOuterFace,
    Euler {
        vertices: usize,
        edges: usize,
        faces: usize,
        components: usize,
    },
    Disconnected {
        components: usize,
    },
    KiteNotEmpty(VertexId),
    CrossedParallel(EdgeId),
    HomotopicParallels(EdgeId, EdgeId),
    ChordAddable {
        u: VertexId,
        v: VertexId,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            DuplicateEdge(e) => write!(f, "duplicate edge id {e}"),
            DuplicateDummy(d) => write!(f, "duplicate dummy id {d}"),
            DummyIdClash(d) => write!(f, "dummy id {d} is also a vertex id"),
            UnknownEndpoint { edge, vertex } => {
                write!(f, "edge {edge} has unknown endpoint {vertex}")
            }
            SelfLoop(e) => write!(f, "edge {e} is a self-loop"),
            ParallelEdges(a, b) => write!(f, "edges {a} and {b} are parallel"),
            UnknownCrossingEdge(e) => write!(f, "crossing references unknown edge {e}"),
            SelfCrossing(e) => write!(f, "edge {e} crosses itself"),
            EdgeCrossedTwice(e) => write!(f, "edge {e} crossed twice"),
            AdjacentCrossing(a, b) => {
                write!(f, "crossing edges {a} and {b} share an endpoint")
            }
            UnknownRotationNode(v) => write!(f, "rotation given for unknown vertex {v}"),
            UnknownPiece { node, piece } => {
                write!(f, "rotation of {node} lists unknown piece {piece}")
            }
            PieceNotIncident { node, piece } => {
                write!(f, "piece {piece} listed at {node} but not incident to it")
            }
            PieceIncidence { piece } => {
                write!(
                    f,
                    "piece {piece} must appear exactly once at each of its ends"
                )
            }
            DummyDegree { dummy, degree } => {
                write!(f, "dummy {dummy} has degree {degree}, expected 4")
            }
            DummyNotAlternating(d) => {
                write!(f, "pieces of a crossed edge are not opposite at dummy {d}")
            }
            BadOuterFace => write!(f, "outer face dart does not exist"),
            Euler {
                vertices,
                edges,
                faces,
                components,
            } => write!(
                f,
                "rotation is not a plane embedding: V - E + F = {} - {} + {} != 2 * {}",
                vertices, edges, faces, components
            ),
            Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            KiteNotEmpty(d) => write!(f, "crossing at dummy {d} is not inside an empty kite"),
            CrossedParallel(e) => write!(f, "edge {e} is crossed but has a parallel copy"),
            HomotopicParallels(a, b) => write!(f, "parallel edges {a} and {b} are homotopic"),
            ChordAddable { u, v } => write!(f, "edge ({u}, {v}) can still be added"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Checks every embedding invariant of a user-supplied (simple) graph.
pub fn validate(g: &OnePlaneGraph) -> ValidationReport {
    Planarized::build(g, false).err().unwrap_or_default()
}

/// Like [`validate`] but accepts parallel edges, as produced by augmentation.
pub fn validate_multigraph(g: &OnePlaneGraph) -> ValidationReport {
    Planarized::build(g, true).err().unwrap_or_default()
}

/// One face of the planarization, walked with the face on the left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub boundary: Vec<DartRef>,
    pub outer: bool,
}

/// Traces every face of the planarization of `g`.
pub fn faces(g: &OnePlaneGraph) -> Result<Vec<Face>> {
    let p = Planarized::build(g, true).map_err(Error::Invalid)?;
    if p.map.links().next().is_none() {
        return Ok(vec![Face {
            boundary: Vec::new(),
            outer: true,
        }]);
    }
    let fs = p.map.faces();
    let outer = fs.of_dart[p.outer];
    Ok(fs
        .walks
        .iter()
        .enumerate()
        .map(|(i, w)| Face {
            boundary: w.iter().map(|&d| p.dart_ref(d)).collect(),
            outer: i == outer,
        })
        .collect())
}

/// True iff the closed curve formed by the parallel edges `e1` and `e2`
/// bounds a region that contains no vertex.
pub fn homotopic(g: &OnePlaneGraph, e1: EdgeId, e2: EdgeId) -> Result<bool> {
    let p = Planarized::build(g, true).map_err(Error::Invalid)?;
    let a = p.edge_index(e1).ok_or(Error::UnknownEdge(e1))?;
    let b = p.edge_index(e2).ok_or(Error::UnknownEdge(e2))?;
    let (ea, eb) = (&p.edges[a], &p.edges[b]);
    let same = (ea.u == eb.u && ea.v == eb.v) || (ea.u == eb.v && ea.v == eb.u);
    if !same || a == b {
        return Err(Error::NotParallel(e1, e2));
    }
    Ok(p.edges_homotopic(a, b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    FromG,
    KiteCompletion,
    AugmentationOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum NodeKind {
    Real(VertexId),
    Dummy(VertexId),
}

#[derive(Clone, Debug)]
pub(crate) struct PEdge {
    pub u: Node,
    pub v: Node,
    pub id: EdgeId,
    /// One link if uncrossed, otherwise the link from `u` then the link to `v`.
    pub pieces: Vec<Link>,
    pub crossing: Option<usize>,
    pub origin: Origin,
    pub alive: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct PCrossing {
    pub edges: [usize; 2],
    pub dummy: Node,
    pub alive: bool,
}

/// Working form of a 1-plane graph: the planarization as a [`PlaneMap`]
/// plus the bookkeeping to translate back to ids. Real vertices occupy
/// nodes `0..n` in input order.
#[derive(Clone, Debug)]
pub(crate) struct Planarized {
    pub map: PlaneMap,
    pub nodes: Vec<NodeKind>,
    pub n: usize,
    pub edges: Vec<PEdge>,
    pub crossings: Vec<PCrossing>,
    /// link -> (edge index, piece part)
    pub link_edge: Vec<(usize, u8)>,
    pub outer: Dart,
}

impl Planarized {
    pub fn build(
        g: &OnePlaneGraph,
        allow_multi: bool,
    ) -> std::result::Result<Planarized, ValidationReport> {
        let mut rep = ValidationReport::default();
        let n = g.vertices.len();
        let mut node_of: HashMap<u64, Node> = HashMap::new();
        let mut nodes = Vec::new();
        for &v in &g.vertices {
            if node_of.insert(v, nodes.len()).is_some() {
                rep.push(Violation::DuplicateVertex(v));
            }
            nodes.push(NodeKind::Real(v));
        }
        let mut edge_of: HashMap<EdgeId, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut pairs: HashMap<(Node, Node), EdgeId> = HashMap::new();
        for e in &g.edges {
            if edge_of.insert(e.id, edges.len()).is_some() {
                rep.push(Violation::DuplicateEdge(e.id));
            }
            let ends = [e.u, e.v].map(|x| {
                let r = node_of.get(&x).copied().filter(|&i| i < n);
                if r.is_none() {
                    rep.push(Violation::UnknownEndpoint {
                        edge: e.id,
                        vertex: x,
                    });
                }
                r
            });
            let (Some(u), Some(v)) = (ends[0], ends[1]) else {
                continue;
            };
            if u == v {
                rep.push(Violation::SelfLoop(e.id));
                continue;
            }
            if let Some(other) = pairs.insert((u.min(v), u.max(v)), e.id) {
                if !allow_multi {
                    rep.push(Violation::ParallelEdges(other, e.id));
                }
            }
            edges.push(PEdge {
                u,
                v,
                id: e.id,
                pieces: Vec::new(),
                crossing: None,
                origin: Origin::FromG,
                alive: true,
            });
        }
        if !rep.is_ok() {
            return Err(rep);
        }

        let mut crossings = Vec::new();
        for c in &g.crossings {
            if node_of.contains_key(&c.dummy) {
                if node_of[&c.dummy] < n {
                    rep.push(Violation::DummyIdClash(c.dummy));
                } else {
                    rep.push(Violation::DuplicateDummy(c.dummy));
                }
                continue;
            }
            let ids = [c.first, c.second];
            let idx = ids.map(|id| edge_of.get(&id).copied());
            let mut ok = true;
            for (k, i) in idx.iter().enumerate() {
                if i.is_none() {
                    rep.push(Violation::UnknownCrossingEdge(ids[k]));
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let (a, b) = (idx[0].unwrap(), idx[1].unwrap());
            if a == b {
                rep.push(Violation::SelfCrossing(c.first));
                continue;
            }
            let (ea, eb) = (&edges[a], &edges[b]);
            if ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v {
                rep.push(Violation::AdjacentCrossing(c.first, c.second));
            }
            for &i in &[a, b] {
                if edges[i].crossing.is_some() {
                    rep.push(Violation::EdgeCrossedTwice(edges[i].id));
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let dummy = nodes.len();
            node_of.insert(c.dummy, dummy);
            nodes.push(NodeKind::Dummy(c.dummy));
            let ci = crossings.len();
            edges[a].crossing = Some(ci);
            edges[b].crossing = Some(ci);
            crossings.push(PCrossing {
                edges: [a, b],
                dummy,
                alive: true,
            });
        }
        if !rep.is_ok() {
            return Err(rep);
        }

        let mut links = Vec::new();
        let mut link_edge = Vec::new();
        let mut piece_link: HashMap<PieceId, Link> = HashMap::new();
        for (i, e) in edges.iter_mut().enumerate() {
            match e.crossing {
                None => {
                    piece_link.insert(piece_id(e.id, 0), links.len());
                    e.pieces.push(links.len());
                    links.push((e.u, e.v));
                    link_edge.push((i, 0));
                }
                Some(c) => {
                    let x = crossings[c].dummy;
                    for (part, ends) in [(0u8, (e.u, x)), (1u8, (x, e.v))] {
                        piece_link.insert(piece_id(e.id, part), links.len());
                        e.pieces.push(links.len());
                        links.push(ends);
                        link_edge.push((i, part));
                    }
                }
            }
        }

        let mut rings: Vec<Vec<Dart>> = vec![Vec::new(); nodes.len()];
        let mut used = vec![0u8; 2 * links.len()];
        for (&vid, pieces) in &g.rotation {
            let Some(&node) = node_of.get(&vid) else {
                rep.push(Violation::UnknownRotationNode(vid));
                continue;
            };
            for &p in pieces {
                let Some(&l) = piece_link.get(&p) else {
                    rep.push(Violation::UnknownPiece {
                        node: vid,
                        piece: p,
                    });
                    continue;
                };
                let d = if links[l].0 == node {
                    2 * l
                } else if links[l].1 == node {
                    2 * l + 1
                } else {
                    rep.push(Violation::PieceNotIncident {
                        node: vid,
                        piece: p,
                    });
                    continue;
                };
                used[d] += 1;
                rings[node].push(d);
            }
        }
        for (l, _) in links.iter().enumerate() {
            if used[2 * l] != 1 || used[2 * l + 1] != 1 {
                let (e, part) = link_edge[l];
                rep.push(Violation::PieceIncidence {
                    piece: piece_id(edges[e].id, part),
                });
            }
        }
        for c in &crossings {
            let NodeKind::Dummy(did) = nodes[c.dummy] else {
                unreachable!()
            };
            let ring = &rings[c.dummy];
            if ring.len() != 4 {
                rep.push(Violation::DummyDegree {
                    dummy: did,
                    degree: ring.len(),
                });
                continue;
            }
            let e = |k: usize| link_edge[link_of(ring[k])].0;
            if e(0) != e(2) || e(1) != e(3) || e(0) == e(1) {
                rep.push(Violation::DummyNotAlternating(did));
            }
        }
        if !rep.is_ok() {
            return Err(rep);
        }

        let map = PlaneMap::from_rings(&links, &rings);
        let outer = piece_link.get(&g.outer_face.piece).and_then(|&l| {
            let from = node_of.get(&g.outer_face.from)?;
            if links[l].0 == *from {
                Some(2 * l)
            } else if links[l].1 == *from {
                Some(2 * l + 1)
            } else {
                None
            }
        });
        let outer = match outer {
            Some(d) => d,
            None if links.is_empty() => 0,
            None => {
                rep.push(Violation::BadOuterFace);
                return Err(rep);
            }
        };

        let comps = map.components();
        let isolated = (0..map.node_count())
            .filter(|&v| map.degree(v) == 0)
            .count();
        let f = map.faces().len() + isolated;
        let (v, e) = (map.node_count(), links.len());
        if v + f != e + 2 * comps {
            rep.push(Violation::Euler {
                vertices: v,
                edges: e,
                faces: f,
                components: comps,
            });
        }
        if comps > 1 {
            rep.push(Violation::Disconnected { components: comps });
        }
        if !rep.is_ok() {
            return Err(rep);
        }
        Ok(Planarized {
            map,
            nodes,
            n,
            edges,
            crossings,
            link_edge,
            outer,
        })
    }

    pub fn node_id(&self, v: Node) -> VertexId {
        match self.nodes[v] {
            NodeKind::Real(id) | NodeKind::Dummy(id) => id,
        }
    }

    pub fn is_real(&self, v: Node) -> bool {
        v < self.n
    }

    pub fn piece_of_link(&self, l: Link) -> PieceId {
        let (e, part) = self.link_edge[l];
        piece_id(self.edges[e].id, part)
    }

    pub fn dart_ref(&self, d: Dart) -> DartRef {
        DartRef {
            piece: self.piece_of_link(link_of(d)),
            from: self.node_id(self.map.tail(d)),
        }
    }

    pub fn edge_index(&self, id: EdgeId) -> Option<usize> {
        self.edges.iter().position(|e| e.alive && e.id == id)
    }

    pub fn edges_homotopic(&self, a: usize, b: usize) -> bool {
        let boundary: HashSet<Link> = self.edges[a]
            .pieces
            .iter()
            .chain(&self.edges[b].pieces)
            .copied()
            .collect();
        let mut nodes: HashSet<Node> = [self.edges[a].u, self.edges[a].v].into();
        for &l in &boundary {
            nodes.insert(self.map.tail(2 * l));
            nodes.insert(self.map.head(2 * l));
        }
        self.map
            .side_is_empty(self.edges[a].pieces[0], &boundary, &nodes)
    }

    /// Exports back to the interchange form, dropping dead edges.
    pub fn to_graph(&self) -> OnePlaneGraph {
        let vertices = (0..self.n).map(|v| self.node_id(v)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| e.alive)
            .map(|e| Edge {
                u: self.node_id(e.u),
                v: self.node_id(e.v),
                id: e.id,
            })
            .collect();
        let crossings = self
            .crossings
            .iter()
            .filter(|c| c.alive)
            .map(|c| Crossing {
                first: self.edges[c.edges[0]].id,
                second: self.edges[c.edges[1]].id,
                dummy: self.node_id(c.dummy),
            })
            .collect();
        let mut rotation = BTreeMap::new();
        for v in 0..self.nodes.len() {
            if !self.is_real(v) && self.map.degree(v) == 0 {
                continue;
            }
            let ring = self
                .map
                .darts_around(v)
                .iter()
                .map(|&d| self.piece_of_link(link_of(d)))
                .collect();
            rotation.insert(self.node_id(v), ring);
        }
        let outer_face = if self.map.links().next().is_some() {
            self.dart_ref(self.outer)
        } else {
            DartRef {
                piece: 0,
                from: self.node_id(0),
            }
        };
        OnePlaneGraph {
            vertices,
            edges,
            crossings,
            rotation,
            outer_face,
        }
    }
}

impl OnePlaneGraph {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Builds the 1-plane graph of a straight-line drawing. Vertex `i` gets
    /// id `i`, edge `k` gets id `k`, and crossing dummies get ids from `n`
    /// upward. Fails if an edge is crossed more than once or if two edges
    /// overlap or pass through a vertex.
    pub fn from_straight_line(points: &[(i64, i64)], edges: &[(usize, usize)]) -> Result<Self> {
        let n = points.len();
        let cross = |a: (i64, i64), b: (i64, i64), c: (i64, i64)| -> i64 {
            (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
        };
        let mut crossing_of: Vec<Option<(usize, (f64, f64))>> = vec![None; edges.len()];
        let mut crossings = Vec::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let (a, b) = (points[edges[i].0], points[edges[i].1]);
                let (c, d) = (points[edges[j].0], points[edges[j].1]);
                let shared = [edges[i].0, edges[i].1]
                    .iter()
                    .any(|x| *x == edges[j].0 || *x == edges[j].1);
                let (o1, o2) = (cross(a, b, c), cross(a, b, d));
                let (o3, o4) = (cross(c, d, a), cross(c, d, b));
                if shared {
                    if o1 == 0 && o2 == 0 {
                        let dot = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| {
                            (q.0 - p.0) * (r.0 - p.0) + (q.1 - p.1) * (r.1 - p.1)
                        };
                        // collinear edges sharing an endpoint overlap iff they leave it the same way
                        let s = if edges[i].0 == edges[j].0 || edges[i].0 == edges[j].1 {
                            a
                        } else {
                            b
                        };
                        let (p, q) = (if s == a { b } else { a }, if s == c { d } else { c });
                        if dot(s, p, q) > 0 {
                            return Err(Error::Scene(format!("edges {i} and {j} overlap")));
                        }
                    }
                    continue;
                }
                if [o1, o2, o3, o4].contains(&0) {
                    let on = |p: (i64, i64), q: (i64, i64), r: (i64, i64)| {
                        cross(p, q, r) == 0
                            && r.0 >= p.0.min(q.0)
                            && r.0 <= p.0.max(q.0)
                            && r.1 >= p.1.min(q.1)
                            && r.1 <= p.1.max(q.1)
                    };
                    if on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b) {
                        return Err(Error::Scene(format!(
                            "edges {i} and {j} touch in a degenerate way"
                        )));
                    }
                    continue;
                }
                if (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0) {
                    if crossing_of[i].is_some() || crossing_of[j].is_some() {
                        return Err(Error::Invalid(ValidationReport {
                            violations: vec![Violation::EdgeCrossedTwice(
                                if crossing_of[i].is_some() { i } else { j } as u64,
                            )],
                        }));
                    }
                    let t = o3 as f64 / (o3 - o4) as f64;
                    let p = (
                        a.0 as f64 + t * (b.0 - a.0) as f64,
                        a.1 as f64 + t * (b.1 - a.1) as f64,
                    );
                    let k = crossings.len();
                    crossing_of[i] = Some((k, p));
                    crossing_of[j] = Some((k, p));
                    crossings.push(Crossing {
                        first: i as u64,
                        second: j as u64,
                        dummy: (n + k) as u64,
                    });
                }
            }
        }
        let pos = |v: usize| -> (f64, f64) {
            if v < n {
                (points[v].0 as f64, points[v].1 as f64)
            } else {
                let k = v - n;
                crossing_of[crossings[k].first as usize].unwrap().1
            }
        };
        // (from node, to node, piece id)
        let mut darts: Vec<Vec<(f64, PieceId)>> = vec![Vec::new(); n + crossings.len()];
        for (k, &(u, v)) in edges.iter().enumerate() {
            let id = k as u64;
            match crossing_of[k] {
                None => {
                    darts[u].push((angle(pos(u), pos(v)), piece_id(id, 0)));
                    darts[v].push((angle(pos(v), pos(u)), piece_id(id, 0)));
                }
                Some((c, _)) => {
                    let x = n + c;
                    darts[u].push((angle(pos(u), pos(x)), piece_id(id, 0)));
                    darts[x].push((angle(pos(x), pos(u)), piece_id(id, 0)));
                    darts[x].push((angle(pos(x), pos(v)), piece_id(id, 1)));
                    darts[v].push((angle(pos(v), pos(x)), piece_id(id, 1)));
                }
            }
        }
        let mut rotation = BTreeMap::new();
        for (v, ds) in darts.iter_mut().enumerate() {
            ds.sort_by(|a, b| a.0.total_cmp(&b.0));
            rotation.insert(v as u64, ds.iter().map(|d| d.1).collect());
        }
        let low = (0..n)
            .min_by_key(|&v| (points[v].1, points[v].0))
            .unwrap_or(0);
        let outer_piece = darts
            .get(low)
            .and_then(|ds| ds.iter().max_by(|a, b| a.0.total_cmp(&b.0)))
            .map(|d| d.1)
            .unwrap_or(0);
        Ok(OnePlaneGraph {
            vertices: (0..n as u64).collect(),
            edges: edges
                .iter()
                .enumerate()
                .map(|(k, &(u, v))| Edge {
                    u: u as u64,
                    v: v as u64,
                    id: k as u64,
                })
                .collect(),
            crossings,
            rotation,
            outer_face: DartRef {
                piece: outer_piece,
                from: low as u64,
            },
        })
    }
}

fn angle(from: (f64, f64), to: (f64, f64)) -> f64 {
    (to.1 - from.1).atan2(to.0 - from.0)
}
