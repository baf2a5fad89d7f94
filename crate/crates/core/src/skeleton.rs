//! The planar skeleton P: the augmented graph without its crossing pairs.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::augment::AugmentedGraph;
use crate::embedding::{link_of, twin, Dart, Node, PlaneMap};
use crate::graph::{piece_id, DartRef, EdgeId, OnePlaneGraph, Origin, VertexId};

/// Boundary of one face as `(tail, head, edge id)` triples.
pub type FaceWalk = Vec<(VertexId, VertexId, EdgeId)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SkeletonEdge {
    pub u: VertexId,
    pub v: VertexId,
    pub id: EdgeId,
    pub origin: Origin,
}

/// A crossing pair of the augmented graph and the skeleton face it sits in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KiteFace {
    /// The two crossing edges as `[u, v, id]` triples.
    pub crossing: [[u64; 3]; 2],
    pub origins: [Origin; 2],
    /// A dart of P whose left face is the kite quadrilateral.
    #[serde(skip)]
    pub(crate) dart: Dart,
}

#[derive(Clone, Debug)]
pub struct PlanarSkeleton {
    pub vertex_ids: Vec<VertexId>,
    /// Indexed by link of the internal map.
    pub edges: Vec<SkeletonEdge>,
    pub kites: Vec<KiteFace>,
    pub(crate) map: PlaneMap,
    pub(crate) outer: Option<Dart>,
}

impl PlanarSkeleton {
    pub fn from_augmented(g1: &AugmentedGraph) -> PlanarSkeleton {
        let p = &g1.work;
        let mut new_link = vec![usize::MAX; p.map.link_slots()];
        let mut links = Vec::new();
        let mut edges = Vec::new();
        for e in p.edges.iter().filter(|e| e.alive && e.crossing.is_none()) {
            let l = e.pieces[0];
            new_link[l] = links.len();
            links.push((p.map.tail(2 * l), p.map.head(2 * l)));
            edges.push(SkeletonEdge {
                u: p.node_id(p.map.tail(2 * l)),
                v: p.node_id(p.map.head(2 * l)),
                id: e.id,
                origin: e.origin,
            });
        }
        let map_dart = |d: Dart| 2 * new_link[link_of(d)] + (d & 1);
        let rings: Vec<Vec<Dart>> = (0..p.n)
            .map(|v| {
                p.map
                    .darts_around(v)
                    .into_iter()
                    .filter(|&d| new_link[link_of(d)] != usize::MAX)
                    .map(map_dart)
                    .collect()
            })
            .collect();
        let map = PlaneMap::from_rings(&links, &rings);
        let outer = (!links.is_empty()).then(|| map_dart(p.outer));
        let kites = p
            .crossings
            .iter()
            .filter(|c| c.alive)
            .map(|c| {
                let xa = p.map.first_dart(c.dummy).expect("dummy has degree 4");
                let side = p.map.face_next(xa);
                let [e1, e2] = c.edges.map(|e| &p.edges[e]);
                KiteFace {
                    crossing: [
                        [p.node_id(e1.u), p.node_id(e1.v), e1.id],
                        [p.node_id(e2.u), p.node_id(e2.v), e2.id],
                    ],
                    origins: [e1.origin, e2.origin],
                    dart: map_dart(side),
                }
            })
            .collect();
        PlanarSkeleton {
            vertex_ids: (0..p.n).map(|v| p.node_id(v)).collect(),
            edges,
            kites,
            map,
            outer,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub(crate) fn tail(&self, d: Dart) -> Node {
        self.map.tail(d)
    }

    pub(crate) fn head(&self, d: Dart) -> Node {
        self.map.head(d)
    }

    pub(crate) fn edge_of(&self, d: Dart) -> &SkeletonEdge {
        &self.edges[link_of(d)]
    }

    /// Edges between two nodes.
    /// Boundary walks of all faces; the outer one is flagged by index.
    pub fn face_walks(&self) -> (Vec<FaceWalk>, Option<usize>) {
        let faces = self.map.faces();
        let outer = self.outer.map(|d| faces.of_dart[d]);
        let walks = faces
            .walks
            .iter()
            .map(|w| {
                w.iter()
                    .map(|&d| {
                        let id = self.edge_of(d).id;
                        (
                            self.vertex_ids[self.tail(d)],
                            self.vertex_ids[self.head(d)],
                            id,
                        )
                    })
                    .collect()
            })
            .collect();
        (walks, outer)
    }

    /// The skeleton as a crossing-free [`OnePlaneGraph`].
    pub fn to_graph(&self) -> OnePlaneGraph {
        let dart_ref = |d: Dart| DartRef {
            piece: piece_id(self.edge_of(d).id, 0),
            from: self.vertex_ids[self.tail(d)],
        };
        let mut rotation = BTreeMap::new();
        for v in 0..self.vertex_count() {
            let ring = self
                .map
                .darts_around(v)
                .iter()
                .map(|&d| dart_ref(d).piece)
                .collect();
            rotation.insert(self.vertex_ids[v], ring);
        }
        let edges = self
            .edges
            .iter()
            .map(|e| crate::graph::Edge {
                u: e.u,
                v: e.v,
                id: e.id,
            })
            .collect();
        OnePlaneGraph {
            vertices: self.vertex_ids.clone(),
            edges,
            crossings: Vec::new(),
            rotation,
            outer_face: self.outer.map(dart_ref).unwrap_or(DartRef {
                piece: 0,
                from: self.vertex_ids[0],
            }),
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct Dump<'a> {
            #[serde(flatten)]
            graph: OnePlaneGraph,
            origins: BTreeMap<EdgeId, Origin>,
            kites: &'a [KiteFace],
        }
        let dump = Dump {
            graph: self.to_graph(),
            origins: self.edges.iter().map(|e| (e.id, e.origin)).collect(),
            kites: &self.kites,
        };
        serde_json::to_string_pretty(&dump).expect("skeleton serializes")
    }

    /// Kite face boundary as node cycle, starting at the recorded dart.
    pub(crate) fn kite_walk(&self, k: usize) -> Vec<Dart> {
        self.map.face_walk(self.kites[k].dart)
    }

    pub(crate) fn outer_darts(&self) -> Vec<Dart> {
        self.outer
            .map(|d| self.map.face_walk(d))
            .unwrap_or_default()
    }

    #[allow(dead_code)]
    pub(crate) fn twin(&self, d: Dart) -> Dart {
        twin(d)
    }
}
