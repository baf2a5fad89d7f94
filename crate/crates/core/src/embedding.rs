//! Mutable rotation-system embedding of a plane multigraph.
//!
//! Every link (edge or edge piece) owns two darts: dart `2l` runs from the
//! first endpoint to the second, dart `2l + 1` is its twin. Each node keeps
//! its darts in a doubly linked counterclockwise ring. The face to the left
//! of dart `u -> v` continues with the dart that precedes `v -> u` in the
//! ring of `v`, so inner faces are walked counterclockwise.

use std::collections::HashSet;

pub type Dart = usize;
pub type Link = usize;
pub type Node = usize;

const NONE: usize = usize::MAX;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn link_of(d: Dart) -> Link {
    d >> 1
}

#[derive(Clone, Debug, Default)]
pub struct PlaneMap {
    tail: Vec<Node>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    alive: Vec<bool>,
    first: Vec<Dart>,
    degree: Vec<usize>,
}

/// Face decomposition of a [`PlaneMap`] at one point in time.
#[derive(Clone, Debug)]
pub struct Faces {
    /// Face id for each dart (`usize::MAX` for dead darts).
    pub of_dart: Vec<usize>,
    /// Boundary walk of each face, face on the left of every dart.
    pub walks: Vec<Vec<Dart>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

impl PlaneMap {
    pub fn with_nodes(n: usize) -> Self {
        PlaneMap {
            first: vec![NONE; n],
            degree: vec![0; n],
            ..Default::default()
        }
    }

    /// Builds a map from explicit rings. `links[l]` gives the endpoints of
    /// link `l`; `rings[v]` lists the darts leaving `v` counterclockwise.
    /// Callers guarantee every dart appears in exactly the ring of its tail.
    pub fn from_rings(links: &[(Node, Node)], rings: &[Vec<Dart>]) -> Self {
        let mut m = PlaneMap::with_nodes(rings.len());
        for &(u, v) in links {
            m.new_link(u, v);
        }
        for (v, ring) in rings.iter().enumerate() {
            let k = ring.len();
            for (i, &d) in ring.iter().enumerate() {
                debug_assert_eq!(m.tail[d], v);
                m.next[d] = ring[(i + 1) % k];
                m.prev[d] = ring[(i + k - 1) % k];
            }
            if let Some(&d) = ring.first() {
                m.first[v] = d;
            }
            m.degree[v] = k;
        }
        m
    }

    pub fn node_count(&self) -> usize {
        self.first.len()
    }

    pub fn link_slots(&self) -> usize {
        self.alive.len()
    }

    pub fn add_node(&mut self) -> Node {
        self.first.push(NONE);
        self.degree.push(0);
        self.first.len() - 1
    }

    pub fn is_alive(&self, l: Link) -> bool {
        self.alive[l]
    }

    pub fn links(&self) -> impl Iterator<Item = Link> + '_ {
        (0..self.alive.len()).filter(move |&l| self.alive[l])
    }

    pub fn tail(&self, d: Dart) -> Node {
        self.tail[d]
    }

    pub fn head(&self, d: Dart) -> Node {
        self.tail[twin(d)]
    }

    pub fn degree(&self, v: Node) -> usize {
        self.degree[v]
    }

    pub fn next_ccw(&self, d: Dart) -> Dart {
        self.next[d]
    }

    pub fn prev_ccw(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// Successor of `d` along the face on its left.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.prev[twin(d)]
    }

    pub fn first_dart(&self, v: Node) -> Option<Dart> {
        (self.first[v] != NONE).then_some(self.first[v])
    }

    /// Darts leaving `v` in counterclockwise order.
    pub fn darts_around(&self, v: Node) -> Vec<Dart> {
        let mut out = Vec::with_capacity(self.degree[v]);
        if let Some(start) = self.first_dart(v) {
            let mut d = start;
            loop {
                out.push(d);
                d = self.next[d];
                if d == start {
                    break;
                }
            }
        }
        out
    }

    fn new_link(&mut self, u: Node, v: Node) -> Link {
        let l = self.alive.len();
        self.alive.push(true);
        self.tail.extend([u, v]);
        self.next.extend([NONE, NONE]);
        self.prev.extend([NONE, NONE]);
        l
    }

    fn splice_after(&mut self, v: Node, d: Dart, after: Option<Dart>) {
        match after {
            None => {
                debug_assert_eq!(self.first[v], NONE);
                self.next[d] = d;
                self.prev[d] = d;
                self.first[v] = d;
            }
            Some(a) => {
                debug_assert_eq!(self.tail[a], v);
                let b = self.next[a];
                self.next[a] = d;
                self.prev[d] = a;
                self.next[d] = b;
                self.prev[b] = d;
            }
        }
        self.degree[v] += 1;
    }

    fn unsplice(&mut self, d: Dart) {
        let v = self.tail[d];
        if self.next[d] == d {
            self.first[v] = NONE;
        } else {
            let (p, n) = (self.prev[d], self.next[d]);
            self.next[p] = n;
            self.prev[n] = p;
            if self.first[v] == d {
                self.first[v] = n;
            }
        }
        self.next[d] = NONE;
        self.prev[d] = NONE;
        self.degree[v] -= 1;
    }

    /// Inserts a link `u -> v`. Its dart at `u` is placed counterclockwise
    /// right after `after_u` (or alone if `u` is isolated); likewise at `v`.
    /// Returns the link; dart `2l` leaves `u`.
    pub fn insert_link(
        &mut self,
        u: Node,
        after_u: Option<Dart>,
        v: Node,
        after_v: Option<Dart>,
    ) -> Link {
        let l = self.new_link(u, v);
        self.splice_after(u, 2 * l, after_u);
        self.splice_after(v, 2 * l + 1, after_v);
        l
    }

    /// Appends a link at the end of both rotations (counterclockwise-last).
    pub fn push_link(&mut self, u: Node, v: Node) -> Link {
        let au = self.first_dart(u).map(|f| self.prev[f]);
        let l = self.new_link(u, v);
        self.splice_after(u, 2 * l, au);
        let av = self.first_dart(v).map(|f| self.prev[f]);
        self.splice_after(v, 2 * l + 1, av);
        l
    }

    pub fn remove_link(&mut self, l: Link) {
        debug_assert!(self.alive[l]);
        self.unsplice(2 * l);
        self.unsplice(2 * l + 1);
        self.alive[l] = false;
    }

    /// Replaces the path `a - x - b` through a degree-2 node `x` by a single
    /// link `a -> b` occupying the same rotation slots at `a` and `b`.
    /// Returns the new link.
    pub fn smooth(&mut self, x: Node) -> Link {
        let ds = self.darts_around(x);
        assert_eq!(ds.len(), 2, "smooth needs a degree-2 node");
        let (xa, xb) = (ds[0], ds[1]);
        let (a, b) = (self.head(xa), self.head(xb));
        let (at_a, at_b) = (twin(xa), twin(xb));
        let l = self.new_link(a, b);
        for (old, new) in [(at_a, 2 * l), (at_b, 2 * l + 1)] {
            let v = self.tail[old];
            let p = self.prev[old];
            if p == old {
                self.unsplice(old);
                self.splice_after(v, new, None);
            } else {
                self.unsplice(old);
                self.splice_after(v, new, Some(p));
            }
        }
        self.unsplice(xa);
        self.unsplice(xb);
        self.alive[link_of(xa)] = false;
        self.alive[link_of(xb)] = false;
        l
    }

    pub fn face_walk(&self, start: Dart) -> Vec<Dart> {
        let mut walk = vec![start];
        let mut d = self.face_next(start);
        while d != start {
            walk.push(d);
            d = self.face_next(d);
        }
        walk
    }

    pub fn faces(&self) -> Faces {
        let mut of_dart = vec![NONE; self.tail.len()];
        let mut walks = Vec::new();
        for l in self.links() {
            for d in [2 * l, 2 * l + 1] {
                if of_dart[d] != NONE {
                    continue;
                }
                let id = walks.len();
                let walk = self.face_walk(d);
                for &w in &walk {
                    of_dart[w] = id;
                }
                walks.push(walk);
            }
        }
        Faces { of_dart, walks }
    }

    /// Number of connected components among nodes (isolated nodes count).
    pub fn components(&self) -> usize {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for d in self.darts_around(v) {
                    let w = self.head(d);
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// True iff one side of the closed curve formed by `boundary` links
    /// contains no node outside `boundary_nodes`.
    ///
    /// Explores the faces on each side of `probe` without crossing boundary
    /// links and stops at the first foreign node.
    pub fn side_is_empty(
        &self,
        probe: Link,
        boundary: &HashSet<Link>,
        boundary_nodes: &HashSet<Node>,
    ) -> bool {
        [2 * probe, 2 * probe + 1]
            .into_iter()
            .any(|start| self.region_is_empty(start, boundary, boundary_nodes))
    }

    fn region_is_empty(
        &self,
        start: Dart,
        boundary: &HashSet<Link>,
        boundary_nodes: &HashSet<Node>,
    ) -> bool {
        let mut seen: HashSet<Dart> = HashSet::new();
        let mut queue = vec![start];
        while let Some(d0) = queue.pop() {
            if seen.contains(&d0) {
                continue;
            }
            let mut d = d0;
            loop {
                seen.insert(d);
                if !boundary_nodes.contains(&self.head(d)) {
                    return false;
                }
                if !boundary.contains(&link_of(d)) {
                    queue.push(twin(d));
                }
                d = self.face_next(d);
                if d == d0 {
                    break;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> PlaneMap {
        let mut m = PlaneMap::with_nodes(n);
        for i in 0..n {
            m.push_link(i, (i + 1) % n);
        }
        m
    }

    #[test]
    fn cycle_has_two_faces() {
        let m = cycle(4);
        let f = m.faces();
        assert_eq!(f.len(), 2);
        assert!(f.walks.iter().all(|w| w.len() == 4));
    }

    #[test]
    fn single_edge_has_one_face() {
        let mut m = PlaneMap::with_nodes(2);
        m.push_link(0, 1);
        let f = m.faces();
        assert_eq!(f.len(), 1);
        assert_eq!(f.walks[0].len(), 2);
    }

    #[test]
    fn chord_splits_face() {
        let mut m = cycle(4);
        // dart 0 runs 0 -> 1; its left face is one of the two 4-faces
        let walk = m.face_walk(0);
        let d0 = walk[0];
        let d2 = walk[2];
        m.insert_link(m.tail(d0), Some(d0), m.tail(d2), Some(d2));
        let f = m.faces();
        assert_eq!(f.len(), 3);
        let mut sizes: Vec<_> = f.walks.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 3, 4]);
    }

    #[test]
    fn smooth_merges_path() {
        let mut m = PlaneMap::with_nodes(3);
        m.push_link(0, 2);
        m.push_link(2, 1);
        let l = m.smooth(2);
        assert_eq!(m.degree(2), 0);
        assert_eq!(m.tail(2 * l), 0);
        assert_eq!(m.head(2 * l), 1);
        assert_eq!(m.faces().len(), 1);
    }

    #[test]
    fn bigon_sides() {
        let mut m = PlaneMap::with_nodes(3);
        let a = m.push_link(0, 1);
        let b = m.push_link(0, 1);
        m.push_link(1, 2);
        let boundary: HashSet<_> = [a, b].into();
        let nodes: HashSet<_> = [0, 1].into();
        assert!(m.side_is_empty(a, &boundary, &nodes));
    }
}
