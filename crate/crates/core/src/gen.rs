//! Seeded 1-plane instances and the fixed fixture corpus.
//!
//! A random stacked triangulation is grown by splitting faces. Pairs of
//! adjacent inner triangles are then turned into kites by adding the
//! crossing diagonal, and some kite sides are removed again so that the
//! augmentation has work to do.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{piece_id, Crossing, DartRef, Edge, OnePlaneGraph};

/// Random valid 1-plane graph on `n` vertices. About `density` of the
/// available pairs of adjacent inner triangles receive a crossing.
pub fn gen(seed: u64, n: usize, density: f64) -> Result<OnePlaneGraph> {
    if n < 1 {
        return Err(Error::EmptyInstance);
    }
    let density = density.clamp(0.0, 1.0);
    if n <= 2 {
        let edges: &[(usize, usize)] = if n == 2 { &[(0, 1)] } else { &[] };
        let points = [(0, 0), (1, 0)];
        return OnePlaneGraph::from_straight_line(&points[..n], edges);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // inner faces as counterclockwise triples; the outer face walk is 0, 2, 1
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for v in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[f];
        faces[f] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    const OUTER: usize = usize::MAX;
    // dart (x, y) -> face on its left and the third corner
    let mut left_of: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for (i, &[a, b, c]) in faces.iter().enumerate() {
        left_of.insert((a, b), (i, c));
        left_of.insert((b, c), (i, a));
        left_of.insert((c, a), (i, b));
    }
    for (a, b, c) in [(0, 2, 1), (2, 1, 0), (1, 0, 2)] {
        left_of.insert((a, b), (OUTER, c));
    }
    let mut edge_set: Vec<(usize, usize)> =
        left_of.keys().filter(|(a, b)| a < b).copied().collect();
    edge_set.sort_unstable();
    let mut adjacent: HashSet<(usize, usize)> = edge_set.iter().copied().collect();

    let mut order = edge_set.clone();
    order.shuffle(&mut rng);
    let mut used = vec![false; faces.len()];
    let mut undroppable: HashSet<(usize, usize)> = [(0, 1), (0, 2), (1, 2)].into();
    let mut kites: Vec<(usize, usize, usize, usize)> = Vec::new(); // a, b, r, s
    for (a, b) in order {
        let (fl, r) = left_of[&(a, b)];
        let (fr, s) = left_of[&(b, a)];
        if fl == OUTER || fr == OUTER || used[fl] || used[fr] {
            continue;
        }
        if adjacent.contains(&(r.min(s), r.max(s))) || !rng.gen_bool(density) {
            continue;
        }
        used[fl] = true;
        used[fr] = true;
        adjacent.insert((r.min(s), r.max(s)));
        undroppable.insert((a, b));
        kites.push((a, b, r, s));
    }
    let key = |x: usize, y: usize| (x.min(y), x.max(y));
    let mut dropped: HashSet<(usize, usize)> = HashSet::new();
    for &(a, b, r, s) in &kites {
        if !rng.gen_bool(density / 2.0) {
            continue;
        }
        // a side and its partner in the same triangle; keeping the partner
        // and the crossed edge a-b keeps both ends connected
        let sides = [
            (key(a, r), key(r, b)),
            (key(r, b), key(a, r)),
            (key(b, s), key(s, a)),
            (key(s, a), key(b, s)),
        ];
        let (side, partner) = sides[rng.gen_range(0..4)];
        if undroppable.contains(&side) || dropped.contains(&partner) {
            continue;
        }
        dropped.insert(side);
        undroppable.insert(partner);
    }

    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_id: HashMap<(usize, usize), u64> = HashMap::new();
    for &(a, b) in edge_set.iter().filter(|e| !dropped.contains(e)) {
        edge_id.insert((a, b), edges.len() as u64);
        edges.push(Edge {
            u: a as u64,
            v: b as u64,
            id: edges.len() as u64,
        });
    }
    for &(_, _, r, s) in &kites {
        edge_id.insert(key(r, s), edges.len() as u64);
        edges.push(Edge {
            u: r as u64,
            v: s as u64,
            id: edges.len() as u64,
        });
    }
    let piece_from = |x: usize, y: usize, crossed: bool| -> u64 {
        let id = edge_id[&key(x, y)];
        let e = &edges[id as usize];
        if crossed && e.u != x as u64 {
            piece_id(id, 1)
        } else {
            piece_id(id, 0)
        }
    };
    let mut crossed_at: HashSet<(usize, usize)> = HashSet::new();
    let mut crossings = Vec::new();
    let mut dummy_rot: Vec<Vec<u64>> = Vec::new();
    for (k, &(a, b, r, s)) in kites.iter().enumerate() {
        crossed_at.insert(key(a, b));
        crossed_at.insert(key(r, s));
        crossings.push(Crossing {
            first: edge_id[&key(a, b)],
            second: edge_id[&key(r, s)],
            dummy: (n + k) as u64,
        });
        // around the crossing: towards a, s, b, r
        dummy_rot.push(vec![
            piece_from(a, b, true),
            piece_from(s, r, true),
            piece_from(b, a, true),
            piece_from(r, s, true),
        ]);
    }

    // rotation of each vertex in the triangulation, then splice diagonals
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for (&(x, y), &(_, z)) in &left_of {
        // face x -> y -> z on the left: around x, y is followed by z
        succ.insert((x, y), z);
    }
    let mut diag_after: HashMap<(usize, usize), usize> = HashMap::new();
    for &(a, b, r, s) in &kites {
        diag_after.insert((r, a), s);
        diag_after.insert((s, b), r);
    }
    let mut rotation = BTreeMap::new();
    let mut first: Vec<usize> = vec![usize::MAX; n];
    for &(a, b) in &edge_set {
        first[a] = first[a].min(b);
        first[b] = first[b].min(a);
    }
    for v in 0..n {
        let start = first[v];
        let mut ring = Vec::new();
        let mut w = start;
        loop {
            if !dropped.contains(&key(v, w)) {
                let crossed = crossed_at.contains(&key(v, w));
                ring.push(piece_from(v, w, crossed));
            }
            if let Some(&t) = diag_after.get(&(v, w)) {
                ring.push(piece_from(v, t, true));
            }
            w = succ[&(v, w)];
            if w == start {
                break;
            }
        }
        rotation.insert(v as u64, ring);
    }
    for (k, ring) in dummy_rot.into_iter().enumerate() {
        rotation.insert((n + k) as u64, ring);
    }
    let outer_face = DartRef {
        piece: piece_from(0, 2, false),
        from: 0,
    };
    let g = OnePlaneGraph {
        vertices: (0..n as u64).collect(),
        edges,
        crossings,
        rotation,
        outer_face,
    };
    Ok(g)
}

/// Named instances with hand-checked embeddings.
pub fn fixtures() -> BTreeMap<&'static str, OnePlaneGraph> {
    let mut out = BTreeMap::new();
    let build = |p: &[(i64, i64)], e: &[(usize, usize)]| {
        OnePlaneGraph::from_straight_line(p, e).expect("fixture drawing is 1-plane")
    };
    out.insert(
        "k4_kite",
        build(
            &[(0, 0), (2, 0), (2, 2), (0, 2)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)],
        ),
    );
    let all = |n: usize| -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    };
    out.insert(
        "k5",
        build(&[(0, 0), (10, 0), (5, 10), (5, 3), (4, 6)], &all(5)),
    );
    out.insert(
        "k6",
        build(
            &[(0, 0), (20, 0), (10, 20), (4, 3), (16, 3), (10, 14)],
            &all(6),
        ),
    );
    // s, a, b, e, f, g, h, t
    let (s, a, b, e, f, g, h, t) = (0, 1, 2, 3, 4, 5, 6, 7);
    out.insert(
        "fig6",
        build(
            &[
                (5, 0),
                (0, 4),
                (4, 4),
                (6, 5),
                (10, 4),
                (2, 8),
                (8, 8),
                (5, 11),
            ],
            &[
                (s, a),
                (a, g),
                (g, t),
                (t, h),
                (h, f),
                (f, s),
                (s, b),
                (a, b),
                (g, b),
                (e, h),
                (e, f),
                (s, e),
                (b, f),
                (g, e),
                (b, h),
            ],
        ),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate;

    #[test]
    fn fixtures_are_valid() {
        let fx = fixtures();
        let crossings = |k: &str| fx[k].crossings.len();
        for (name, g) in &fx {
            assert!(validate(g).is_ok(), "{name}: {}", validate(g));
        }
        assert_eq!(
            (
                crossings("k4_kite"),
                crossings("k5"),
                crossings("k6"),
                crossings("fig6")
            ),
            (1, 1, 3, 2)
        );
        assert_eq!(fx["k6"].edges.len(), 15);
        assert_eq!(fx["fig6"].vertices.len(), 8);
    }

    #[test]
    fn generated_instances_validate() {
        for seed in 0..40 {
            for n in [1, 2, 3, 4, 7, 20] {
                let g = gen(seed, n, 0.6).unwrap();
                assert!(validate(&g).is_ok(), "seed {seed} n {n}: {}", validate(&g));
                assert_eq!(g.vertices.len(), n);
            }
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = gen(42, 20, 0.5).unwrap();
        assert!(!a.crossings.is_empty());
        assert_eq!(a.to_json(), gen(42, 20, 0.5).unwrap().to_json());
        assert!(gen(42, 20, 0.0).unwrap().crossings.is_empty());
        assert!(gen(1, 0, 0.5).is_err());
    }
}
