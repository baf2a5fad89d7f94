//! The full construction from a 1-plane graph to a 1-visible ZPR.

use crate::augment::{augment, AugmentedGraph};
use crate::bars::{bars, choose_st_and_orient, BarDrawing, StOrientation};
use crate::error::{internal, Error, Result};
use crate::extend::{reinsert_crossings, TraversalMap};
use crate::graph::OnePlaneGraph;
use crate::lift::{
    assign_y, build_orientations, check_acyclic, classify_faces, place_cylinders,
    preliminary_rects, total_order, FaceShape, Orientations, TotalOrder,
};
use crate::scene::{Rect, ZprScene};
use crate::skeleton::PlanarSkeleton;

/// Every intermediate artifact of one run.
#[derive(Clone, Debug)]
pub struct Drawing {
    pub input: OnePlaneGraph,
    pub augmented: AugmentedGraph,
    pub skeleton: PlanarSkeleton,
    pub orientation: StOrientation,
    pub bars: BarDrawing,
    pub gamma1: BarDrawing,
    pub traversals: TraversalMap,
    pub shapes: Vec<FaceShape>,
    pub orientations: Orientations,
    pub sigma1: TotalOrder,
    pub sigma2: TotalOrder,
    pub preliminary: Vec<Rect>,
    pub scene: ZprScene,
}

/// Runs the construction; the input must validate.
pub fn draw(g: &OnePlaneGraph) -> Result<Drawing> {
    // augment runs the full validation while planarizing
    let augmented = augment(g)?;
    let skeleton = PlanarSkeleton::from_augmented(&augmented);
    let orientation = choose_st_and_orient(&skeleton)?;
    let bd = bars(&skeleton, &orientation)?;
    let (gamma1, traversals) = reinsert_crossings(&skeleton, &orientation, &bd)?;
    let shapes = classify_faces(&skeleton, &orientation, &traversals)?;
    let orientations = build_orientations(&shapes)?;
    for po in [&orientations.o1, &orientations.o2] {
        check_acyclic(po).map_err(Error::Cyclic)?;
    }
    let vertices = skeleton.vertex_ids.clone();
    let sigma1 = total_order(&orientations.o1, &vertices)?;
    let sigma2 = total_order(&orientations.o2, &vertices)?;
    let preliminary = preliminary_rects(&gamma1);
    let rects = assign_y(&sigma1, &sigma2, &preliminary)?;
    let scene = place_cylinders(&gamma1, &traversals, &orientations, &rects, g)?;
    if scene.cylinders.len() != g.edges.len() {
        return Err(internal("not every edge received a cylinder"));
    }
    Ok(Drawing {
        input: g.clone(),
        augmented,
        skeleton,
        orientation,
        bars: bd,
        gamma1,
        traversals,
        shapes,
        orientations,
        sigma1,
        sigma2,
        preliminary,
        scene,
    })
}

impl Drawing {
    /// The edges seen directly in γ₁, as `(u, v, id)`.
    pub fn direct_edges(&self) -> Vec<(u64, u64, u64)> {
        self.augmented
            .graph
            .edges
            .iter()
            .filter(|e| self.traversals.traversed_by(e.id).is_none())
            .map(|e| (e.u, e.v, e.id))
            .collect()
    }

    pub fn orders_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "sigma1": self.sigma1.0,
            "sigma2": self.sigma2.0,
        }))
        .expect("orders serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{fixtures, gen};
    use crate::verify::{verify_one_visible, verify_zpr};

    #[test]
    fn fixtures_draw_and_verify() {
        for (name, g) in fixtures() {
            let d = draw(&g).unwrap_or_else(|e| panic!("{name}: {e}"));
            let rep = verify_zpr(&d.scene, &g);
            assert!(rep.passed(), "{name}: {rep}");
            let rep = verify_one_visible(&d.scene, &g);
            assert!(rep.passed(), "{name}: {rep}");
        }
    }

    #[test]
    fn random_instances_draw_and_verify() {
        for seed in 0..30 {
            let g = gen(seed, 5 + (seed as usize * 3) % 40, 0.6).unwrap();
            let d = draw(&g).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let rep = verify_zpr(&d.scene, &g);
            assert!(rep.passed(), "seed {seed}: {rep}");
            let rep = verify_one_visible(&d.scene, &g);
            assert!(rep.passed(), "seed {seed}: {rep}");
        }
    }
}
