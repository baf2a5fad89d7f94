use std::collections::BTreeSet;

use proptest::prelude::*;

use zpr::augment::{augment, check_kites, check_maximality};
use zpr::bars::{check_st, choose_st_and_orient};
use zpr::gen::gen;
use zpr::graph::{faces, validate, OnePlaneGraph, Origin};
use zpr::pipeline::draw;
use zpr::scene::ZprScene;
use zpr::skeleton::PlanarSkeleton;
use zpr::verify::verify_zpr;

fn instance() -> impl Strategy<Value = OnePlaneGraph> {
    (any::<u64>(), 1usize..40, 0.0f64..=1.0)
        .prop_map(|(seed, n, density)| gen(seed, n, density).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_graphs_validate(g in instance()) {
        let rep = validate(&g);
        prop_assert!(rep.is_ok(), "{}", rep);
    }

    #[test]
    fn faces_partition_the_darts(g in instance()) {
        let fs = faces(&g).unwrap();
        let mut seen = BTreeSet::new();
        let mut darts = 0;
        for f in &fs {
            for d in &f.boundary {
                prop_assert!(seen.insert((d.piece, d.from)));
                darts += 1;
            }
        }
        let pieces = g.edges.len() + g.crossings.len() * 2;
        prop_assert_eq!(darts, 2 * pieces);
        prop_assert_eq!(fs.iter().filter(|f| f.outer).count(), 1);
        // Euler on the connected planarization
        let nodes = g.vertices.len() + g.crossings.len();
        prop_assert_eq!(nodes as i64 - pieces as i64 + fs.len() as i64, 2);
    }

    #[test]
    fn augmentation_is_maximal_and_idempotent(g in instance()) {
        let a = augment(&g).unwrap();
        prop_assert!(validate(&a.graph).is_ok());
        prop_assert!(check_kites(&a).is_ok(), "{}", check_kites(&a));
        prop_assert!(check_maximality(&a).is_ok(), "{}", check_maximality(&a));
        prop_assert!(g.edges.iter().all(|e| a.origins[&e.id] == Origin::FromG || a.graph.edge(e.id).is_none()));
        let again = augment(&a.graph).unwrap();
        prop_assert_eq!(again.graph.edges.len(), a.graph.edges.len());
        prop_assert_eq!(again.added_edges(), 0);
    }

    #[test]
    fn st_orientation_is_bipolar(g in instance()) {
        let a = augment(&g).unwrap();
        let sk = PlanarSkeleton::from_augmented(&a);
        let o = choose_st_and_orient(&sk).unwrap();
        prop_assert!(check_st(&sk, &o).is_ok(), "{:?}", check_st(&sk, &o));
    }

    #[test]
    fn scene_round_trips_and_verifies(g in instance()) {
        let d = draw(&g).unwrap();
        let back = ZprScene::from_json(&d.scene.to_json()).unwrap();
        prop_assert_eq!(&back, &d.scene);
        prop_assert!(verify_zpr(&back, &g).passed());
        prop_assert_eq!(d.scene.rects.len(), g.vertices.len());
        prop_assert_eq!(d.scene.cylinders.len(), g.edges.len());
        prop_assert!(d.sigma1.extends(&d.orientations.o1));
        prop_assert!(d.sigma2.extends(&d.orientations.o2));
    }

    #[test]
    fn graph_json_round_trips(g in instance()) {
        prop_assert_eq!(OnePlaneGraph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn each_bar_traversed_at_most_once(g in instance()) {
        let d = draw(&g).unwrap();
        let mut used = BTreeSet::new();
        for vis in &d.gamma1.visibilities {
            prop_assert!(vis.traverses.len() <= 1);
            for &v in &vis.traverses {
                prop_assert!(used.insert(v));
            }
        }
    }
}
