use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zpr::lift::{check_acyclic, TotalOrder};
use zpr::pipeline::draw;
use zpr::scene::{q, ZprScene};
use zpr::OnePlaneGraph;

fn zpr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zpr"))
        .args(args)
        .env_remove("ZPR_SEED")
        .output()
        .unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zpr-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture(dir: &Path, name: &str) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    let out = zpr(&["gen", "--fixture", name, "-o", s(&path)]);
    assert_eq!(out.status.code(), Some(0));
    path
}

#[test]
fn draw_k4_then_verify() {
    let dir = scratch("k4");
    let graph = fixture(&dir, "k4_kite");
    let scene = dir.join("scene.json");
    let out = zpr(&["draw", s(&graph), "-o", s(&scene), "--verify"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = zpr(&["verify", s(&scene), s(&graph)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        r#"{"kind":"pass"}"#
    );
}

#[test]
fn tampered_scene_fails_verification() {
    let dir = scratch("tamper");
    let graph = fixture(&dir, "k5");
    let scene_path = dir.join("scene.json");
    assert_eq!(
        zpr(&["draw", s(&graph), "-o", s(&scene_path)])
            .status
            .code(),
        Some(0)
    );
    let mut scene = ZprScene::from_json(&fs::read_to_string(&scene_path).unwrap()).unwrap();
    scene.cylinders[0].x += q(1000);
    fs::write(&scene_path, scene.to_json()).unwrap();
    let out = zpr(&["verify", s(&scene_path), s(&graph)]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout
        .lines()
        .all(|l| serde_json::from_str::<serde_json::Value>(l).is_ok()));
    assert!(stdout.contains("bad-cylinder"));
}

#[test]
fn fig6_orders_extend_their_orientations() {
    let dir = scratch("fig6");
    let graph = fixture(&dir, "fig6");
    let scene = dir.join("fig6.scene.json");
    let out = zpr(&[
        "draw",
        s(&graph),
        "-o",
        s(&scene),
        "--dump-stage=orders,orientations",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g = OnePlaneGraph::from_json(&fs::read_to_string(&graph).unwrap()).unwrap();
    let d = draw(&g).unwrap();
    for (name, po) in [
        ("sigma1", &d.orientations.o1),
        ("sigma2", &d.orientations.o2),
    ] {
        let text = fs::read_to_string(dir.join(format!("fig6.{name}.json"))).unwrap();
        let order = TotalOrder(serde_json::from_str(&text).unwrap());
        assert_eq!(order.0.len(), 8);
        assert!(check_acyclic(po).is_ok());
        assert!(order.extends(po), "{name}");
    }
    assert!(dir.join("fig6.orientations.json").exists());
}

#[test]
fn every_stage_dumps_parseable_json() {
    let dir = scratch("stages");
    let graph = fixture(&dir, "k6");
    let out = zpr(&[
        "draw",
        s(&graph),
        "--dump-dir",
        s(&dir),
        "--dump-stage=augment,skeleton,orient,bars,gamma1,orientations,orders",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let scene: ZprScene = ZprScene::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(scene.rects.len(), 6);
    for stage in [
        "augment",
        "skeleton",
        "orient",
        "bars",
        "gamma1",
        "orientations",
        "sigma1",
        "sigma2",
    ] {
        let text = fs::read_to_string(dir.join(format!("k6.{stage}.json"))).unwrap();
        serde_json::from_str::<serde_json::Value>(&text).unwrap();
    }
    let gamma1 =
        zpr::bars::BarDrawing::from_json(&fs::read_to_string(dir.join("k6.gamma1.json")).unwrap())
            .unwrap();
    assert!(zpr::verify::section_matches(&scene, &gamma1.bars));
}

#[test]
fn bad_input_exits_two() {
    let dir = scratch("bad");
    let junk = dir.join("junk.json");
    fs::write(&junk, "{ not json").unwrap();
    assert_eq!(zpr(&["draw", s(&junk)]).status.code(), Some(2));
    assert_eq!(zpr(&["validate", s(&junk)]).status.code(), Some(2));
    assert_eq!(
        zpr(&["export", s(&junk), "-f", "obj"]).status.code(),
        Some(2)
    );
    assert_eq!(
        zpr(&["draw", s(&dir.join("missing.json"))]).status.code(),
        Some(2)
    );

    // parses, but the rotation at vertex 0 lists an edge it does not touch
    let graph = fixture(&dir, "k4_kite");
    let mut g = OnePlaneGraph::from_json(&fs::read_to_string(&graph).unwrap()).unwrap();
    let ring = g.rotation.get_mut(&0).unwrap();
    let last = ring.len() - 1;
    ring[last] = zpr::graph::piece_id(1, 0);
    let invalid = dir.join("invalid.json");
    fs::write(&invalid, g.to_json()).unwrap();
    assert_eq!(zpr(&["validate", s(&invalid)]).status.code(), Some(1));
    let out = zpr(&["draw", s(&invalid)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid graph"));
}

#[test]
fn gen_is_deterministic_and_seed_env_wins() {
    let a = zpr(&["gen", "--seed", "42", "-n", "20"]).stdout;
    let b = zpr(&["gen", "--seed", "42", "-n", "20"]).stdout;
    assert_eq!(a, b);
    let g = OnePlaneGraph::from_json(&String::from_utf8_lossy(&a)).unwrap();
    assert_eq!(g.vertices.len(), 20);
    let from_env = Command::new(env!("CARGO_BIN_EXE_zpr"))
        .args(["gen", "-n", "20"])
        .env("ZPR_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(from_env.stdout, a);
}

#[test]
fn exports_write_figures() {
    let dir = scratch("export");
    let graph = fixture(&dir, "fig6");
    let scene = dir.join("scene.json");
    assert_eq!(
        zpr(&["draw", s(&graph), "-o", s(&scene)]).status.code(),
        Some(0)
    );
    for format in ["obj", "svg-section", "svg-yz"] {
        let out_path = dir.join(format!("figure.{format}"));
        let out = zpr(&["export", s(&scene), "-f", format, "-o", s(&out_path)]);
        assert_eq!(out.status.code(), Some(0));
        let text = fs::read_to_string(&out_path).unwrap();
        assert!(if format == "obj" {
            text.contains("\nv ")
        } else {
            text.starts_with("<svg")
        });
    }
    assert_ne!(
        zpr(&["export", s(&scene), "-f", "png"]).status.code(),
        Some(0)
    );
}
