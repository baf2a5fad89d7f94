use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use zpr::export::{export, Format};
use zpr::gen::{fixtures, gen};
use zpr::graph::{validate, OnePlaneGraph};
use zpr::pipeline::{draw, Drawing};
use zpr::scene::ZprScene;
use zpr::verify::{verify_one_visible, verify_zpr, Report};
use zpr::Error;

#[derive(Parser)]
#[command(
    name = "zpr",
    version,
    about = "1-visible z-parallel visibility representations of 1-plane graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a graph file against the embedding rules.
    Validate { graph: PathBuf },
    /// Compute a scene for a graph.
    Draw {
        graph: PathBuf,
        /// Scene output file (standard output when omitted).
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Write an intermediate stage as JSON; may be repeated.
        #[arg(long = "dump-stage", value_enum, value_delimiter = ',')]
        dump_stage: Vec<Stage>,
        /// Directory for stage dumps (defaults to the scene's directory).
        #[arg(long)]
        dump_dir: Option<PathBuf>,
        /// Check the result with the geometric verifier.
        #[arg(long)]
        verify: bool,
    },
    /// Check a scene against a graph; prints one JSON line per issue.
    Verify { scene: PathBuf, graph: PathBuf },
    /// Generate a random instance or print a named fixture.
    Gen {
        #[arg(long, env = "ZPR_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(short, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Emit a built-in fixture instead (k4_kite, k5, k6, fig6).
        #[arg(long, conflicts_with_all = ["n", "density"])]
        fixture: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Render a scene as OBJ or SVG.
    Export {
        scene: PathBuf,
        #[arg(short, long, value_parser = Format::NAMES)]
        format: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Augment,
    Skeleton,
    Orient,
    Bars,
    Gamma1,
    Orientations,
    Orders,
}

enum Failure {
    Violations,
    BadInput(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Cyclic(_)
            | Error::Internal(_)
            | Error::NotPermutation(_)
            | Error::SamePlane(..) => Failure::Internal(e.to_string()),
            _ => Failure::BadInput(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<OnePlaneGraph, Failure> {
    OnePlaneGraph::from_json(&read(path)?)
        .map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

fn read_scene(path: &Path) -> Result<ZprScene, Failure> {
    ZprScene::from_json(&read(path)?)
        .map_err(|e| Failure::BadInput(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(p) => fs::write(p, format!("{}\n", text.trim_end()))
            .map_err(|e| Failure::BadInput(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn cmd_validate(path: &Path) -> Outcome {
    let g = read_graph(path)?;
    let rep = validate(&g);
    if rep.is_ok() {
        println!("ok");
        return Ok(());
    }
    for v in &rep.violations {
        println!("{v}");
    }
    Err(Failure::Violations)
}

fn stage_files(d: &Drawing, stage: Stage) -> Vec<(&'static str, String)> {
    let json = |v: &serde_json::Value| serde_json::to_string_pretty(v).expect("json");
    match stage {
        Stage::Augment => vec![("augment", d.augmented.to_json())],
        Stage::Skeleton => vec![("skeleton", d.skeleton.to_json())],
        Stage::Orient => vec![("orient", d.orientation.to_json(&d.skeleton))],
        Stage::Bars => vec![("bars", d.bars.to_json())],
        Stage::Gamma1 => vec![("gamma1", d.gamma1.to_json())],
        Stage::Orientations => vec![("orientations", d.orientations.to_json())],
        Stage::Orders => vec![
            ("sigma1", json(&serde_json::json!(d.sigma1.0))),
            ("sigma2", json(&serde_json::json!(d.sigma2.0))),
        ],
    }
}

fn cmd_draw(
    graph: &Path,
    out: Option<&Path>,
    stages: &[Stage],
    dump_dir: Option<&Path>,
    check: bool,
) -> Outcome {
    let g = read_graph(graph)?;
    let rep = validate(&g);
    if !rep.is_ok() {
        return Err(Failure::BadInput(format!(
            "{}: invalid graph: {rep}",
            graph.display()
        )));
    }
    let d = draw(&g)?;
    if !stages.is_empty() {
        let dir = dump_dir
            .map(Path::to_path_buf)
            .or_else(|| out.and_then(Path::parent).map(Path::to_path_buf))
            .unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir)
            .map_err(|e| Failure::BadInput(format!("{}: {e}", dir.display())))?;
        let stem = graph
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("graph");
        for &stage in stages {
            for (name, text) in stage_files(&d, stage) {
                emit(Some(&dir.join(format!("{stem}.{name}.json"))), &text)?;
            }
        }
    }
    emit(out, &d.scene.to_json())?;
    if check {
        let mut rep = verify_zpr(&d.scene, &g);
        rep.issues.extend(verify_one_visible(&d.scene, &g).issues);
        if !rep.passed() {
            eprint!("{}", rep.json_lines());
            return Err(Failure::Violations);
        }
    }
    Ok(())
}

fn cmd_verify(scene: &Path, graph: &Path) -> Outcome {
    let scene = read_scene(scene)?;
    let g = read_graph(graph)?;
    let mut rep: Report = verify_zpr(&scene, &g);
    if rep.passed() {
        rep = verify_one_visible(&scene, &g);
    }
    print!("{}", rep.json_lines());
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Violations)
    }
}

fn cmd_gen(
    seed: u64,
    n: usize,
    density: f64,
    fixture: Option<&str>,
    out: Option<&Path>,
) -> Outcome {
    let g = match fixture {
        Some(name) => fixtures()
            .remove(name)
            .ok_or_else(|| Failure::BadInput(format!("unknown fixture {name:?}")))?,
        None => gen(seed, n, density)?,
    };
    emit(out, &g.to_json())
}

fn cmd_export(scene: &Path, format: &str, out: Option<&Path>) -> Outcome {
    let scene = read_scene(scene)?;
    let format = Format::parse(format)
        .ok_or_else(|| Failure::BadInput(format!("unknown format {format}")))?;
    emit(out, &export(&scene, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Validate { graph } => cmd_validate(graph),
        Command::Draw {
            graph,
            out,
            dump_stage,
            dump_dir,
            verify,
        } => cmd_draw(
            graph,
            out.as_deref(),
            dump_stage,
            dump_dir.as_deref(),
            *verify,
        ),
        Command::Verify { scene, graph } => cmd_verify(scene, graph),
        Command::Gen {
            seed,
            n,
            density,
            fixture,
            out,
        } => cmd_gen(*seed, *n, *density, fixture.as_deref(), out.as_deref()),
        Command::Export { scene, format, out } => cmd_export(scene, format, out.as_deref()),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violations) => ExitCode::from(1),
        Err(Failure::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
