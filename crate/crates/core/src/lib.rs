pub mod augment;
pub mod bars;
pub mod embedding;
pub mod error;
pub mod export;
pub mod extend;
pub mod gen;
pub mod graph;
pub mod lift;
pub mod pipeline;
pub mod scene;
pub mod skeleton;
pub mod verify;

pub use augment::{augment, AugmentedGraph};
pub use error::{Error, Result};
pub use graph::{validate, OnePlaneGraph, Origin, ValidationReport, Violation};
