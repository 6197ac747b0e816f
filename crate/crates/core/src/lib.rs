pub mod approx;
pub mod error;
pub mod exact;
pub mod graph;
pub mod hardness;
pub mod lp;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{density, enumerate_targets, generate, parse_graph, GeneratorSpec, Graph, TargetFamily, TargetList};
pub use lp::{ExactCover, ExactPacking, FractionalCover, FractionalPacking};
pub use scalar::{Rational, Scalar};
