pub mod connectivity;
pub mod detach;
pub mod error;
pub mod families;
pub mod gfp;
pub mod graph;
pub mod io;
pub mod mask;
pub mod matroid;
pub mod recognizers;
pub mod structures;

pub use error::{Error, Result};
pub use gfp::LinearRep;
pub use graph::{Graph, MinorOp};
pub use mask::Mask;
pub use matroid::{Matroid, MinorMode, Provenance, Reduction};
