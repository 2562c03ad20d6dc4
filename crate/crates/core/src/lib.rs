pub mod artifact;
pub mod budget;
pub mod error;
pub mod hjcube;
pub mod hypergraph;
pub mod intembed;
pub mod linesys;
pub mod oracles;
pub mod picture;
pub mod pipeline;
pub mod shifthyp;
pub mod workbench;

pub use budget::{Budget, Verdict};
pub use error::{Error, Result};
