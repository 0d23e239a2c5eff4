//! Solvers for Connected Max Cut and Maximum Minimal Cut.

pub mod bench;
pub mod budget;
pub mod cliquewidth;
pub mod cutcount;
pub mod dp;
pub mod driver;
pub mod error;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod partition;
pub mod rank;
pub mod reductions;
pub mod report;
pub mod treedec;
pub mod twincover;

pub use error::{Error, Result};
pub use graph::Graph;
pub use report::{Algorithm, Problem, SolveReport};
