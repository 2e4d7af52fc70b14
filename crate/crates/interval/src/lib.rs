//! File formats, reports and the driver behind the `interval` command.

pub mod datafile;
pub mod emit;
pub mod run;
pub mod spec;

pub use run::{Method, RunError, Settings};
pub use spec::{GroupSpec, SubgroupRule};
