//! Workspace language, batch runner and reference fixtures for `msset`.

pub mod eval;
pub mod output;
pub mod paper;
pub mod run;
pub mod syntax;

pub use eval::{parse, Ctx, DslError, Workspace};
pub use run::{run, Outcome, RunError};
