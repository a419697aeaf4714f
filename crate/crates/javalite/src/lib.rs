//! Checker and interpreter for a small Java subset.
//!
//! A script is a sequence of statements that builds the task's output DTO
//! from input variables named after the input classes. DTO classes come
//! from the task's project sources and dependency archives; their fields
//! are private and reached through synthesized getters and setters.

use std::path::Path;

use ccci_core::syntax::ast::{parse_snippet, Snippet};

mod check;
mod interp;
mod methods;
mod world;

pub use check::check;
pub use interp::{first_difference, run, sentinel_inputs, Fault, Value};
pub use world::{Prim, Ty, World, TASK_FILE};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("workspace setup failed: {0}")]
    Setup(String),
    #[error("{0}")]
    Compile(String),
    #[error("{0}")]
    Test(String),
}

fn parse(text: &str) -> Result<Snippet, Error> {
    parse_snippet(text).map_err(|e| Error::Compile(format!("error: {e}")))
}

/// Compile a script against the classes of the workspace's task.
pub fn compile_script(world: &World, text: &str) -> Result<Snippet, Error> {
    let snippet = parse(text)?;
    let errors = check(world, &snippet);
    if errors.is_empty() {
        Ok(snippet)
    } else {
        let mut msg: Vec<String> = errors.iter().map(|e| format!("error: {e}")).collect();
        msg.push(format!("{} error{}", errors.len(), if errors.len() == 1 { "" } else { "s" }));
        Err(Error::Compile(msg.join("\n")))
    }
}

/// Run candidate and reference on identical inputs and compare their results.
pub fn test_script(world: &World, candidate: &str, reference: &str) -> Result<(), Error> {
    let cand = compile_script(world, candidate)?;
    let refr = compile_script(world, reference).map_err(|e| Error::Setup(format!("reference does not compile:\n{e}")))?;
    let expected = run(world, &refr, sentinel_inputs(world)).map_err(|f| Error::Setup(format!("reference failed: {f}")))?;
    let actual = run(world, &cand, sentinel_inputs(world)).map_err(|f| Error::Test(format!("candidate failed: {f}")))?;
    match first_difference(&actual, &expected) {
        None => Ok(()),
        Some(d) => Err(Error::Test(format!("result differs from reference at {d}"))),
    }
}

pub fn open(workspace: &Path) -> Result<World, Error> {
    World::open(workspace)
}
