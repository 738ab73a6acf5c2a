use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context, Result};
use ramsey_core::format::{parse_coloring, parse_graph};
use ramsey_core::{Error, Graph, TwoColoring};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Prefixes parse errors with `path:line:` so they read like compiler diagnostics.
fn located(path: &Path, err: Error) -> anyhow::Error {
    match err {
        Error::Parse { line, message } => anyhow!("{}:{line}: {message}", path.display()),
        other => anyhow!("{}: {other}", path.display()),
    }
}

pub fn graph_file(path: &Path) -> Result<Graph> {
    parse_graph(&read(path)?).map_err(|e| located(path, e))
}

pub fn coloring_file(path: &Path) -> Result<TwoColoring> {
    parse_coloring(&read(path)?).map_err(|e| located(path, e))
}

/// Converts a list of 0-based ids to the 1-based ids used in files and output.
pub fn one_based(ids: &[usize]) -> Vec<usize> {
    ids.iter().map(|v| v + 1).collect()
}
