//! Resolving a graph argument: `-` for stdin, a file path, or a fixture name.

use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use pdskit::generators::fixture;
use pdskit::hamiltonian::{parse_cycle_graph, CubicCycleGraph};
use pdskit::{parse_graph, Graph};
use sha2::{Digest, Sha256};

pub struct Input {
    pub graph: Graph,
    /// Set when the input was given in cycle form.
    pub cycle: Option<CubicCycleGraph>,
    /// SHA-256 of the raw input bytes (fixtures hash their edge list).
    pub digest: String,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Cycle form has a lone vertex count on its first data line; the edge list
/// has `n m`.
fn is_cycle_form(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.split_whitespace().count() == 1)
}

fn from_text(text: &str) -> Result<(Graph, Option<CubicCycleGraph>)> {
    if is_cycle_form(text) {
        let c = parse_cycle_graph(text)?;
        Ok((c.to_graph(), Some(c)))
    } else {
        Ok((parse_graph(text, true)?, None))
    }
}

pub fn load(arg: &str) -> Result<Input> {
    if arg == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .context("reading stdin")?;
        let (graph, cycle) = from_text(&text)?;
        return Ok(Input {
            graph,
            cycle,
            digest: digest(text.as_bytes()),
        });
    }
    if Path::new(arg).is_file() {
        let text = fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        let (graph, cycle) = from_text(&text).with_context(|| format!("parsing {arg}"))?;
        return Ok(Input {
            graph,
            cycle,
            digest: digest(text.as_bytes()),
        });
    }
    let fx = fixture(arg)?;
    Ok(Input {
        digest: digest(fx.graph.to_edge_list().as_bytes()),
        graph: fx.graph,
        cycle: fx.cycle,
    })
}
