//! Edge-list and Pauli-sum text files.
//!
//! Edge list: a `<num_vertices> <num_edges>` header, then one `i j w` line per
//! edge (0-indexed, whitespace separated). Blank lines and `#` comments are
//! skipped. Weights are written with `f64`'s shortest round-trip formatting,
//! so integer weights come back bit for bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use logcut_core::{Graph, PauliSum};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub fn parse_edge_list(text: &str, origin: &str) -> Result<Graph> {
    let err = |line: usize, message: String| CliError::Parse {
        origin: origin.to_string(),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let mut fields = header.split_whitespace();
    let mut count = |name: &str| -> Result<usize> {
        fields
            .next()
            .ok_or_else(|| err(hline, format!("header is missing {name}")))?
            .parse()
            .map_err(|e| err(hline, format!("bad {name}: {e}")))
    };
    let vertices = count("vertex count")?;
    let declared = count("edge count")?;
    if fields.next().is_some() {
        return Err(err(hline, "header has more than two fields".into()));
    }

    let mut edges = Vec::with_capacity(declared);
    for (lineno, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(err(lineno, format!("expected `i j w`, found {} fields", f.len())));
        }
        let u = f[0]
            .parse()
            .map_err(|e| err(lineno, format!("bad vertex {:?}: {e}", f[0])))?;
        let v = f[1]
            .parse()
            .map_err(|e| err(lineno, format!("bad vertex {:?}: {e}", f[1])))?;
        let w = f[2]
            .parse()
            .map_err(|e| err(lineno, format!("bad weight {:?}: {e}", f[2])))?;
        edges.push((u, v, w));
    }
    if edges.len() != declared {
        return Err(err(
            hline,
            format!("header declares {declared} edges, found {}", edges.len()),
        ));
    }
    Graph::new(vertices, edges).map_err(|e| err(hline, e.to_string()))
}

pub fn format_edge_list(graph: &Graph) -> String {
    let mut out = format!("{} {}\n", graph.num_vertices(), graph.num_edges());
    for e in graph.edges() {
        let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
    }
    out
}

/// Reads an edge-list file and returns the graph with the SHA-256 of its bytes.
pub fn read_edge_list(path: &Path) -> Result<(Graph, String)> {
    let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Parse {
        origin: path.display().to_string(),
        line: 0,
        message: e.to_string(),
    })?;
    let graph = parse_edge_list(text, &path.display().to_string())?;
    Ok((graph, sha256_hex(&bytes)))
}

pub fn write_edge_list(path: &Path, graph: &Graph) -> Result<()> {
    fs::write(path, format_edge_list(graph)).map_err(|e| CliError::io(path, e))
}

pub fn read_pauli_sum(path: &Path) -> Result<PauliSum> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    Ok(PauliSum::parse(&text)?)
}

pub fn write_pauli_sum(path: &Path, sum: &PauliSum) -> Result<()> {
    fs::write(path, sum.to_string()).map_err(|e| CliError::io(path, e))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
