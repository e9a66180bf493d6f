use std::collections::HashMap;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

/// Parses a whitespace-separated edge list of integer node ids.
///
/// Blank lines and lines starting with `#` are skipped. `node_count` is the
/// largest id plus one, so unused ids below it become isolated nodes.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut max_id: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let Some(tokens) = data_tokens(raw) else {
            continue;
        };
        let [a, b] = tokens[..] else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two node ids, found {}", tokens.len()),
            });
        };
        let u = parse_id(a, line_no)?;
        let v = parse_id(b, line_no)?;
        if u == v {
            return Err(Error::validation(format!(
                "line {line_no}: self-loop at node {u}"
            )));
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        pairs.push((u, v));
    }
    let n = max_id.map_or(0, |m| m + 1);
    Graph::from_edges(n, pairs)
}

/// Reads and parses an integer edge-list file.
pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    load_edge_list(&text)
}

/// A graph loaded from arbitrary node labels, with the label of each dense id.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

/// Parses an edge list whose node tokens are arbitrary strings. Ids are
/// assigned in order of first appearance.
pub fn load_labeled_edge_list(text: &str) -> Result<LabeledGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let Some(tokens) = data_tokens(raw) else {
            continue;
        };
        let [a, b] = tokens[..] else {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two node labels, found {}", tokens.len()),
            });
        };
        if a == b {
            return Err(Error::validation(format!(
                "line {line_no}: self-loop at node {a}"
            )));
        }
        let mut id_of = |s: &str| {
            *ids.entry(s.to_string()).or_insert_with(|| {
                labels.push(s.to_string());
                labels.len() - 1
            })
        };
        let u = id_of(a);
        let v = id_of(b);
        pairs.push((u, v));
    }
    let graph = Graph::from_edges(labels.len(), pairs)?;
    Ok(LabeledGraph { graph, labels })
}

fn data_tokens(raw: &str) -> Option<Vec<&str>> {
    let line = raw.trim();
    if line.is_empty() || line.starts_with('#') {
        return None;
    }
    Some(line.split_whitespace().collect())
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("invalid node id {tok:?}"),
    })
}
