use std::collections::HashMap;

use super::Graph;
use crate::error::{Error, Location, Result};

/// Parses one edge per line, two whitespace-separated vertex names.
///
/// Vertices are numbered in order of first appearance. An optional first
/// line `n <count>` fixes the order instead; names must then be indices
/// `0..count`. Blank lines and lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let mut fixed_order = None;
    if let Some(&(line, first)) = lines.peek() {
        let toks: Vec<_> = first.split_whitespace().collect();
        if toks.len() == 2 && toks[0] == "n" {
            let n = toks[1].parse::<usize>().map_err(|_| Error::Parse {
                at: Location(Some(line)),
                msg: format!("bad vertex count '{}'", toks[1]),
            })?;
            fixed_order = Some(n);
            lines.next();
        }
    }

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    for (line, l) in lines {
        let toks: Vec<_> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(Error::Parse {
                at: Location(Some(line)),
                msg: format!("expected two vertex names, found {}", toks.len()),
            });
        }
        let mut ends = [0; 2];
        for (slot, tok) in ends.iter_mut().zip(&toks) {
            *slot = match fixed_order {
                Some(n) => match tok.parse::<usize>() {
                    Ok(i) if i < n => i,
                    _ => {
                        return Err(Error::Parse {
                            at: Location(Some(line)),
                            msg: format!("vertex '{tok}' is not an index below {n}"),
                        })
                    }
                },
                None => *index.entry(tok.to_string()).or_insert_with(|| {
                    names.push(tok.to_string());
                    names.len() - 1
                }),
            };
        }
        edges.push((ends[0], ends[1], Some(line)));
    }

    match fixed_order {
        Some(n) => Graph::build(n, edges, None),
        None => Graph::build(names.len(), edges, Some(names)),
    }
}
