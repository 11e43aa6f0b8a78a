use std::fmt::Write;

use super::Graph;
use crate::vertex_set::VertexSet;

/// Graphviz rendering; vertices in `black` are drawn filled.
pub fn emit_dot(g: &Graph, black: Option<&VertexSet>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    for v in 0..g.order() {
        let style = match black {
            Some(b) if b.contains(v) => ", style=filled, fillcolor=black, fontcolor=white",
            _ => "",
        };
        writeln!(out, "  {v} [label=\"{}\"{style}];", g.label(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}
