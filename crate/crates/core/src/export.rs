//! Graphviz and JSON renderings of configurations and flop graphs.

use std::fmt::Write as _;

use crate::configuration::{Configuration, EdgeKind, VertexLabel};
use crate::explorer::FlopGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "dot" => Ok(Format::Dot),
            "json" => Ok(Format::Json),
            _ => Err(crate::Error::Parse(format!("unknown export format {s:?} (expected dot or json)"))),
        }
    }
}

pub fn dot_shape(label: VertexLabel) -> &'static str {
    match label {
        VertexLabel::Square => "box",
        VertexLabel::Ellipse => "ellipse",
        VertexLabel::PlusBox => "diamond",
        VertexLabel::Circle => "circle",
        VertexLabel::Ruled4 => "trapezium",
    }
}

fn dot_style(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Solid => "solid",
        EdgeKind::Dotted => "dashed",
    }
}

/// Undirected DOT graph with every vertex pinned at its grid position
/// (use `neato -n` or `fdp` to honor `pos`). An exceptional flag shows up as
/// an `E` at the flagged end of the edge.
pub fn configuration_to_dot(c: &Configuration) -> String {
    let mut out = String::new();
    writeln!(out, "graph configuration {{").unwrap();
    writeln!(out, "  // k = {}", c.k()).unwrap();
    writeln!(out, "  node [fixedsize=true, width=0.6, height=0.6];").unwrap();
    for (v, label) in c.vertices() {
        let (x, y) = v.position();
        writeln!(out, "  \"{v}\" [shape={}, label=\"{v}\", pos=\"{x},{y}!\"];", dot_shape(label)).unwrap();
    }
    for e in c.edges() {
        write!(out, "  \"{}\" -- \"{}\" [style={}", e.a, e.b, dot_style(e.kind)).unwrap();
        if e.exceptional_a {
            out.push_str(", taillabel=\"E\"");
        }
        if e.exceptional_b {
            out.push_str(", headlabel=\"E\"");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

/// One vertex per explored node (labeled by BFS depth and short key), one
/// edge per pair of opposite arcs. Simultaneous moves are drawn bold; dead
/// arcs are omitted.
pub fn graph_to_dot(g: &FlopGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph flops {{").unwrap();
    for key in g.nodes.keys() {
        let depth = g.depth.get(key).copied().unwrap_or(0);
        let shape = if key == &g.root { "doublecircle" } else { "circle" };
        writeln!(out, "  \"{}\" [shape={shape}, label=\"{depth}:{}\"];", key.short(), &key.short()[..6]).unwrap();
    }
    for arc in &g.arcs {
        let reverse_first =
            arc.to < arc.from && g.arcs.iter().any(|r| r.from == arc.to && r.to == arc.from && r.mv == arc.mv);
        if reverse_first {
            continue;
        }
        write!(out, "  \"{}\" -- \"{}\" [label=\"{}\"", arc.from.short(), arc.to.short(), arc.mv).unwrap();
        if arc.is_simultaneous() {
            out.push_str(", style=bold");
        }
        out.push_str("];\n");
    }
    out.push_str("}\n");
    out
}

pub fn export_configuration(c: &Configuration, format: Format) -> String {
    match format {
        Format::Dot => configuration_to_dot(c),
        Format::Json => c.to_json_string(),
    }
}

pub fn export_graph(g: &FlopGraph, format: Format) -> String {
    match format {
        Format::Dot => graph_to_dot(g),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&g.to_json()).expect("graph serializes");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::initial_configuration;

    #[test]
    fn k1_dot() {
        let dot = configuration_to_dot(&initial_configuration(1).unwrap());
        assert_eq!(dot.matches("shape=circle").count(), 1);
        assert_eq!(dot.matches("shape=trapezium").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("\"P:1:1\" -- \"Q:1\" [style=solid]"));
        assert!(dot.contains("pos=\"1,1!\""));
    }

    #[test]
    fn k2_dot_counts() {
        let dot = configuration_to_dot(&initial_configuration(2).unwrap());
        assert_eq!(dot.matches("[shape=").count(), 5);
        assert_eq!(dot.matches(" -- ").count(), 6);
        assert_eq!(dot.matches("style=solid").count(), 4);
        assert_eq!(dot.matches("style=dashed").count(), 2);
    }

    #[test]
    fn format_parse() {
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
        assert!("svg".parse::<Format>().is_err());
    }
}
