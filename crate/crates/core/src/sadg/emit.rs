use std::collections::BTreeSet;
use std::fmt::Write;

use serde::Serialize;

use super::{ArcKind, Sadg, Vertex};
use crate::acme::InterfaceKind;

/// Graphviz rendering. Ports are boxes, roles ellipses; component-connector
/// arcs are bold, connector-component arcs bold and dashed, additional arcs
/// dashed. Vertices in `highlight` are filled.
pub fn emit_dot(g: &Sadg<'_>, highlight: Option<&BTreeSet<Vertex>>) -> String {
    let mut out = String::from("digraph sadg {\n");
    for v in g.vertices() {
        let shape = match v.kind {
            InterfaceKind::Port => "box",
            InterfaceKind::Role => "ellipse",
        };
        let _ = write!(out, "    \"{}\" [shape={shape}", v.label());
        if highlight.is_some_and(|h| h.contains(v)) {
            out.push_str(", style=filled, fillcolor=lightgrey");
        }
        out.push_str("];\n");
    }
    for arc in g.arcs() {
        let style = match arc.kind {
            ArcKind::ComponentConnector => "bold",
            ArcKind::ConnectorComponent => "\"bold,dashed\"",
            ArcKind::Additional => "dashed",
        };
        let _ = writeln!(
            out,
            "    \"{}\" -> \"{}\" [style={style}];",
            arc.from.label(),
            arc.to.label()
        );
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct GraphJson<'a> {
    vertices: Vec<&'a Vertex>,
    arcs: Vec<ArcJson>,
}

#[derive(Serialize)]
struct ArcJson {
    from: String,
    to: String,
    kind: ArcKind,
}

/// Compact JSON with sorted vertices and arcs:
/// `{"vertices":[{"kind","owner","iface"}],"arcs":[{"from","to","kind"}]}`.
/// Arc endpoints are written as `owner.iface` labels.
pub fn emit_json(g: &Sadg<'_>) -> String {
    let mut vertices: Vec<&Vertex> = g.vertices().iter().collect();
    vertices.sort();
    let arcs = g
        .arcs()
        .iter()
        .map(|a| ArcJson {
            from: a.from.label(),
            to: a.to.label(),
            kind: a.kind,
        })
        .collect();
    serde_json::to_string(&GraphJson { vertices, arcs }).expect("graph serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acme::parse;
    use crate::sadg::build_sadg;

    #[test]
    fn empty_graph() {
        let d = parse("System s = { }").unwrap();
        let g = build_sadg(&d).unwrap();
        assert_eq!(emit_dot(&g, None), "digraph sadg {\n}\n");
        assert_eq!(emit_json(&g), r#"{"vertices":[],"arcs":[]}"#);
    }

    #[test]
    fn single_arc() {
        let d = parse(
            r#"System s = {
                Component a = { Port o = { Properties { direction = "out"; } } }
                Connector k = { Role r = { Properties { direction = "in"; } } }
                Attachments g = { a.o to k.r; }
            }"#,
        )
        .unwrap();
        let g = build_sadg(&d).unwrap();
        let dot = emit_dot(&g, None);
        assert_eq!(dot.matches("shape=").count(), 2);
        assert_eq!(dot.matches("->").count(), 1);
        assert!(dot.contains("\"a.o\" [shape=box];"));
        assert!(dot.contains("\"k.r\" [shape=ellipse];"));
        assert!(dot.contains("\"k.r\" -> \"a.o\" [style=\"bold,dashed\"];"));
        assert_eq!(
            emit_json(&g),
            concat!(
                r#"{"vertices":[{"kind":"port","owner":"a","iface":"o"},{"kind":"role","owner":"k","iface":"r"}],"#,
                r#""arcs":[{"from":"k.r","to":"a.o","kind":"connector-component"}]}"#
            )
        );
    }

    #[test]
    fn highlight_fills_selected_vertices() {
        let d = parse("System s = { Component a = { Port p; Port q; } }").unwrap();
        let g = build_sadg(&d).unwrap();
        let pick: BTreeSet<Vertex> = g.vertices()[..1].iter().cloned().collect();
        let dot = emit_dot(&g, Some(&pick));
        assert_eq!(dot.matches("style=filled").count(), 1);
        assert!(dot.contains("\"a.p\" [shape=box, style=filled"));
    }
}
