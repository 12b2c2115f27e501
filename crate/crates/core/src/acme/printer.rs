use std::fmt::Write;

use super::{ArchDescription, Literal, Property};

const INDENT: &str = "    ";

/// Renders a description as canonical ACME text.
///
/// Within each list the declaration order is kept; at system level the
/// output lists properties, then components, connectors and attachments
/// groups. Parsing the result yields a tree equal to `desc`.
pub fn emit_text(desc: &ArchDescription) -> String {
    let mut blocks = Vec::new();
    if !desc.properties.is_empty() {
        blocks.push(property_block(&desc.properties, 1));
    }
    for c in &desc.components {
        let mut body = String::new();
        for p in &c.ports {
            interface(&mut body, "Port", p.name.as_str(), &p.properties);
        }
        if !c.properties.is_empty() {
            body.push_str(&property_block(&c.properties, 2));
        }
        blocks.push(element("Component", c.name.as_str(), &body));
    }
    for c in &desc.connectors {
        let mut body = String::new();
        for r in &c.roles {
            interface(&mut body, "Role", r.name.as_str(), &r.properties);
        }
        if !c.properties.is_empty() {
            body.push_str(&property_block(&c.properties, 2));
        }
        blocks.push(element("Connector", c.name.as_str(), &body));
    }
    for g in &desc.attachments {
        let mut body = String::new();
        for a in &g.attachments {
            let _ = writeln!(body, "{INDENT}{INDENT}{a};");
        }
        blocks.push(element("Attachments", g.name.as_str(), &body));
    }

    if blocks.is_empty() {
        return format!("System {} = {{ }}\n", desc.name);
    }
    format!("System {} = {{\n{}}}\n", desc.name, blocks.join("\n"))
}

fn element(keyword: &str, name: &str, body: &str) -> String {
    if body.is_empty() {
        format!("{INDENT}{keyword} {name} = {{ }}\n")
    } else {
        format!("{INDENT}{keyword} {name} = {{\n{body}{INDENT}}}\n")
    }
}

fn interface(out: &mut String, keyword: &str, name: &str, properties: &[Property]) {
    if properties.is_empty() {
        let _ = writeln!(out, "{INDENT}{INDENT}{keyword} {name};");
    } else {
        let _ = writeln!(out, "{INDENT}{INDENT}{keyword} {name} = {{");
        out.push_str(&property_block(properties, 3));
        let _ = writeln!(out, "{INDENT}{INDENT}}}");
    }
}

fn property_block(properties: &[Property], depth: usize) -> String {
    let pad = INDENT.repeat(depth);
    let mut out = format!("{pad}Properties {{\n");
    for p in properties {
        let _ = writeln!(out, "{pad}{INDENT}{};", property(p));
    }
    let _ = writeln!(out, "{pad}}}");
    out
}

fn property(p: &Property) -> String {
    match p.ptype {
        Some(t) => format!("{} : {} = {}", p.name, t.keyword(), literal(&p.value)),
        None => format!("{} = {}", p.name, literal(&p.value)),
    }
}

fn literal(value: &Literal) -> String {
    match value {
        Literal::String(s) => {
            let mut out = String::with_capacity(s.len() + 2);
            out.push('"');
            for c in s.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\t' => out.push_str("\\t"),
                    '\r' => out.push_str("\\r"),
                    c => out.push(c),
                }
            }
            out.push('"');
            out
        }
        Literal::Int(i) => i.to_string(),
        // Debug gives the shortest text that reads back to the same f64.
        Literal::Float(x) => format!("{x:?}"),
        Literal::Boolean(b) => b.to_string(),
    }
}
