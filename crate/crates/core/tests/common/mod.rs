//! Shared test support: a random description generator, a brute-force
//! reachability oracle, and golden-file helpers.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use archslice::acme::{
    ArchDescription, Attachment, AttachmentsGroup, Component, Connector, Identifier,
    InterfaceRef, Literal, Port, Property, Role,
};
use archslice::sadg::{DependenceArc, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;

pub const MAX_ELEMENTS: usize = 8;
pub const MAX_VERTICES: usize = 20;

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_paths() -> Vec<PathBuf> {
    let mut paths: Vec<_> = std::fs::read_dir(crate_dir().join("fixtures"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "acme"))
        .collect();
    paths.push(crate_dir().join("tests/golden/las_slice.acme"));
    paths.sort();
    paths
}

pub fn read_golden(name: &str) -> String {
    std::fs::read_to_string(crate_dir().join("tests/golden").join(name)).unwrap()
}

/// Non-comment, non-blank lines of a golden text file.
pub fn golden_lines(name: &str) -> Vec<String> {
    read_golden(name)
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect()
}

fn id(s: impl Into<String>) -> Identifier {
    Identifier::new(s).unwrap()
}

fn direction_property(rng: &mut impl Rng) -> Vec<Property> {
    match rng.gen_range(0..4) {
        0 => vec![],
        1 => vec![Property::string(id("direction"), "in")],
        2 => vec![Property::string(id("direction"), "out")],
        _ => vec![Property::string(id("direction"), "inout")],
    }
}

fn noise_property(rng: &mut impl Rng, name: &str) -> Property {
    let value = match rng.gen_range(0..4) {
        0 => Literal::Int(rng.gen_range(-1000..1000)),
        1 => Literal::Float(rng.gen_range(-100.0..100.0)),
        2 => Literal::Boolean(rng.gen()),
        _ => Literal::String(format!("v{} \"q\"", rng.gen_range(0..100))),
    };
    let ptype = rng.gen_bool(0.5).then(|| value.kind());
    Property::new(id(name), ptype, value)
}

/// Element-level properties: occasional noise, and for elements with at
/// least two interfaces, sometimes explicit flow declarations.
fn element_properties(rng: &mut impl Rng, ifaces: &[Identifier]) -> Vec<Property> {
    let mut props = Vec::new();
    if rng.gen_bool(0.3) {
        props.push(noise_property(rng, "weight"));
    }
    if ifaces.len() >= 2 && rng.gen_bool(0.3) {
        let n = rng.gen_range(1..=2);
        for k in 0..n {
            let pair: Vec<_> = ifaces.choose_multiple(rng, 2).collect();
            let name = if k == 0 { "flow".to_owned() } else { format!("flow{}", k + 1) };
            props.push(Property::string(id(name), format!("{} -> {}", pair[0], pair[1])));
        }
    }
    props
}

/// A random well-formed description with at most [`MAX_ELEMENTS`]
/// elements and [`MAX_VERTICES`] ports and roles. Every attachment
/// resolves and no interface is attached twice; some interfaces stay
/// unattached and some elements have no interfaces.
pub fn random_description(rng: &mut impl Rng) -> ArchDescription {
    let n_elements = rng.gen_range(1..=MAX_ELEMENTS);
    let n_components = rng.gen_range(0..=n_elements);
    let mut budget = MAX_VERTICES;
    let mut desc = ArchDescription::empty(id("sys"));
    if rng.gen_bool(0.3) {
        desc.properties.push(noise_property(rng, "version"));
    }

    for e in 0..n_elements {
        let n = rng.gen_range(0..=4usize).min(budget);
        budget -= n;
        let names: Vec<Identifier> = (0..n).map(|i| id(format!("i{i}"))).collect();
        let props = element_properties(rng, &names);
        if e < n_components {
            desc.components.push(Component {
                name: id(format!("c{e}")),
                ports: names
                    .iter()
                    .map(|name| Port {
                        name: name.clone(),
                        properties: direction_property(rng),
                    })
                    .collect(),
                properties: props,
            });
        } else {
            desc.connectors.push(Connector {
                name: id(format!("k{e}")),
                roles: names
                    .iter()
                    .map(|name| Role {
                        name: name.clone(),
                        properties: direction_property(rng),
                    })
                    .collect(),
                properties: props,
            });
        }
    }

    let mut ports: Vec<(Identifier, Identifier)> = desc
        .components
        .iter()
        .flat_map(|c| c.ports.iter().map(|p| (c.name.clone(), p.name.clone())))
        .collect();
    let mut roles: Vec<(Identifier, Identifier)> = desc
        .connectors
        .iter()
        .flat_map(|c| c.roles.iter().map(|r| (c.name.clone(), r.name.clone())))
        .collect();
    ports.shuffle(rng);
    roles.shuffle(rng);
    let n_groups = rng.gen_range(1..=3);
    let mut groups: Vec<AttachmentsGroup> = (0..n_groups)
        .map(|g| AttachmentsGroup {
            name: id(format!("g{g}")),
            attachments: Vec::new(),
        })
        .collect();
    for ((component, port), (connector, role)) in ports.into_iter().zip(roles) {
        if rng.gen_bool(0.85) {
            let g = rng.gen_range(0..n_groups);
            groups[g].attachments.push(Attachment {
                component,
                port,
                connector,
                role,
            });
        }
    }
    desc.attachments = groups;
    desc
}

/// Brute-force reachability: Warshall transitive closure over an
/// adjacency matrix, then the seed rows. Backward follows arcs as stored
/// (dependent to depended-on); forward follows them reversed.
pub fn closure_oracle(
    vertices: &[Vertex],
    arcs: &BTreeSet<DependenceArc>,
    seed: &BTreeSet<Vertex>,
    forward: bool,
) -> BTreeSet<Vertex> {
    let n = vertices.len();
    let pos = |v: &Vertex| vertices.iter().position(|w| w == v).unwrap();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for a in arcs {
        let (from, to) = if forward {
            (pos(&a.to), pos(&a.from))
        } else {
            (pos(&a.from), pos(&a.to))
        };
        reach[from][to] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for s in seed {
        let i = pos(s);
        for j in 0..n {
            if reach[i][j] {
                out.insert(vertices[j].clone());
            }
        }
    }
    out
}

pub fn vertex(kind_role: bool, owner: &str, iface: &str) -> InterfaceRef {
    if kind_role {
        InterfaceRef::role(id(owner), id(iface))
    } else {
        InterfaceRef::port(id(owner), id(iface))
    }
}

/// Random non-empty subset of one element's interfaces, as a criterion
/// input. `None` if the description has no interfaces at all.
pub fn random_criterion(rng: &mut impl Rng, desc: &ArchDescription) -> Option<(String, Vec<String>)> {
    let candidates: Vec<_> = desc
        .elements()
        .filter(|e| !e.interfaces().is_empty())
        .collect();
    let e = candidates.choose(rng)?;
    let ifaces = e.interfaces();
    let k = rng.gen_range(1..=ifaces.len());
    let chosen = ifaces
        .choose_multiple(rng, k)
        .map(|i| i.name.to_string())
        .collect();
    Some((e.name().to_string(), chosen))
}
