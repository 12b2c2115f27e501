//! Architectural slicing in two steps: reachability over the dependence
//! graph from a criterion, then projection of the reached vertices back to
//! a well-formed description.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::acme::{
    ArchDescription, AttachmentsGroup, Component, Connector, Identifier, InterfaceKind,
    InterfaceRef, Property,
};
use crate::diagnostic::{Code, Diagnostic};
use crate::flow::{flow_declaration, FlowDeclaration, FLOW_PROPERTY_PREFIX, NO_FLOW};
use crate::sadg::{build_sadg, DependenceArc, Sadg, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SliceDirection {
    /// Everything the criterion depends on.
    #[default]
    Backward,
    /// Everything that depends on the criterion.
    Forward,
}

impl SliceDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            SliceDirection::Backward => "backward",
            SliceDirection::Forward => "forward",
        }
    }
}

impl fmt::Display for SliceDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SliceDirection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "backward" => Ok(SliceDirection::Backward),
            "forward" => Ok(SliceDirection::Forward),
            other => Err(format!("unknown slice direction `{other}`")),
        }
    }
}

/// An element plus a non-empty subset of its ports (or roles).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SliceCriterion {
    element: Identifier,
    kind: InterfaceKind,
    ifaces: BTreeSet<Identifier>,
}

impl SliceCriterion {
    pub fn element(&self) -> &Identifier {
        &self.element
    }

    pub fn ifaces(&self) -> &BTreeSet<Identifier> {
        &self.ifaces
    }

    pub fn interface_kind(&self) -> InterfaceKind {
        self.kind
    }

    /// The graph vertices named by the criterion.
    pub fn seed(&self) -> BTreeSet<Vertex> {
        self.ifaces
            .iter()
            .map(|i| InterfaceRef {
                kind: self.kind,
                owner: self.element.clone(),
                iface: i.clone(),
            })
            .collect()
    }
}

/// Checks that `element` names a component or connector of `desc` and that
/// every entry of `ifaces` is one of its ports or roles.
pub fn resolve_criterion<I, S>(
    desc: &ArchDescription,
    element: &str,
    ifaces: I,
) -> Result<SliceCriterion, Diagnostic>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let bad = |msg: String| Diagnostic::error(Code::BadCriterion, msg);
    let Some(found) = desc.element(element) else {
        return Err(bad(format!("no component or connector named `{element}`")));
    };
    let mut set = BTreeSet::new();
    for iface in ifaces {
        let iface = iface.as_ref();
        match found.interface(iface) {
            Some(i) => {
                set.insert(i.name.clone());
            }
            None => {
                return Err(bad(format!(
                    "`{element}` has no {} named `{iface}`",
                    found.interface_kind()
                )))
            }
        }
    }
    if set.is_empty() {
        return Err(bad(format!(
            "the criterion for `{element}` names no {}s",
            found.interface_kind()
        )));
    }
    Ok(SliceCriterion {
        element: found.name().clone(),
        kind: found.interface_kind(),
        ifaces: set,
    })
}

/// Result of the graph step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSlice {
    pub seed: BTreeSet<Vertex>,
    pub vertices: BTreeSet<Vertex>,
    pub arcs: BTreeSet<DependenceArc>,
    pub direction: SliceDirection,
}

/// Marks every vertex reachable from `seeds` (seeds included). Backward
/// follows arcs as stored, forward follows them reversed.
pub(crate) fn reach(g: &Sadg<'_>, seeds: &[usize], direction: SliceDirection) -> Vec<bool> {
    let mut seen = vec![false; g.vertices().len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let next = match direction {
            SliceDirection::Backward => g.successors(v),
            SliceDirection::Forward => g.predecessors(v),
        };
        for &w in next {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Computes the slice of `g` for a seed set of vertices.
///
/// # Panics
///
/// If a seed vertex is not part of `g`.
pub fn slice_vertices(
    g: &Sadg<'_>,
    seed: BTreeSet<Vertex>,
    direction: SliceDirection,
) -> GraphSlice {
    let seeds: Vec<usize> = seed
        .iter()
        .map(|v| {
            g.index_of(v)
                .unwrap_or_else(|| panic!("seed vertex `{v}` is not in the graph"))
        })
        .collect();
    let seen = reach(g, &seeds, direction);
    let vertices: BTreeSet<Vertex> = seen
        .iter()
        .enumerate()
        .filter(|(_, s)| **s)
        .map(|(i, _)| g.vertex(i).clone())
        .collect();
    let arcs = g
        .arcs()
        .iter()
        .filter(|a| vertices.contains(&a.from) && vertices.contains(&a.to))
        .cloned()
        .collect();
    GraphSlice {
        seed,
        vertices,
        arcs,
        direction,
    }
}

/// Step one: the graph slice for a criterion.
///
/// # Panics
///
/// If the criterion was not resolved against the graph's description.
pub fn slice_graph(g: &Sadg<'_>, criterion: &SliceCriterion, direction: SliceDirection) -> GraphSlice {
    slice_vertices(g, criterion.seed(), direction)
}

/// Step two: the sub-description induced by a graph slice.
///
/// An element survives iff one of its interfaces is in the slice and keeps
/// exactly those interfaces and all its properties, except internal flow
/// declarations that name a dropped interface. If that removes every flow
/// declaration of an element, a `flow = "none"` declaration takes their
/// place so that the default all-inputs-to-all-outputs rule does not
/// introduce flows the original did not have. Attachments survive iff both
/// ends do; empty attachments groups are dropped.
pub fn project_slice(desc: &ArchDescription, s: &GraphSlice) -> ArchDescription {
    let kept: HashSet<&Vertex> = s.vertices.iter().collect();
    let keeps = |r: InterfaceRef| kept.contains(&r);

    let components = desc
        .components
        .iter()
        .filter_map(|c| {
            let ports: Vec<_> = c
                .ports
                .iter()
                .filter(|p| keeps(InterfaceRef::port(c.name.clone(), p.name.clone())))
                .cloned()
                .collect();
            if ports.is_empty() {
                return None;
            }
            let names: HashSet<&str> = ports.iter().map(|p| p.name.as_str()).collect();
            Some(Component {
                name: c.name.clone(),
                properties: project_properties(&c.properties, &names),
                ports,
            })
        })
        .collect();

    let connectors = desc
        .connectors
        .iter()
        .filter_map(|c| {
            let roles: Vec<_> = c
                .roles
                .iter()
                .filter(|r| keeps(InterfaceRef::role(c.name.clone(), r.name.clone())))
                .cloned()
                .collect();
            if roles.is_empty() {
                return None;
            }
            let names: HashSet<&str> = roles.iter().map(|r| r.name.as_str()).collect();
            Some(Connector {
                name: c.name.clone(),
                properties: project_properties(&c.properties, &names),
                roles,
            })
        })
        .collect();

    let attachments = desc
        .attachments
        .iter()
        .filter_map(|g| {
            let attachments: Vec<_> = g
                .attachments
                .iter()
                .filter(|a| keeps(a.port_ref()) && keeps(a.role_ref()))
                .cloned()
                .collect();
            (!attachments.is_empty()).then(|| AttachmentsGroup {
                name: g.name.clone(),
                attachments,
            })
        })
        .collect();

    ArchDescription {
        name: desc.name.clone(),
        components,
        connectors,
        attachments,
        properties: desc.properties.clone(),
    }
}

fn project_properties(properties: &[Property], kept: &HashSet<&str>) -> Vec<Property> {
    let mut declared = false;
    let mut out: Vec<Property> = Vec::with_capacity(properties.len());
    for p in properties {
        match flow_declaration(p) {
            Some(Ok(FlowDeclaration::Edge { from, to })) => {
                declared = true;
                if kept.contains(from.as_str()) && kept.contains(to.as_str()) {
                    out.push(p.clone());
                }
            }
            Some(Ok(FlowDeclaration::Nothing)) => {
                declared = true;
                out.push(p.clone());
            }
            _ => out.push(p.clone()),
        }
    }
    let still_declared = out.iter().any(|p| matches!(flow_declaration(p), Some(Ok(_))));
    if declared && !still_declared {
        let taken: HashSet<&str> = out.iter().map(|p| p.name.as_str()).collect();
        let name = std::iter::once(FLOW_PROPERTY_PREFIX.to_owned())
            .chain((1..).map(|n| format!("{FLOW_PROPERTY_PREFIX}_none{n}")))
            .find(|n| !taken.contains(n.as_str()))
            .expect("unbounded name supply");
        out.push(Property::string(Identifier::new_unchecked(name), NO_FLOW));
    }
    out
}

/// Both steps of a slice.
#[derive(Debug, Clone, PartialEq)]
pub struct Slice {
    pub criterion: SliceCriterion,
    pub graph: GraphSlice,
    pub description: ArchDescription,
}

/// Resolves the criterion, builds the dependence graph, slices it and
/// projects the result.
pub fn slice<I, S>(
    desc: &ArchDescription,
    element: &str,
    ifaces: I,
    direction: SliceDirection,
) -> Result<Slice, Vec<Diagnostic>>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let criterion = resolve_criterion(desc, element, ifaces).map_err(|d| vec![d])?;
    let g = build_sadg(desc)?;
    let graph = slice_graph(&g, &criterion, direction);
    let description = project_slice(desc, &graph);
    Ok(Slice {
        criterion,
        graph,
        description,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acme::{parse, validate};
    use crate::diagnostic::has_errors;

    const CHAIN: &str = r#"System s = {
        Component a = { Port o = { Properties { direction = "out"; } } }
        Connector k = { Role r; Role t; Properties { flow = "r -> t"; } }
        Component b = {
            Port i = { Properties { direction = "in"; } }
            Port spare = { Properties { direction = "in"; } }
        }
        Attachments g = { a.o to k.r; b.i to k.t; }
    }"#;

    fn labels(vs: &BTreeSet<Vertex>) -> Vec<String> {
        vs.iter().map(Vertex::label).collect()
    }

    #[test]
    fn criterion_resolution() {
        let d = parse(CHAIN).unwrap();
        let c = resolve_criterion(&d, "b", ["i"]).unwrap();
        assert_eq!(labels(&c.seed()), ["b.i"]);
        let c = resolve_criterion(&d, "k", ["t", "r", "t"]).unwrap();
        assert_eq!(c.interface_kind(), InterfaceKind::Role);
        assert_eq!(c.ifaces().len(), 2);
        for (el, ifs) in [("b", vec!["nope"]), ("zz", vec!["i"]), ("b", vec![])] {
            let e = resolve_criterion(&d, el, ifs).unwrap_err();
            assert_eq!(e.code, Code::BadCriterion);
        }
        let e = resolve_criterion(&d, "b", ["i", "x", "y"]).unwrap_err();
        assert!(e.message.contains("`x`"), "{}", e.message);
    }

    #[test]
    fn chain_backward_and_forward() {
        let d = parse(CHAIN).unwrap();
        let g = build_sadg(&d).unwrap();
        let back = slice_graph(&g, &resolve_criterion(&d, "b", ["i"]).unwrap(), SliceDirection::Backward);
        assert_eq!(labels(&back.vertices), ["a.o", "b.i", "k.r", "k.t"]);
        assert_eq!(back.arcs.len(), 3);
        let fwd = slice_graph(&g, &resolve_criterion(&d, "a", ["o"]).unwrap(), SliceDirection::Forward);
        assert_eq!(labels(&fwd.vertices), ["a.o", "b.i", "k.r", "k.t"]);
    }

    #[test]
    fn seed_without_dependences_is_its_own_slice() {
        let d = parse(CHAIN).unwrap();
        let g = build_sadg(&d).unwrap();
        let s = slice_graph(&g, &resolve_criterion(&d, "a", ["o"]).unwrap(), SliceDirection::Backward);
        assert_eq!(labels(&s.vertices), ["a.o"]);
        assert!(s.arcs.is_empty());
        let p = project_slice(&d, &s);
        assert_eq!(p.components.len(), 1);
        assert!(p.connectors.is_empty() && p.attachments.is_empty());
    }

    #[test]
    fn projection_identity_and_empty() {
        let d = parse(CHAIN).unwrap();
        let g = build_sadg(&d).unwrap();
        let all = slice_vertices(&g, g.vertices().iter().cloned().collect(), SliceDirection::Backward);
        assert_eq!(project_slice(&d, &all), d);
        let none = slice_vertices(&g, BTreeSet::new(), SliceDirection::Backward);
        assert_eq!(project_slice(&d, &none), ArchDescription::empty(d.name.clone()));
    }

    #[test]
    fn projection_drops_flows_naming_removed_roles() {
        let d = parse(CHAIN).unwrap();
        let s = slice(&d, "k", ["r"], SliceDirection::Backward).unwrap();
        let k = &s.description.connectors[0];
        assert_eq!(k.roles.len(), 1);
        assert_eq!(k.properties, vec![Property::string(Identifier::new("flow").unwrap(), "none")]);
        assert!(!has_errors(&validate(&s.description)));
        let g = build_sadg(&s.description).unwrap();
        assert_eq!(g.arcs(), &s.graph.arcs);
    }

    #[test]
    fn fresh_name_for_replacement_declaration() {
        let kept: HashSet<&str> = ["a"].into_iter().collect();
        let id = |s: &str| Identifier::new(s).unwrap();
        let props = vec![
            Property::string(id("flow2"), "a -> b"),
            Property::new(id("flow"), None, crate::acme::Literal::Int(1)),
        ];
        let out = project_properties(&props, &kept);
        assert_eq!(out[1].name, "flow_none1");
        assert_eq!(out.len(), 2);
    }

    #[test]
    fn direction_parsing() {
        assert_eq!("forward".parse(), Ok(SliceDirection::Forward));
        assert_eq!("backward".parse(), Ok(SliceDirection::Backward));
        assert!("sideways".parse::<SliceDirection>().is_err());
    }
}
