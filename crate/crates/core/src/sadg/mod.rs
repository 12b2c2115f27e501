//! Software architectural dependence graph.
//!
//! One vertex per port and per role of a description. Arcs point from the
//! dependent interface to the interface it depends on, so a flow `s -> t`
//! becomes the arc `(t, s)`:
//!
//! * role -> port flow: component-connector arc `(port, role)`
//! * port -> role flow: connector-component arc `(role, port)`
//! * flow inside one element: additional arc

mod emit;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::acme::{validate, ArchDescription, InterfaceKind, InterfaceRef};
use crate::diagnostic::{has_errors, Diagnostic};
use crate::flow::{build_flow_relation, FlowEdge};

pub use emit::{emit_dot, emit_json};

pub type Vertex = InterfaceRef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcKind {
    ComponentConnector,
    ConnectorComponent,
    Additional,
}

impl ArcKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ArcKind::ComponentConnector => "component-connector",
            ArcKind::ConnectorComponent => "connector-component",
            ArcKind::Additional => "additional",
        }
    }
}

impl fmt::Display for ArcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `from` depends on `to`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DependenceArc {
    pub from: Vertex,
    pub to: Vertex,
    pub kind: ArcKind,
}

impl DependenceArc {
    /// The arc induced by a flow edge: the sink depends on the source.
    pub fn from_flow(edge: &FlowEdge) -> Self {
        let from = edge.sink.clone();
        let to = edge.source.clone();
        let kind = match (from.kind, to.kind) {
            (InterfaceKind::Port, InterfaceKind::Role) => ArcKind::ComponentConnector,
            (InterfaceKind::Role, InterfaceKind::Port) => ArcKind::ConnectorComponent,
            _ => {
                debug_assert_eq!(from.owner, to.owner);
                ArcKind::Additional
            }
        };
        DependenceArc { from, to, kind }
    }

    /// Checks the endpoint typing required by the arc kind.
    pub fn is_well_typed(&self) -> bool {
        self.from != self.to
            && match self.kind {
                ArcKind::ComponentConnector => {
                    self.from.kind == InterfaceKind::Port && self.to.kind == InterfaceKind::Role
                }
                ArcKind::ConnectorComponent => {
                    self.from.kind == InterfaceKind::Role && self.to.kind == InterfaceKind::Port
                }
                ArcKind::Additional => {
                    self.from.kind == self.to.kind && self.from.owner == self.to.owner
                }
            }
    }

    /// The same dependence with its orientation swapped.
    pub fn reversed(&self) -> Self {
        let kind = match self.kind {
            ArcKind::ComponentConnector => ArcKind::ConnectorComponent,
            ArcKind::ConnectorComponent => ArcKind::ComponentConnector,
            ArcKind::Additional => ArcKind::Additional,
        };
        DependenceArc {
            from: self.to.clone(),
            to: self.from.clone(),
            kind,
        }
    }
}

impl fmt::Display for DependenceArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.kind, self.from, self.to)
    }
}

/// Dependence graph of one description. Immutable once built.
#[derive(Debug, Clone)]
pub struct Sadg<'d> {
    description: &'d ArchDescription,
    vertices: Vec<Vertex>,
    index: HashMap<Vertex, usize>,
    arcs: BTreeSet<DependenceArc>,
    /// `successors[v]`: vertices that `v` depends on.
    successors: Vec<Vec<usize>>,
    /// `predecessors[v]`: vertices that depend on `v`.
    predecessors: Vec<Vec<usize>>,
    warnings: Vec<Diagnostic>,
}

/// Builds the dependence graph of `desc`. Fails with the validation or
/// flow diagnostics if any of them is an error; warnings are kept on the
/// graph.
pub fn build_sadg(desc: &ArchDescription) -> Result<Sadg<'_>, Vec<Diagnostic>> {
    let mut warnings = validate(desc);
    if has_errors(&warnings) {
        warnings.retain(Diagnostic::is_error);
        return Err(warnings);
    }
    let flows = build_flow_relation(desc)?;
    warnings.extend(flows.warnings);
    let arcs = flows.edges.iter().map(DependenceArc::from_flow).collect();
    Ok(Sadg::assemble(desc, desc.interface_refs().collect(), arcs, warnings))
}

impl<'d> Sadg<'d> {
    fn assemble(
        description: &'d ArchDescription,
        vertices: Vec<Vertex>,
        arcs: BTreeSet<DependenceArc>,
        warnings: Vec<Diagnostic>,
    ) -> Self {
        let index: HashMap<Vertex, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i))
            .collect();
        let mut successors = vec![Vec::new(); vertices.len()];
        let mut predecessors = vec![Vec::new(); vertices.len()];
        for arc in &arcs {
            let from = index[&arc.from];
            let to = index[&arc.to];
            successors[from].push(to);
            predecessors[to].push(from);
        }
        Sadg {
            description,
            vertices,
            index,
            arcs,
            successors,
            predecessors,
            warnings,
        }
    }

    pub fn description(&self) -> &'d ArchDescription {
        self.description
    }

    /// Vertices in declaration order: ports of each component, then roles
    /// of each connector.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> &BTreeSet<DependenceArc> {
        &self.arcs
    }

    pub fn warnings(&self) -> &[Diagnostic] {
        &self.warnings
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub(crate) fn successors(&self, i: usize) -> &[usize] {
        &self.successors[i]
    }

    pub(crate) fn predecessors(&self, i: usize) -> &[usize] {
        &self.predecessors[i]
    }

    /// The same graph with every arc reversed. Arc kinds follow their
    /// endpoints, so the result is again a well-typed graph.
    pub fn reversed(&self) -> Sadg<'d> {
        Sadg::assemble(
            self.description,
            self.vertices.clone(),
            self.arcs.iter().map(DependenceArc::reversed).collect(),
            self.warnings.clone(),
        )
    }
}
