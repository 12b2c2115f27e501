//! Information flow between ports and roles.
//!
//! Flow direction comes from properties:
//!
//! * `direction : string = "in" | "out" | "inout"` on a port or role. Roles
//!   are oriented relative to their connector. A missing `direction` means
//!   `inout`.
//! * `flow : string = "a -> b"` on a component or connector declares an
//!   internal flow between two of its own interfaces. Any property whose
//!   name starts with `flow` and whose string value contains `->` is such a
//!   declaration. The value `"none"` declares that the element has no
//!   internal flows at all. Without declarations every input interface
//!   feeds every other output interface.
//!
//! Port directions alone decide attachment flows; role directions only
//! produce `flow-mismatch` warnings when they disagree.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::acme::{
    find_property, ArchDescription, Attachment, Element, Identifier, InterfaceRef, Literal,
    Property,
};
use crate::diagnostic::{Code, Diagnostic};

pub const DIRECTION_PROPERTY: &str = "direction";
pub const FLOW_PROPERTY_PREFIX: &str = "flow";
pub const NO_FLOW: &str = "none";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
    InOut,
}

impl Direction {
    pub fn parse(text: &str) -> Option<Self> {
        match text {
            "in" => Some(Direction::In),
            "out" => Some(Direction::Out),
            "inout" => Some(Direction::InOut),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::In => "in",
            Direction::Out => "out",
            Direction::InOut => "inout",
        }
    }

    pub fn receives(self) -> bool {
        matches!(self, Direction::In | Direction::InOut)
    }

    pub fn sends(self) -> bool {
        matches!(self, Direction::Out | Direction::InOut)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Information moves from `source` to `sink`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlowEdge {
    pub source: InterfaceRef,
    pub sink: InterfaceRef,
}

impl fmt::Display for FlowEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.sink)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FlowRelation {
    pub edges: BTreeSet<FlowEdge>,
    pub warnings: Vec<Diagnostic>,
}

/// A parsed `flow*` property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowDeclaration {
    Edge { from: Identifier, to: Identifier },
    Nothing,
}

/// Interprets a property as a flow declaration. Returns `None` for
/// properties that are not flow declarations.
pub fn flow_declaration(property: &Property) -> Option<Result<FlowDeclaration, Diagnostic>> {
    if !property.name.as_str().starts_with(FLOW_PROPERTY_PREFIX) {
        return None;
    }
    let Literal::String(value) = &property.value else {
        return None;
    };
    if value.trim() == NO_FLOW {
        return Some(Ok(FlowDeclaration::Nothing));
    }
    let (from, to) = value.split_once("->")?;
    let malformed = || {
        Diagnostic::error(
            Code::BadFlow,
            format!(
                "flow property `{}` must have the form \"a -> b\", found {value:?}",
                property.name
            ),
        )
    };
    let (Ok(from), Ok(to)) = (Identifier::new(from.trim()), Identifier::new(to.trim())) else {
        return Some(Err(malformed()));
    };
    Some(Ok(FlowDeclaration::Edge { from, to }))
}

/// The direction of one interface of `element`.
pub fn resolve_direction(element: Element<'_>, iface: &str) -> Result<Direction, Diagnostic> {
    let Some(interface) = element.interface(iface) else {
        return Err(Diagnostic::error(
            Code::DanglingRef,
            format!("`{}` has no {} `{iface}`", element.name(), element.interface_kind()),
        ));
    };
    let Some(prop) = find_property(interface.properties, DIRECTION_PROPERTY) else {
        return Ok(Direction::InOut);
    };
    prop.value
        .as_str()
        .and_then(Direction::parse)
        .ok_or_else(|| {
            Diagnostic::error(
                Code::BadDirection,
                format!(
                    "{} `{}.{iface}` has direction {:?}; expected \"in\", \"out\" or \"inout\"",
                    element.interface_kind(),
                    element.name(),
                    prop.value
                ),
            )
        })
}

type Directions = HashMap<InterfaceRef, Direction>;

fn element_directions(element: Element<'_>, into: &mut Directions, errors: &mut Vec<Diagnostic>) {
    for iface in element.interfaces() {
        match resolve_direction(element, iface.name.as_str()) {
            Ok(d) => {
                into.insert(element.interface_ref(iface.name), d);
            }
            Err(e) => errors.push(e),
        }
    }
}

/// Flows induced by one attachment.
pub fn attachment_flows(
    desc: &ArchDescription,
    att: &Attachment,
) -> Result<FlowRelation, Vec<Diagnostic>> {
    let mut dirs = Directions::new();
    let mut errors = Vec::new();
    for (owner, iface) in [(&att.component, &att.port), (&att.connector, &att.role)] {
        match desc.element(owner.as_str()) {
            Some(e) => match resolve_direction(e, iface.as_str()) {
                Ok(d) => {
                    dirs.insert(e.interface_ref(iface), d);
                }
                Err(err) => errors.push(err),
            },
            None => errors.push(Diagnostic::error(
                Code::DanglingRef,
                format!("attachment `{att}` refers to undeclared element `{owner}`"),
            )),
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let mut rel = FlowRelation::default();
    attachment_flows_with(att, &dirs, &mut rel);
    Ok(rel)
}

fn attachment_flows_with(att: &Attachment, dirs: &Directions, rel: &mut FlowRelation) {
    let port = att.port_ref();
    let role = att.role_ref();
    let port_dir = dirs[&port];
    let role_dir = dirs[&role];
    if port_dir.sends() {
        rel.edges.insert(FlowEdge {
            source: port.clone(),
            sink: role.clone(),
        });
    }
    if port_dir.receives() {
        rel.edges.insert(FlowEdge {
            source: role.clone(),
            sink: port.clone(),
        });
    }
    let mismatch = matches!(
        (port_dir, role_dir),
        (Direction::Out, Direction::Out) | (Direction::In, Direction::In)
    );
    if mismatch {
        rel.warnings.push(Diagnostic::warning(
            Code::FlowMismatch,
            format!(
                "attachment `{att}` joins a port with direction {port_dir} to a role with direction {role_dir}"
            ),
        ));
    }
}

/// Flows between the interfaces of one element.
pub fn internal_flows(element: Element<'_>) -> Result<BTreeSet<FlowEdge>, Vec<Diagnostic>> {
    let mut dirs = Directions::new();
    let mut errors = Vec::new();
    element_directions(element, &mut dirs, &mut errors);
    if !errors.is_empty() {
        return Err(errors);
    }
    internal_flows_with(element, &dirs)
}

fn internal_flows_with(
    element: Element<'_>,
    dirs: &Directions,
) -> Result<BTreeSet<FlowEdge>, Vec<Diagnostic>> {
    let mut edges = BTreeSet::new();
    let mut errors = Vec::new();
    let mut declared = false;
    for prop in element.properties() {
        let Some(decl) = flow_declaration(prop) else {
            continue;
        };
        declared = true;
        match decl {
            Ok(FlowDeclaration::Nothing) => {}
            Ok(FlowDeclaration::Edge { from, to }) => {
                let unknown: Vec<_> = [&from, &to]
                    .into_iter()
                    .filter(|i| element.interface(i.as_str()).is_none())
                    .collect();
                if let Some(first) = unknown.first() {
                    errors.push(Diagnostic::error(
                        Code::BadFlow,
                        format!(
                            "flow property `{}` of `{}` names unknown {} `{first}`",
                            prop.name,
                            element.name(),
                            element.interface_kind()
                        ),
                    ));
                } else if from == to {
                    errors.push(Diagnostic::error(
                        Code::BadFlow,
                        format!(
                            "flow property `{}` of `{}` joins `{from}` to itself",
                            prop.name,
                            element.name()
                        ),
                    ));
                } else {
                    edges.insert(FlowEdge {
                        source: element.interface_ref(&from),
                        sink: element.interface_ref(&to),
                    });
                }
            }
            Err(e) => errors.push(e),
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    if declared {
        return Ok(edges);
    }

    let refs = element.interface_refs();
    for input in refs.iter().filter(|r| dirs[*r].receives()) {
        for output in refs.iter().filter(|r| dirs[*r].sends()) {
            if input != output {
                edges.insert(FlowEdge {
                    source: input.clone(),
                    sink: output.clone(),
                });
            }
        }
    }
    Ok(edges)
}

/// All attachment and internal flows of a description. The description
/// should validate without errors; unresolved attachments are reported as
/// `dangling-ref`.
pub fn build_flow_relation(desc: &ArchDescription) -> Result<FlowRelation, Vec<Diagnostic>> {
    let mut dirs = Directions::new();
    let mut errors = Vec::new();
    for element in desc.elements() {
        element_directions(element, &mut dirs, &mut errors);
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let mut rel = FlowRelation::default();
    for element in desc.elements() {
        match internal_flows_with(element, &dirs) {
            Ok(edges) => rel.edges.extend(edges),
            Err(e) => errors.extend(e),
        }
    }
    for att in desc.all_attachments() {
        if dirs.contains_key(&att.port_ref()) && dirs.contains_key(&att.role_ref()) {
            attachment_flows_with(att, &dirs, &mut rel);
        } else {
            errors.push(Diagnostic::error(
                Code::DanglingRef,
                format!("attachment `{att}` does not resolve"),
            ));
        }
    }
    if errors.is_empty() {
        Ok(rel)
    } else {
        Err(errors)
    }
}
