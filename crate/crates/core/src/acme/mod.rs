//! AST for the supported ACME subset: systems, components with ports,
//! connectors with roles, attachments and properties.
//!
//! Declaration order is kept in every list so that printing and re-parsing
//! a description yields the same tree.

mod lexer;
mod parser;
mod printer;
mod validate;

use std::borrow::Borrow;
use std::fmt;

use serde::Serialize;

pub use parser::parse;
pub use printer::emit_text;
pub use validate::validate;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid identifier `{0}`")]
pub struct InvalidIdentifier(pub String);

/// A name matching `[A-Za-z_][A-Za-z0-9_]*`. Case-sensitive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Identifier(String);

impl Identifier {
    pub fn new(text: impl Into<String>) -> Result<Self, InvalidIdentifier> {
        let text = text.into();
        if Self::is_valid(&text) {
            Ok(Identifier(text))
        } else {
            Err(InvalidIdentifier(text))
        }
    }

    pub fn is_valid(text: &str) -> bool {
        let mut chars = text.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }

    pub(crate) fn new_unchecked(text: String) -> Self {
        debug_assert!(Self::is_valid(&text), "{text:?}");
        Identifier(text)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Identifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Identifier {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for Identifier {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl TryFrom<&str> for Identifier {
    type Error = InvalidIdentifier;

    fn try_from(value: &str) -> Result<Self, Self::Error> {
        Identifier::new(value)
    }
}

impl PartialEq<str> for Identifier {
    fn eq(&self, other: &str) -> bool {
        self.0 == other
    }
}

impl PartialEq<&str> for Identifier {
    fn eq(&self, other: &&str) -> bool {
        self.0 == *other
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PropertyType {
    String,
    Int,
    Float,
    Boolean,
}

impl PropertyType {
    pub fn keyword(self) -> &'static str {
        match self {
            PropertyType::String => "string",
            PropertyType::Int => "int",
            PropertyType::Float => "float",
            PropertyType::Boolean => "boolean",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        match word {
            "string" => Some(PropertyType::String),
            "int" => Some(PropertyType::Int),
            "float" => Some(PropertyType::Float),
            "boolean" => Some(PropertyType::Boolean),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    String(String),
    Int(i64),
    Float(f64),
    Boolean(bool),
}

impl Literal {
    pub fn kind(&self) -> PropertyType {
        match self {
            Literal::String(_) => PropertyType::String,
            Literal::Int(_) => PropertyType::Int,
            Literal::Float(_) => PropertyType::Float,
            Literal::Boolean(_) => PropertyType::Boolean,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Literal::String(s) => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    pub name: Identifier,
    pub ptype: Option<PropertyType>,
    pub value: Literal,
}

impl Property {
    pub fn new(name: Identifier, ptype: Option<PropertyType>, value: Literal) -> Self {
        Property { name, ptype, value }
    }

    /// A `name : string = "value"` property.
    pub fn string(name: Identifier, value: impl Into<String>) -> Self {
        Property::new(name, Some(PropertyType::String), Literal::String(value.into()))
    }

    pub fn is_well_typed(&self) -> bool {
        self.ptype.is_none_or(|t| t == self.value.kind())
    }
}

pub fn find_property<'a>(properties: &'a [Property], name: &str) -> Option<&'a Property> {
    properties.iter().find(|p| p.name == name)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Port {
    pub name: Identifier,
    pub properties: Vec<Property>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Role {
    pub name: Identifier,
    pub properties: Vec<Property>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub name: Identifier,
    pub ports: Vec<Port>,
    pub properties: Vec<Property>,
}

impl Component {
    pub fn port(&self, name: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.name == name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Connector {
    pub name: Identifier,
    pub roles: Vec<Role>,
    pub properties: Vec<Property>,
}

impl Connector {
    pub fn role(&self, name: &str) -> Option<&Role> {
        self.roles.iter().find(|r| r.name == name)
    }
}

/// `component.port to connector.role`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Attachment {
    pub component: Identifier,
    pub port: Identifier,
    pub connector: Identifier,
    pub role: Identifier,
}

impl Attachment {
    pub fn port_ref(&self) -> InterfaceRef {
        InterfaceRef::port(self.component.clone(), self.port.clone())
    }

    pub fn role_ref(&self) -> InterfaceRef {
        InterfaceRef::role(self.connector.clone(), self.role.clone())
    }
}

impl fmt::Display for Attachment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}.{} to {}.{}",
            self.component, self.port, self.connector, self.role
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttachmentsGroup {
    pub name: Identifier,
    pub attachments: Vec<Attachment>,
}

/// A parsed system: components, connectors, attachments groups and
/// system-level properties.
#[derive(Debug, Clone, PartialEq)]
pub struct ArchDescription {
    pub name: Identifier,
    pub components: Vec<Component>,
    pub connectors: Vec<Connector>,
    pub attachments: Vec<AttachmentsGroup>,
    pub properties: Vec<Property>,
}

impl ArchDescription {
    pub fn empty(name: Identifier) -> Self {
        ArchDescription {
            name,
            components: Vec::new(),
            connectors: Vec::new(),
            attachments: Vec::new(),
            properties: Vec::new(),
        }
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    pub fn connector(&self, name: &str) -> Option<&Connector> {
        self.connectors.iter().find(|c| c.name == name)
    }

    pub fn element(&self, name: &str) -> Option<Element<'_>> {
        self.component(name)
            .map(Element::Component)
            .or_else(|| self.connector(name).map(Element::Connector))
    }

    /// Components first, then connectors, each in declaration order.
    pub fn elements(&self) -> impl Iterator<Item = Element<'_>> {
        self.components
            .iter()
            .map(Element::Component)
            .chain(self.connectors.iter().map(Element::Connector))
    }

    pub fn all_attachments(&self) -> impl Iterator<Item = &Attachment> {
        self.attachments.iter().flat_map(|g| g.attachments.iter())
    }

    /// Every port and role, in element declaration order.
    pub fn interface_refs(&self) -> impl Iterator<Item = InterfaceRef> + '_ {
        self.elements().flat_map(|e| e.interface_refs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InterfaceKind {
    Port,
    Role,
}

impl fmt::Display for InterfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InterfaceKind::Port => f.write_str("port"),
            InterfaceKind::Role => f.write_str("role"),
        }
    }
}

/// A port of a component or a role of a connector, named by owner.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct InterfaceRef {
    pub kind: InterfaceKind,
    pub owner: Identifier,
    pub iface: Identifier,
}

impl InterfaceRef {
    pub fn port(owner: Identifier, iface: Identifier) -> Self {
        InterfaceRef {
            kind: InterfaceKind::Port,
            owner,
            iface,
        }
    }

    pub fn role(owner: Identifier, iface: Identifier) -> Self {
        InterfaceRef {
            kind: InterfaceKind::Role,
            owner,
            iface,
        }
    }

    /// `owner.iface`
    pub fn label(&self) -> String {
        format!("{}.{}", self.owner, self.iface)
    }
}

impl fmt::Display for InterfaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.owner, self.iface)
    }
}

/// Borrowed view over either kind of architectural element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element<'a> {
    Component(&'a Component),
    Connector(&'a Connector),
}

/// A port or a role seen through its name and properties.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interface<'a> {
    pub name: &'a Identifier,
    pub properties: &'a [Property],
}

impl<'a> Element<'a> {
    pub fn name(&self) -> &'a Identifier {
        match self {
            Element::Component(c) => &c.name,
            Element::Connector(c) => &c.name,
        }
    }

    pub fn properties(&self) -> &'a [Property] {
        match self {
            Element::Component(c) => &c.properties,
            Element::Connector(c) => &c.properties,
        }
    }

    pub fn interface_kind(&self) -> InterfaceKind {
        match self {
            Element::Component(_) => InterfaceKind::Port,
            Element::Connector(_) => InterfaceKind::Role,
        }
    }

    pub fn interfaces(&self) -> Vec<Interface<'a>> {
        match *self {
            Element::Component(c) => c
                .ports
                .iter()
                .map(|p| Interface {
                    name: &p.name,
                    properties: &p.properties,
                })
                .collect(),
            Element::Connector(c) => c
                .roles
                .iter()
                .map(|r| Interface {
                    name: &r.name,
                    properties: &r.properties,
                })
                .collect(),
        }
    }

    pub fn interface(&self, name: &str) -> Option<Interface<'a>> {
        self.interfaces().into_iter().find(|i| i.name == name)
    }

    pub fn interface_ref(&self, iface: &Identifier) -> InterfaceRef {
        InterfaceRef {
            kind: self.interface_kind(),
            owner: self.name().clone(),
            iface: iface.clone(),
        }
    }

    pub fn interface_refs(&self) -> Vec<InterfaceRef> {
        self.interfaces()
            .into_iter()
            .map(|i| self.interface_ref(i.name))
            .collect()
    }
}
