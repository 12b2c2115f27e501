//! Recursive-descent parser for the ACME subset.
//!
//! ```text
//! system      := "System" ident "=" "{" item* "}"
//! item        := component | connector | attgroup | propblock
//! component   := "Component" ident "=" "{" (port | propblock)* "}"
//! port        := "Port" ident ("=" "{" propblock? "}")? ";"?
//! connector   := "Connector" ident "=" "{" (role | propblock)* "}"
//! role        := "Role" ident ("=" "{" propblock? "}")? ";"?
//! attgroup    := "Attachments" ident "=" "{" attachment* "}"
//! attachment  := ident "." ident "to" ident "." ident ";"
//! propblock   := "Properties" "{" prop* "}"
//! prop        := ident (":" ptype)? "=" literal ";"
//! ```
//!
//! Keywords are contextual, so `to` and `from` remain usable as names.
//! Syntax errors stop the parse; naming and typing errors are collected
//! and reported together once the whole input has been read.

use std::collections::HashMap;

use super::lexer::{tokenize, Token, TokenKind};
use super::{
    ArchDescription, Attachment, AttachmentsGroup, Component, Connector, Identifier, Literal,
    Port, Property, PropertyType, Role,
};
use crate::diagnostic::{Code, Diagnostic, Location};

/// Parses ACME source into a description. On failure every returned
/// diagnostic is an error with a location, and no tree is produced.
pub fn parse(source: &str) -> Result<ArchDescription, Vec<Diagnostic>> {
    let tokens = tokenize(source).map_err(|d| vec![d])?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        errors: Vec::new(),
    };
    match parser.system() {
        Ok(desc) if parser.errors.is_empty() => Ok(desc),
        Ok(_) => Err(parser.errors),
        Err(fatal) => {
            parser.errors.push(fatal);
            Err(parser.errors)
        }
    }
}

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    errors: Vec<Diagnostic>,
}

/// Tracks names declared in one scope and reports redeclarations.
struct Scope {
    what: &'static str,
    seen: HashMap<String, Location>,
}

impl Scope {
    fn new(what: &'static str) -> Self {
        Scope {
            what,
            seen: HashMap::new(),
        }
    }

    fn declare(&mut self, name: &Identifier, at: Location, errors: &mut Vec<Diagnostic>) {
        if let Some(first) = self.seen.get(name.as_str()) {
            errors.push(
                Diagnostic::error(
                    Code::DuplicateName,
                    format!(
                        "{} `{name}` is already declared at {first}",
                        self.what
                    ),
                )
                .at(at),
            );
        } else {
            self.seen.insert(name.as_str().to_owned(), at);
        }
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn advance(&mut self) -> Token {
        let token = self.tokens[self.pos].clone();
        if token.kind != TokenKind::Eof {
            self.pos += 1;
        }
        token
    }

    fn unexpected(&self, expected: &str) -> Diagnostic {
        let token = self.peek();
        Diagnostic::error(
            Code::SyntaxError,
            format!("expected {expected}, found {}", token.kind),
        )
        .at(token.location)
    }

    fn at_keyword(&self, keyword: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Word(w) if w == keyword)
    }

    fn keyword(&mut self, keyword: &str) -> PResult<()> {
        if self.at_keyword(keyword) {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{keyword}`")))
        }
    }

    fn punct(&mut self, kind: TokenKind) -> PResult<()> {
        if self.peek().kind == kind {
            self.advance();
            Ok(())
        } else {
            Err(self.unexpected(&kind.to_string()))
        }
    }

    fn eat(&mut self, kind: TokenKind) -> bool {
        if self.peek().kind == kind {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> PResult<(Identifier, Location)> {
        match &self.peek().kind {
            TokenKind::Word(w) => {
                let id = Identifier::new_unchecked(w.clone());
                let at = self.advance().location;
                Ok((id, at))
            }
            _ => Err(self.unexpected("an identifier")),
        }
    }

    fn system(&mut self) -> PResult<ArchDescription> {
        self.keyword("System")?;
        let (name, _) = self.ident()?;
        self.punct(TokenKind::Eq)?;
        self.punct(TokenKind::LBrace)?;

        let mut desc = ArchDescription::empty(name);
        let mut elements = Scope::new("element");
        let mut groups = Scope::new("attachments group");
        let mut props = Scope::new("property");
        loop {
            match &self.peek().kind {
                TokenKind::RBrace => {
                    self.advance();
                    break;
                }
                TokenKind::Word(w) => match w.as_str() {
                    "Component" => {
                        let (c, at) = self.component()?;
                        elements.declare(&c.name, at, &mut self.errors);
                        desc.components.push(c);
                    }
                    "Connector" => {
                        let (c, at) = self.connector()?;
                        elements.declare(&c.name, at, &mut self.errors);
                        desc.connectors.push(c);
                    }
                    "Attachments" => {
                        let (g, at) = self.attachments_group()?;
                        groups.declare(&g.name, at, &mut self.errors);
                        desc.attachments.push(g);
                    }
                    "Properties" => self.property_block(&mut desc.properties, &mut props)?,
                    _ => return Err(self.unexpected("a system item")),
                },
                _ => return Err(self.unexpected("a system item or `}`")),
            }
        }
        if self.peek().kind != TokenKind::Eof {
            return Err(self.unexpected("end of input"));
        }
        Ok(desc)
    }

    fn component(&mut self) -> PResult<(Component, Location)> {
        self.keyword("Component")?;
        let (name, at) = self.ident()?;
        self.punct(TokenKind::Eq)?;
        self.punct(TokenKind::LBrace)?;
        let mut ports = Vec::new();
        let mut properties = Vec::new();
        let mut port_names = Scope::new("port");
        let mut props = Scope::new("property");
        while !self.eat(TokenKind::RBrace) {
            if self.at_keyword("Port") {
                self.advance();
                let (pname, pat) = self.ident()?;
                port_names.declare(&pname, pat, &mut self.errors);
                let pprops = self.interface_body()?;
                ports.push(Port {
                    name: pname,
                    properties: pprops,
                });
            } else if self.at_keyword("Properties") {
                self.property_block(&mut properties, &mut props)?;
            } else {
                return Err(self.unexpected("`Port`, `Properties` or `}`"));
            }
        }
        Ok((
            Component {
                name,
                ports,
                properties,
            },
            at,
        ))
    }

    fn connector(&mut self) -> PResult<(Connector, Location)> {
        self.keyword("Connector")?;
        let (name, at) = self.ident()?;
        self.punct(TokenKind::Eq)?;
        self.punct(TokenKind::LBrace)?;
        let mut roles = Vec::new();
        let mut properties = Vec::new();
        let mut role_names = Scope::new("role");
        let mut props = Scope::new("property");
        while !self.eat(TokenKind::RBrace) {
            if self.at_keyword("Role") {
                self.advance();
                let (rname, rat) = self.ident()?;
                role_names.declare(&rname, rat, &mut self.errors);
                let rprops = self.interface_body()?;
                roles.push(Role {
                    name: rname,
                    properties: rprops,
                });
            } else if self.at_keyword("Properties") {
                self.property_block(&mut properties, &mut props)?;
            } else {
                return Err(self.unexpected("`Role`, `Properties` or `}`"));
            }
        }
        Ok((
            Connector {
                name,
                roles,
                properties,
            },
            at,
        ))
    }

    /// `("=" "{" propblock? "}")? ";"?` after a port or role name.
    fn interface_body(&mut self) -> PResult<Vec<Property>> {
        let mut properties = Vec::new();
        if self.eat(TokenKind::Eq) {
            self.punct(TokenKind::LBrace)?;
            if self.at_keyword("Properties") {
                let mut props = Scope::new("property");
                self.property_block(&mut properties, &mut props)?;
            }
            self.punct(TokenKind::RBrace)?;
        }
        self.eat(TokenKind::Semi);
        Ok(properties)
    }

    fn attachments_group(&mut self) -> PResult<(AttachmentsGroup, Location)> {
        self.keyword("Attachments")?;
        let (name, at) = self.ident()?;
        self.punct(TokenKind::Eq)?;
        self.punct(TokenKind::LBrace)?;
        let mut attachments = Vec::new();
        while !self.eat(TokenKind::RBrace) {
            let (component, _) = self.ident()?;
            self.punct(TokenKind::Dot)?;
            let (port, _) = self.ident()?;
            self.keyword("to")?;
            let (connector, _) = self.ident()?;
            self.punct(TokenKind::Dot)?;
            let (role, _) = self.ident()?;
            self.punct(TokenKind::Semi)?;
            attachments.push(Attachment {
                component,
                port,
                connector,
                role,
            });
        }
        Ok((AttachmentsGroup { name, attachments }, at))
    }

    fn property_block(&mut self, into: &mut Vec<Property>, scope: &mut Scope) -> PResult<()> {
        self.keyword("Properties")?;
        self.punct(TokenKind::LBrace)?;
        while !self.eat(TokenKind::RBrace) {
            let (name, at) = self.ident()?;
            let ptype = if self.eat(TokenKind::Colon) {
                let word = match &self.peek().kind {
                    TokenKind::Word(w) => PropertyType::from_keyword(w),
                    _ => None,
                };
                let Some(ptype) = word else {
                    return Err(self.unexpected("`string`, `int`, `float` or `boolean`"));
                };
                self.advance();
                Some(ptype)
            } else {
                None
            };
            self.punct(TokenKind::Eq)?;
            let value_at = self.peek().location;
            let value = self.literal()?;
            self.punct(TokenKind::Semi)?;

            scope.declare(&name, at, &mut self.errors);
            if let Some(t) = ptype.filter(|t| *t != value.kind()) {
                self.errors.push(
                    Diagnostic::error(
                        Code::TypeMismatch,
                        format!(
                            "property `{name}` is declared {} but its value is {}",
                            t.keyword(),
                            value.kind().keyword()
                        ),
                    )
                    .at(value_at),
                );
            }
            into.push(Property { name, ptype, value });
        }
        Ok(())
    }

    fn literal(&mut self) -> PResult<Literal> {
        let value = match &self.peek().kind {
            TokenKind::Str(s) => Literal::String(s.clone()),
            TokenKind::Int(i) => Literal::Int(*i),
            TokenKind::Float(x) => Literal::Float(*x),
            TokenKind::Word(w) if w == "true" => Literal::Boolean(true),
            TokenKind::Word(w) if w == "false" => Literal::Boolean(false),
            _ => return Err(self.unexpected("a literal")),
        };
        self.advance();
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(src: &str) -> Vec<(Code, Option<Location>)> {
        parse(src)
            .unwrap_err()
            .into_iter()
            .map(|d| (d.code, d.location))
            .collect()
    }

    #[test]
    fn empty_system() {
        let d = parse("System s = { }").unwrap();
        assert_eq!(d, ArchDescription::empty(Identifier::new("s").unwrap()));
    }

    #[test]
    fn ports_roles_and_attachments() {
        let src = r#"
            System s = {
                Component a = { Port p; Port q = { } Port r = { Properties { direction : string = "in"; } }; }
                Connector k = { Role from; Role to; Properties { n = 3; f : float = 0.5; b = true; } }
                Attachments g = { a.p to k.from; }
            }
        "#;
        let d = parse(src).unwrap();
        let a = &d.components[0];
        assert_eq!(a.ports.len(), 3);
        assert_eq!(a.ports[2].properties[0].value, Literal::String("in".into()));
        let k = &d.connectors[0];
        assert_eq!(k.roles[1].name, "to");
        assert_eq!(k.properties[0].value, Literal::Int(3));
        assert_eq!(k.properties[1].ptype, Some(PropertyType::Float));
        assert_eq!(k.properties[2].value, Literal::Boolean(true));
        assert_eq!(d.attachments[0].attachments[0].to_string(), "a.p to k.from");
    }

    #[test]
    fn duplicate_component() {
        assert_eq!(
            codes("System s = { Component a = { } Component a = { } }"),
            vec![(Code::DuplicateName, Some(Location::new(1, 42)))]
        );
    }

    #[test]
    fn duplicates_in_every_scope_are_collected() {
        let src = "System s = {
            Component a = { Port p; Port p; Properties { x = 1; } Properties { x = 2; } }
            Connector a = { Role r; Role r = { Properties { y = 1; y = 2; } } }
            Attachments g = { } Attachments g = { }
            Properties { z = 1; z = 1; }
        }";
        let found = codes(src);
        assert_eq!(found.len(), 7);
        assert!(found.iter().all(|(c, l)| *c == Code::DuplicateName && l.is_some()));
    }

    #[test]
    fn type_mismatch() {
        assert_eq!(
            codes(r#"System s = { Properties { x : int = "one"; } }"#),
            vec![(Code::TypeMismatch, Some(Location::new(1, 37)))]
        );
    }

    #[test]
    fn syntax_errors_are_located() {
        for (src, loc) in [
            ("System s { }", Location::new(1, 10)),
            ("System s = { Port p; }", Location::new(1, 14)),
            ("System s = { Attachments g = { a.p k.r; } }", Location::new(1, 36)),
            ("System s = { Properties { x : double = 1; } }", Location::new(1, 31)),
            ("System s = { Properties { x = y; } }", Location::new(1, 31)),
            ("System s = { }  extra", Location::new(1, 17)),
            ("System s = {", Location::new(1, 13)),
            ("", Location::new(1, 1)),
        ] {
            let found = codes(src);
            assert_eq!(found, vec![(Code::SyntaxError, Some(loc))], "{src}");
        }
    }

    #[test]
    fn keywords_are_contextual() {
        let d = parse("System System = { Component Port = { Port Role; } }").unwrap();
        assert_eq!(d.name, "System");
        assert_eq!(d.components[0].ports[0].name, "Role");
    }
}
