use std::collections::{HashMap, HashSet};

use super::{ArchDescription, InterfaceRef, Property};
use crate::diagnostic::{Code, Diagnostic};

/// Checks referential integrity of a description.
///
/// Errors: names declared twice in one scope (only possible for trees built
/// by hand, the parser rejects them), ill-typed properties, attachments
/// whose references do not resolve (`dangling-ref`), and ports or roles
/// used by more than one attachment (`multi-attach`). Warnings: ports and
/// roles that no attachment uses (`unattached`).
pub fn validate(desc: &ArchDescription) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_names(desc, &mut out);

    let mut uses: HashMap<InterfaceRef, usize> = HashMap::new();
    for group in &desc.attachments {
        for att in &group.attachments {
            let mut missing = Vec::new();
            match desc.component(att.component.as_str()) {
                None => missing.push(format!("component `{}`", att.component)),
                Some(c) if c.port(att.port.as_str()).is_none() => {
                    missing.push(format!("port `{}.{}`", att.component, att.port))
                }
                Some(_) => {}
            }
            match desc.connector(att.connector.as_str()) {
                None => missing.push(format!("connector `{}`", att.connector)),
                Some(c) if c.role(att.role.as_str()).is_none() => {
                    missing.push(format!("role `{}.{}`", att.connector, att.role))
                }
                Some(_) => {}
            }
            if !missing.is_empty() {
                out.push(Diagnostic::error(
                    Code::DanglingRef,
                    format!(
                        "attachment `{att}` in `{}` refers to undeclared {}",
                        group.name,
                        missing.join(" and ")
                    ),
                ));
            }
            for end in [att.port_ref(), att.role_ref()] {
                let n = uses.entry(end.clone()).or_default();
                *n += 1;
                if *n == 2 {
                    out.push(Diagnostic::error(
                        Code::MultiAttach,
                        format!("{} `{end}` is attached more than once", end.kind),
                    ));
                }
            }
        }
    }

    for iface in desc.interface_refs() {
        if !uses.contains_key(&iface) {
            out.push(Diagnostic::warning(
                Code::Unattached,
                format!("{} `{iface}` is never attached", iface.kind),
            ));
        }
    }
    out
}

fn check_names(desc: &ArchDescription, out: &mut Vec<Diagnostic>) {
    fn unique<'a>(
        what: &str,
        names: impl IntoIterator<Item = &'a str>,
        out: &mut Vec<Diagnostic>,
    ) {
        let mut seen = HashSet::new();
        for name in names {
            if !seen.insert(name) {
                out.push(Diagnostic::error(
                    Code::DuplicateName,
                    format!("{what} `{name}` is declared more than once"),
                ));
            }
        }
    }
    fn properties(owner: &str, props: &[Property], out: &mut Vec<Diagnostic>) {
        unique(
            &format!("property of `{owner}`"),
            props.iter().map(|p| p.name.as_str()),
            out,
        );
        for p in props.iter().filter(|p| !p.is_well_typed()) {
            out.push(Diagnostic::error(
                Code::TypeMismatch,
                format!("property `{}` of `{owner}` has a value of the wrong type", p.name),
            ));
        }
    }

    unique(
        "element",
        desc.components
            .iter()
            .map(|c| c.name.as_str())
            .chain(desc.connectors.iter().map(|c| c.name.as_str())),
        out,
    );
    unique(
        "attachments group",
        desc.attachments.iter().map(|g| g.name.as_str()),
        out,
    );
    properties(desc.name.as_str(), &desc.properties, out);
    for c in &desc.components {
        unique(
            &format!("port of `{}`", c.name),
            c.ports.iter().map(|p| p.name.as_str()),
            out,
        );
        properties(c.name.as_str(), &c.properties, out);
        for p in &c.ports {
            properties(&format!("{}.{}", c.name, p.name), &p.properties, out);
        }
    }
    for c in &desc.connectors {
        unique(
            &format!("role of `{}`", c.name),
            c.roles.iter().map(|r| r.name.as_str()),
            out,
        );
        properties(c.name.as_str(), &c.properties, out);
        for r in &c.roles {
            properties(&format!("{}.{}", c.name, r.name), &r.properties, out);
        }
    }
}
