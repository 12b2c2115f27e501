//! Structured errors and warnings shared by every analysis stage.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Error => f.write_str("error"),
            Severity::Warning => f.write_str("warning"),
        }
    }
}

/// Stable diagnostic codes. The string form is part of the tool's output
/// contract and must not change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    LexError,
    SyntaxError,
    DuplicateName,
    TypeMismatch,
    DanglingRef,
    MultiAttach,
    Unattached,
    BadDirection,
    BadFlow,
    FlowMismatch,
    BadCriterion,
}

impl Code {
    pub fn as_str(self) -> &'static str {
        match self {
            Code::LexError => "lex-error",
            Code::SyntaxError => "syntax-error",
            Code::DuplicateName => "duplicate-name",
            Code::TypeMismatch => "type-mismatch",
            Code::DanglingRef => "dangling-ref",
            Code::MultiAttach => "multi-attach",
            Code::Unattached => "unattached",
            Code::BadDirection => "bad-direction",
            Code::BadFlow => "bad-flow",
            Code::FlowMismatch => "flow-mismatch",
            Code::BadCriterion => "bad-criterion",
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

/// 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Location {
    pub line: u32,
    pub column: u32,
}

impl Location {
    pub fn new(line: u32, column: u32) -> Self {
        Location { line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, thiserror::Error)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub location: Option<Location>,
}

impl Diagnostic {
    pub fn error(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn warning(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            code,
            message: message.into(),
            location: None,
        }
    }

    pub fn at(mut self, location: Location) -> Self {
        self.location = Some(location);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.severity, self.code)?;
        if let Some(loc) = self.location {
            write!(f, " at {loc}")?;
        }
        write!(f, ": {}", self.message)
    }
}

/// True if any diagnostic in the list is an error.
pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_with_and_without_location() {
        let d = Diagnostic::error(Code::SyntaxError, "expected `=`").at(Location::new(3, 7));
        assert_eq!(d.to_string(), "error[syntax-error] at 3:7: expected `=`");
        let w = Diagnostic::warning(Code::Unattached, "port a.p is never attached");
        assert_eq!(w.to_string(), "warning[unattached]: port a.p is never attached");
    }

    #[test]
    fn has_errors_ignores_warnings() {
        let w = Diagnostic::warning(Code::Unattached, "x");
        assert!(!has_errors(&[w.clone()]));
        assert!(has_errors(&[w, Diagnostic::error(Code::DanglingRef, "y")]));
    }
}
