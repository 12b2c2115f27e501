use std::fmt;
use std::iter::Peekable;
use std::str::Chars;

use crate::diagnostic::{Code, Diagnostic, Location};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    /// Identifiers and keywords alike; keywords are contextual.
    Word(String),
    Str(String),
    Int(i64),
    Float(f64),
    LBrace,
    RBrace,
    Eq,
    Semi,
    Colon,
    Dot,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Word(w) => write!(f, "`{w}`"),
            TokenKind::Str(s) => write!(f, "string {s:?}"),
            TokenKind::Int(i) => write!(f, "integer {i}"),
            TokenKind::Float(x) => write!(f, "float {x:?}"),
            TokenKind::LBrace => f.write_str("`{`"),
            TokenKind::RBrace => f.write_str("`}`"),
            TokenKind::Eq => f.write_str("`=`"),
            TokenKind::Semi => f.write_str("`;`"),
            TokenKind::Colon => f.write_str("`:`"),
            TokenKind::Dot => f.write_str("`.`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub location: Location,
}

struct Lexer<'s> {
    chars: Peekable<Chars<'s>>,
    line: u32,
    column: u32,
}

impl Lexer<'_> {
    fn location(&self) -> Location {
        Location::new(self.line, self.column)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) -> Result<(), Diagnostic> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('/') => {
                    let start = self.location();
                    self.bump();
                    if self.peek() != Some('/') {
                        return Err(Diagnostic::error(Code::LexError, "unexpected character `/`")
                            .at(start));
                    }
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn next_token(&mut self) -> Result<Token, Diagnostic> {
        self.skip_trivia()?;
        let location = self.location();
        let Some(c) = self.peek() else {
            return Ok(Token {
                kind: TokenKind::Eof,
                location,
            });
        };
        let kind = match c {
            '{' | '}' | '=' | ';' | ':' | '.' => {
                self.bump();
                match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '=' => TokenKind::Eq,
                    ';' => TokenKind::Semi,
                    ':' => TokenKind::Colon,
                    _ => TokenKind::Dot,
                }
            }
            '"' => self.string(location)?,
            c if c.is_ascii_digit() || c == '-' => self.number(location)?,
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut word = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                TokenKind::Word(word)
            }
            other => {
                return Err(
                    Diagnostic::error(Code::LexError, format!("unexpected character {other:?}"))
                        .at(location),
                )
            }
        };
        Ok(Token { kind, location })
    }

    fn string(&mut self, start: Location) -> Result<TokenKind, Diagnostic> {
        self.bump();
        let mut text = String::new();
        loop {
            let here = self.location();
            match self.bump() {
                None | Some('\n') => {
                    return Err(
                        Diagnostic::error(Code::LexError, "unterminated string literal").at(start)
                    )
                }
                Some('"') => return Ok(TokenKind::Str(text)),
                Some('\\') => match self.bump() {
                    Some('"') => text.push('"'),
                    Some('\\') => text.push('\\'),
                    Some('n') => text.push('\n'),
                    Some('t') => text.push('\t'),
                    Some('r') => text.push('\r'),
                    other => {
                        let shown = other.map_or_else(|| "end of input".into(), |c| format!("{c:?}"));
                        return Err(Diagnostic::error(
                            Code::LexError,
                            format!("invalid escape sequence before {shown}"),
                        )
                        .at(here));
                    }
                },
                Some(c) => text.push(c),
            }
        }
    }

    fn digits(&mut self, into: &mut String) -> usize {
        let mut n = 0;
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            into.push(c);
            self.bump();
            n += 1;
        }
        n
    }

    /// `-?digits(.digits)?([eE][+-]?digits)?`; a fraction or exponent makes
    /// it a float.
    fn number(&mut self, start: Location) -> Result<TokenKind, Diagnostic> {
        let malformed = |text: &str| {
            Diagnostic::error(Code::LexError, format!("malformed number `{text}`")).at(start)
        };
        let mut text = String::new();
        if self.peek() == Some('-') {
            text.push('-');
            self.bump();
        }
        if self.digits(&mut text) == 0 {
            return Err(malformed(&text));
        }
        let mut is_float = false;
        if self.peek() == Some('.') {
            is_float = true;
            text.push('.');
            self.bump();
            if self.digits(&mut text) == 0 {
                return Err(malformed(&text));
            }
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            is_float = true;
            text.push(e);
            self.bump();
            if let Some(sign @ ('+' | '-')) = self.peek() {
                text.push(sign);
                self.bump();
            }
            if self.digits(&mut text) == 0 {
                return Err(malformed(&text));
            }
        }
        if self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(malformed(&text));
        }
        if is_float {
            match text.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(TokenKind::Float(x)),
                _ => Err(Diagnostic::error(
                    Code::LexError,
                    format!("float literal `{text}` is out of range"),
                )
                .at(start)),
            }
        } else {
            text.parse::<i64>().map(TokenKind::Int).map_err(|_| {
                Diagnostic::error(
                    Code::LexError,
                    format!("integer literal `{text}` is out of range"),
                )
                .at(start)
            })
        }
    }
}

/// Tokenizes the whole input, stopping at the first lexical error.
pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, Diagnostic> {
    let mut lexer = Lexer {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut tokens = Vec::new();
    loop {
        let token = lexer.next_token()?;
        let eof = token.kind == TokenKind::Eof;
        tokens.push(token);
        if eof {
            return Ok(tokens);
        }
    }
}
