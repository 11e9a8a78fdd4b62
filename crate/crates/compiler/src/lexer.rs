//! Hand-written lexer for the Chapel subset.
//!
//! Comments (`//` to end of line, non-nesting `/* */`) are skipped. The only
//! subtle token split is `..` versus a real literal: `0..n` is integer `0`,
//! operator `..`, identifier `n`, so a digit run followed by `..` never
//! consumes the first dot as a decimal point.

use crate::span::{Diagnostic, Span};

pub const KEYWORDS: &[&str] = &[
    "var", "const", "config", "proc", "iter", "if", "then", "else", "for", "forall", "coforall",
    "in", "begin", "cobegin", "zip", "return", "yield", "by", "align", "true", "false", "nil",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Keyword,
    Identifier,
    IntegerLiteral,
    RealLiteral,
    StringLiteral,
    Operator,
    Punctuation,
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub span: Span,
}

impl Token {
    pub fn is(&self, kind: TokenKind, text: &str) -> bool {
        self.kind == kind && self.text == text
    }
}

/// Multi-character operators, longest first so prefixes don't shadow them.
const OPERATORS: &[&str] = &[
    "<=>", "**", "==", "!=", "<=", ">=", "&&", "||", "<<", ">>", "..", "+=", "-=", "*=", "/=",
    "+", "-", "*", "/", "%", "<", ">", "=", "&", "|", "^", "#", "!",
];

const PUNCTUATION: &[char] = &['(', ')', '{', '}', '[', ']', ',', ';', ':', '?'];

struct Lexer<'a> {
    src: &'a [char],
    pos: usize,
    line: u32,
    column: u32,
    file: &'a str,
}

impl<'a> Lexer<'a> {
    fn peek(&self, offset: usize) -> Option<char> {
        self.src.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn here(&self) -> Span {
        Span::new(self.file, self.line, self.column)
    }

    fn skip_trivia(&mut self) -> Result<(), Diagnostic> {
        loop {
            match (self.peek(0), self.peek(1)) {
                (Some(c), _) if c.is_whitespace() => {
                    self.bump();
                }
                (Some('/'), Some('/')) => {
                    while let Some(c) = self.peek(0) {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                (Some('/'), Some('*')) => {
                    let open = self.here();
                    self.bump();
                    self.bump();
                    loop {
                        match (self.peek(0), self.peek(1)) {
                            (Some('*'), Some('/')) => {
                                self.bump();
                                self.bump();
                                break;
                            }
                            (Some(_), _) => {
                                self.bump();
                            }
                            (None, _) => {
                                return Err(Diagnostic::new(open, "unterminated block comment"));
                            }
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn lex_number(&mut self) -> Token {
        let span = self.here();
        let mut text = String::new();
        while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
            text.push(self.bump().unwrap());
        }
        // a lone '.' followed by a digit is a decimal point; '..' is a range
        let mut kind = TokenKind::IntegerLiteral;
        if self.peek(0) == Some('.')
            && self.peek(1) != Some('.')
            && matches!(self.peek(1), Some(c) if c.is_ascii_digit())
        {
            kind = TokenKind::RealLiteral;
            text.push(self.bump().unwrap());
            while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
                text.push(self.bump().unwrap());
            }
        }
        if matches!(self.peek(0), Some('e' | 'E')) {
            let mut lookahead = 1;
            if matches!(self.peek(1), Some('+' | '-')) {
                lookahead = 2;
            }
            if matches!(self.peek(lookahead), Some(c) if c.is_ascii_digit()) {
                kind = TokenKind::RealLiteral;
                for _ in 0..lookahead {
                    text.push(self.bump().unwrap());
                }
                while matches!(self.peek(0), Some(c) if c.is_ascii_digit()) {
                    text.push(self.bump().unwrap());
                }
            }
        }
        Token { kind, text, span }
    }

    fn lex_word(&mut self) -> Token {
        let span = self.here();
        let mut text = String::new();
        while matches!(self.peek(0), Some(c) if c.is_alphanumeric() || c == '_') {
            text.push(self.bump().unwrap());
        }
        let kind = if KEYWORDS.contains(&text.as_str()) {
            TokenKind::Keyword
        } else {
            TokenKind::Identifier
        };
        Token { kind, text, span }
    }

    fn lex_string(&mut self) -> Result<Token, Diagnostic> {
        let span = self.here();
        self.bump(); // opening quote
        let mut text = String::new();
        loop {
            match self.peek(0) {
                Some('"') => {
                    self.bump();
                    return Ok(Token {
                        kind: TokenKind::StringLiteral,
                        text,
                        span,
                    });
                }
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some('n') => text.push('\n'),
                        Some('t') => text.push('\t'),
                        Some('\\') => text.push('\\'),
                        Some('"') => text.push('"'),
                        Some(c) => {
                            return Err(Diagnostic::new(
                                span,
                                format!("unknown escape `\\{c}` in string literal"),
                            ))
                        }
                        None => return Err(Diagnostic::new(span, "unterminated string literal")),
                    }
                }
                Some('\n') | None => {
                    return Err(Diagnostic::new(span, "unterminated string literal"))
                }
                Some(c) => {
                    text.push(c);
                    self.bump();
                }
            }
        }
    }
}

pub fn tokenize(source: &str, file: &str) -> Result<Vec<Token>, Vec<Diagnostic>> {
    let chars: Vec<char> = source.chars().collect();
    let mut lexer = Lexer {
        src: &chars,
        pos: 0,
        line: 1,
        column: 1,
        file,
    };
    let mut tokens = Vec::new();
    let mut diagnostics = Vec::new();
    loop {
        if let Err(d) = lexer.skip_trivia() {
            diagnostics.push(d);
            break;
        }
        let Some(c) = lexer.peek(0) else { break };
        if c.is_ascii_digit() {
            tokens.push(lexer.lex_number());
        } else if c.is_alphabetic() || c == '_' {
            tokens.push(lexer.lex_word());
        } else if c == '"' {
            match lexer.lex_string() {
                Ok(t) => tokens.push(t),
                Err(d) => {
                    diagnostics.push(d);
                    break;
                }
            }
        } else if PUNCTUATION.contains(&c) {
            let span = lexer.here();
            lexer.bump();
            tokens.push(Token {
                kind: TokenKind::Punctuation,
                text: c.to_string(),
                span,
            });
        } else if let Some(op) = OPERATORS.iter().find(|op| {
            op.chars()
                .enumerate()
                .all(|(k, oc)| lexer.peek(k) == Some(oc))
        }) {
            let span = lexer.here();
            for _ in 0..op.len() {
                lexer.bump();
            }
            tokens.push(Token {
                kind: TokenKind::Operator,
                text: op.to_string(),
                span,
            });
        } else {
            diagnostics.push(Diagnostic::new(
                lexer.here(),
                format!("unexpected character `{c}`"),
            ));
            lexer.bump();
        }
    }
    if diagnostics.is_empty() {
        tokens.push(Token {
            kind: TokenKind::Eof,
            text: String::new(),
            span: lexer.here(),
        });
        Ok(tokens)
    } else {
        Err(diagnostics)
    }
}
