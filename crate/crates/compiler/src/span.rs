//! Source positions and diagnostics shared by every compiler pass.

use serde::Serialize;

/// A 1-based source position. `file` is the path as given to the compiler;
/// directives and scope names render only its final component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

impl Span {
    pub fn new(file: impl Into<String>, line: u32, column: u32) -> Span {
        let span = Span {
            file: file.into(),
            line,
            column,
        };
        debug_assert!(span.line >= 1 && span.column >= 1 && !span.file.is_empty());
        span
    }

    /// Synthetic position for builtin symbols (line 0 sentinel).
    pub fn builtin() -> Span {
        Span {
            file: "<builtin>".to_string(),
            line: 0,
            column: 0,
        }
    }

    /// Final path component, e.g. `expr.chpl` for `fixtures/expr.chpl`.
    pub fn file_name(&self) -> &str {
        self.file.rsplit(['/', '\\']).next().unwrap_or(&self.file)
    }

    /// File stem used in scope names, e.g. `heat` for `benchmarks/heat.chpl`.
    pub fn file_stem(&self) -> &str {
        let name = self.file_name();
        name.rsplit_once('.').map(|(s, _)| s).unwrap_or(name)
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.file, self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub span: Span,
    pub message: String,
    /// Secondary positions, e.g. the earlier declaration in a duplicate.
    pub related: Vec<Span>,
}

impl Diagnostic {
    pub fn new(span: Span, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            span,
            message: message.into(),
            related: Vec::new(),
        }
    }

    pub fn with_related(mut self, span: Span) -> Diagnostic {
        self.related.push(span);
        self
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: error: {}", self.span, self.message)?;
        for r in &self.related {
            write!(f, "\n{}: note: related location", r)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_name_and_stem() {
        let s = Span::new("benchmarks/heat.chpl", 12, 1);
        assert_eq!(s.file_name(), "heat.chpl");
        assert_eq!(s.file_stem(), "heat");
        let bare = Span::new("expr.chpl", 1, 1);
        assert_eq!(bare.file_name(), "expr.chpl");
        assert_eq!(bare.file_stem(), "expr");
    }

    #[test]
    fn diagnostic_renders_span_and_related() {
        let d = Diagnostic::new(Span::new("a.chpl", 3, 7), "duplicate declaration of `x`")
            .with_related(Span::new("a.chpl", 1, 5));
        let text = d.to_string();
        assert!(text.contains("a.chpl:3:7"));
        assert!(text.contains("a.chpl:1:5"));
    }
}
