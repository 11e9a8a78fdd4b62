//! The parse tree: one generic node type over a closed kind enum, so the
//! normalization pass and the JSON dump can walk it uniformly.
//!
//! Child conventions by kind:
//! - `Module`/`Block`: statement children.
//! - `VarDecl`/`ConfigConstDecl`: optional initializer child.
//! - `ProcDecl`: one `Block` child; params/return type live in `attrs`.
//! - `If` (nested form): `[condition, then-Block]`. Chain continuations and
//!   else bodies appear as a trailing wrapper `Block` inside the then-Block,
//!   reproducing the upstream AST pathology verbatim.
//! - `ConditionalChain` (normalized form): `[c1, b1, c2, b2, ...]` plus a
//!   trailing else `Block` when `attrs.has_else`.
//! - loops: `[iterable, body-Block]`; `BeginStmt`: `[Block]`;
//!   `CobeginStmt`: `[Block]` whose statements are the tasks.
//! - `CallExpr`: argument children, callee name in `attrs.name`;
//!   `InlineCxxCall`: argument children, format string in `attrs.value`.
//! - `BinaryExpr`: `[lhs, rhs]`; `TernaryExpr`: `[cond, then, else]`;
//!   `RangeLiteral`: bound children per `attrs.bounds`; `IndexExpr`:
//!   `[base, indices...]`; `AssignStmt`: `[lhs, rhs]`.

use serde::Serialize;

use crate::span::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Module,
    VarDecl,
    ConfigConstDecl,
    ProcDecl,
    Block,
    If,
    ConditionalChain,
    ForLoop,
    ForallLoop,
    CoforallLoop,
    BeginStmt,
    CobeginStmt,
    CallExpr,
    InlineCxxCall,
    BinaryExpr,
    TernaryExpr,
    RangeLiteral,
    TupleExpr,
    IndexExpr,
    AssignStmt,
    ReturnStmt,
    YieldStmt,
    Literal,
    Identifier,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Param {
    pub name: String,
    pub type_name: String,
}

/// Kind-specific payload; unused fields stay `None` and are omitted from the
/// JSON dump.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Attrs {
    /// Identifier / declaration / loop-index / callee name.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Binary or assignment operator symbol.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub op: Option<String>,
    /// Declared type annotation (`int`, `real`, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_name: Option<String>,
    /// Array-typed declarations: element type of `[dom] elem`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elem_type: Option<String>,
    /// Literal value text (or inlinecxx format string).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// Literal subtype: int, real, string, bool, nil.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lit_kind: Option<String>,
    /// `var` / `const` on VarDecl.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decl_kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<Param>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub return_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_iter: Option<bool>,
    /// RangeLiteral boundedness: bounded, low, high, none.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<String>,
    /// ConditionalChain: whether a trailing else Block child exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub has_else: Option<bool>,
    /// The expression was written in parentheses; emission preserves them.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parenthesized: Option<bool>,
    /// Loop over `zip(...)` participants instead of a single iterable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zip_arity: Option<usize>,
    /// Loop index names; one entry except for zip destructuring tuples.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index_names: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AstNode {
    pub kind: NodeKind,
    pub span: Span,
    #[serde(skip_serializing_if = "Attrs::is_empty")]
    pub attrs: Attrs,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<AstNode>,
}

impl Attrs {
    pub fn is_empty(&self) -> bool {
        self == &Attrs::default()
    }
}

impl AstNode {
    pub fn new(kind: NodeKind, span: Span) -> AstNode {
        AstNode {
            kind,
            span,
            attrs: Attrs::default(),
            children: Vec::new(),
        }
    }

    pub fn with_children(mut self, children: Vec<AstNode>) -> AstNode {
        self.children = children;
        self
    }

    pub fn is_statement(&self) -> bool {
        matches!(
            self.kind,
            NodeKind::VarDecl
                | NodeKind::ConfigConstDecl
                | NodeKind::ProcDecl
                | NodeKind::If
                | NodeKind::ConditionalChain
                | NodeKind::ForLoop
                | NodeKind::ForallLoop
                | NodeKind::CoforallLoop
                | NodeKind::BeginStmt
                | NodeKind::CobeginStmt
                | NodeKind::AssignStmt
                | NodeKind::ReturnStmt
                | NodeKind::YieldStmt
                | NodeKind::CallExpr
                | NodeKind::InlineCxxCall
                | NodeKind::Block
        )
    }

    /// Pre-order walk over the whole tree.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a AstNode)) {
        visit(self);
        for c in &self.children {
            c.walk(visit);
        }
    }

    pub fn count_kind(&self, kind: NodeKind) -> usize {
        let mut n = 0;
        self.walk(&mut |node| {
            if node.kind == kind {
                n += 1;
            }
        });
        n
    }
}
