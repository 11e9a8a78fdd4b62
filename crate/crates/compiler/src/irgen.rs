//! Pass 2: lowers the normalized AST plus symbol table into the output
//! program tree. Every identifier is resolved here and embedded alongside
//! the node, so code generation never consults the symbol table.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::ast::{AstNode, NodeKind, Param};
use crate::normalize::chain_parts;
use crate::span::{Diagnostic, Span};
use crate::symtab::{clause_opening_span, ProgramSymbolTable, ScopeId, Symbol};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OutExpr {
    Lit {
        text: String,
        lit_kind: String,
    },
    Ident(String),
    Bin {
        op: String,
        lhs: Box<OutExpr>,
        rhs: Box<OutExpr>,
    },
    Ternary {
        cond: Box<OutExpr>,
        then_expr: Box<OutExpr>,
        else_expr: Box<OutExpr>,
    },
    Range {
        low: Option<Box<OutExpr>>,
        high: Option<Box<OutExpr>>,
    },
    /// `by` / `align` / `#` applied to a range expression.
    RangeOp {
        op: String,
        base: Box<OutExpr>,
        arg: Box<OutExpr>,
    },
    Call {
        name: String,
        args: Vec<OutExpr>,
    },
    Index {
        base: Box<OutExpr>,
        indices: Vec<OutExpr>,
    },
    Tuple(Vec<OutExpr>),
    Paren(Box<OutExpr>),
}

impl OutExpr {
    /// Every identifier referenced, including callee names (except the `zip`
    /// keyword-call).
    pub fn idents<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            OutExpr::Lit { .. } => {}
            OutExpr::Ident(name) => out.push(name),
            OutExpr::Bin { lhs, rhs, .. } => {
                lhs.idents(out);
                rhs.idents(out);
            }
            OutExpr::Ternary {
                cond,
                then_expr,
                else_expr,
            } => {
                cond.idents(out);
                then_expr.idents(out);
                else_expr.idents(out);
            }
            OutExpr::Range { low, high } => {
                if let Some(e) = low {
                    e.idents(out);
                }
                if let Some(e) = high {
                    e.idents(out);
                }
            }
            OutExpr::RangeOp { base, arg, .. } => {
                base.idents(out);
                arg.idents(out);
            }
            OutExpr::Call { name, args } => {
                if name != "zip" {
                    out.push(name);
                }
                for a in args {
                    a.idents(out);
                }
            }
            OutExpr::Index { base, indices } => {
                base.idents(out);
                for i in indices {
                    i.idents(out);
                }
            }
            OutExpr::Tuple(items) => {
                for i in items {
                    i.idents(out);
                }
            }
            OutExpr::Paren(inner) => inner.idents(out),
        }
    }

    fn walk(&self, visit: &mut impl FnMut(&OutExpr)) {
        visit(self);
        match self {
            OutExpr::Lit { .. } | OutExpr::Ident(_) => {}
            OutExpr::Bin { lhs, rhs, .. } => {
                lhs.walk(visit);
                rhs.walk(visit);
            }
            OutExpr::Ternary {
                cond,
                then_expr,
                else_expr,
            } => {
                cond.walk(visit);
                then_expr.walk(visit);
                else_expr.walk(visit);
            }
            OutExpr::Range { low, high } => {
                if let Some(e) = low {
                    e.walk(visit);
                }
                if let Some(e) = high {
                    e.walk(visit);
                }
            }
            OutExpr::RangeOp { base, arg, .. } => {
                base.walk(visit);
                arg.walk(visit);
            }
            OutExpr::Call { args, .. } => {
                for a in args {
                    a.walk(visit);
                }
            }
            OutExpr::Index { base, indices } => {
                base.walk(visit);
                for i in indices {
                    i.walk(visit);
                }
            }
            OutExpr::Tuple(items) => {
                for i in items {
                    i.walk(visit);
                }
            }
            OutExpr::Paren(inner) => inner.walk(visit),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LoopKind {
    For,
    Forall,
    Coforall,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Clause {
    pub cond: OutExpr,
    /// Line of the clause keyword (`if` or `else if`) for provenance.
    pub opening: Span,
    pub body: Vec<OutputNode>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum OutKind {
    Decl {
        name: String,
        /// `var` or `const`.
        decl_kind: String,
        declared_type: Option<String>,
        init: Option<OutExpr>,
    },
    ArrayDecl {
        name: String,
        elem_type: String,
        domain: OutExpr,
    },
    ConfigGet {
        name: String,
        type_name: String,
        default: OutExpr,
    },
    Assign {
        op: String,
        lhs: OutExpr,
        rhs: OutExpr,
    },
    Swap {
        lhs: OutExpr,
        rhs: OutExpr,
    },
    CallStmt {
        expr: OutExpr,
    },
    Writeln {
        args: Vec<OutExpr>,
    },
    Inline {
        format: String,
        args: Vec<OutExpr>,
    },
    Loop {
        kind: LoopKind,
        index_names: Vec<String>,
        iterable: OutExpr,
        body: Vec<OutputNode>,
    },
    Begin {
        body: Vec<OutputNode>,
    },
    Cobegin {
        tasks: Vec<OutputNode>,
    },
    CondChain {
        clauses: Vec<Clause>,
        else_opening: Option<Span>,
        else_body: Option<Vec<OutputNode>>,
    },
    Proc {
        name: String,
        params: Vec<Param>,
        return_type: Option<String>,
        is_iter: bool,
        body: Vec<OutputNode>,
    },
    Return {
        expr: Option<OutExpr>,
    },
    Yield {
        expr: OutExpr,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputNode {
    pub kind: OutKind,
    pub origin: Span,
    pub resolved_symbols: Vec<(String, Symbol)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigConst {
    pub name: String,
    pub type_name: String,
    pub default_text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputProgram {
    pub module_name: String,
    pub source_file: String,
    pub body: Vec<OutputNode>,
    pub config_consts: Vec<ConfigConst>,
    pub used_features: BTreeSet<String>,
}

pub fn lower_program(
    root: &AstNode,
    table: &ProgramSymbolTable,
) -> Result<OutputProgram, Vec<Diagnostic>> {
    assert_eq!(root.kind, NodeKind::Module);
    let mut lowerer = Lowerer {
        table,
        diagnostics: Vec::new(),
        config_consts: Vec::new(),
    };
    let body = lowerer.lower_statements(&root.children, table.root);
    if !lowerer.diagnostics.is_empty() {
        return Err(lowerer.diagnostics);
    }
    let mut program = OutputProgram {
        module_name: root.span.file_stem().to_string(),
        source_file: root.span.file.clone(),
        body,
        config_consts: lowerer.config_consts,
        used_features: BTreeSet::new(),
    };
    program.used_features = compute_used_features(&program.body);
    Ok(program)
}

/// Runtime facilities reachable from a lowered body; `usedFeatures` must
/// equal this exactly.
pub fn compute_used_features(body: &[OutputNode]) -> BTreeSet<String> {
    let mut features = BTreeSet::new();
    walk_nodes(body, &mut |node| {
        let mut exprs: Vec<&OutExpr> = Vec::new();
        match &node.kind {
            OutKind::Decl { init, .. } => exprs.extend(init.iter()),
            OutKind::ArrayDecl { domain, .. } => {
                features.insert("array".to_string());
                features.insert("domain".to_string());
                exprs.push(domain);
            }
            OutKind::ConfigGet { default, .. } => {
                features.insert("config".to_string());
                exprs.push(default);
            }
            OutKind::Assign { lhs, rhs, .. } => exprs.extend([lhs, rhs]),
            OutKind::Swap { lhs, rhs } => exprs.extend([lhs, rhs]),
            OutKind::CallStmt { expr } => exprs.push(expr),
            OutKind::Writeln { args } => {
                features.insert("writeln".to_string());
                exprs.extend(args.iter());
            }
            OutKind::Inline { args, .. } => exprs.extend(args.iter()),
            OutKind::Loop { kind, iterable, .. } => {
                features.insert(
                    match kind {
                        LoopKind::For => "for",
                        LoopKind::Forall => "forall",
                        LoopKind::Coforall => "coforall",
                    }
                    .to_string(),
                );
                exprs.push(iterable);
            }
            OutKind::Begin { .. } => {
                features.insert("begin".to_string());
            }
            OutKind::Cobegin { .. } => {
                features.insert("cobegin".to_string());
            }
            OutKind::CondChain { clauses, .. } => {
                for c in clauses {
                    exprs.push(&c.cond);
                }
            }
            OutKind::Proc { is_iter, .. } => {
                if *is_iter {
                    features.insert("iterator".to_string());
                }
            }
            OutKind::Return { expr } => exprs.extend(expr.iter()),
            OutKind::Yield { expr } => exprs.push(expr),
        }
        for e in exprs {
            e.walk(&mut |sub| match sub {
                OutExpr::Range { .. } | OutExpr::RangeOp { .. } => {
                    features.insert("range".to_string());
                }
                OutExpr::Index { .. } => {
                    features.insert("array".to_string());
                }
                OutExpr::Tuple(_) => {
                    features.insert("tuple".to_string());
                }
                OutExpr::Call { name, .. } => {
                    if name == "zip" {
                        features.insert("zip".to_string());
                    } else if name == "atomicXor" {
                        features.insert("atomic".to_string());
                    } else if name == "writeln" {
                        features.insert("writeln".to_string());
                    }
                }
                _ => {}
            });
        }
    });
    features
}

fn walk_nodes<'a>(body: &'a [OutputNode], visit: &mut impl FnMut(&'a OutputNode)) {
    for node in body {
        visit(node);
        match &node.kind {
            OutKind::Loop { body, .. }
            | OutKind::Begin { body }
            | OutKind::Proc { body, .. } => walk_nodes(body, visit),
            OutKind::Cobegin { tasks } => walk_nodes(tasks, visit),
            OutKind::CondChain {
                clauses, else_body, ..
            } => {
                for c in clauses {
                    walk_nodes(&c.body, visit);
                }
                if let Some(eb) = else_body {
                    walk_nodes(eb, visit);
                }
            }
            _ => {}
        }
    }
}

/// Recheck of the lowered program's own invariants: no dangling identifiers
/// and an exact `usedFeatures` set.
pub fn check_lowered(p: &OutputProgram) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    walk_nodes(&p.body, &mut |node| {
        let mut referenced: Vec<&str> = Vec::new();
        direct_exprs(node, &mut |e| e.idents(&mut referenced));
        referenced.sort_unstable();
        referenced.dedup();
        for name in referenced {
            if !node.resolved_symbols.iter().any(|(n, _)| n == name) {
                diags.push(Diagnostic::new(
                    node.origin.clone(),
                    format!("dangling identifier `{name}` missing from resolvedSymbols"),
                ));
            }
        }
    });
    let expected = compute_used_features(&p.body);
    if p.used_features != expected {
        let missing: Vec<_> = expected.difference(&p.used_features).cloned().collect();
        let extra: Vec<_> = p.used_features.difference(&expected).cloned().collect();
        diags.push(Diagnostic::new(
            Span::new(&p.source_file, 1, 1),
            format!("usedFeatures mismatch: missing {missing:?}, extraneous {extra:?}"),
        ));
    }
    diags
}

/// Applies `f` to each expression directly owned by `node` (not those of
/// nested statements).
fn direct_exprs<'a>(node: &'a OutputNode, f: &mut impl FnMut(&'a OutExpr)) {
    match &node.kind {
        OutKind::Decl { init, .. } => {
            if let Some(e) = init {
                f(e);
            }
        }
        OutKind::ArrayDecl { domain, .. } => f(domain),
        OutKind::ConfigGet { default, .. } => f(default),
        OutKind::Assign { lhs, rhs, .. } | OutKind::Swap { lhs, rhs } => {
            f(lhs);
            f(rhs);
        }
        OutKind::CallStmt { expr } => f(expr),
        OutKind::Writeln { args } | OutKind::Inline { args, .. } => {
            for a in args {
                f(a);
            }
        }
        OutKind::Loop { iterable, .. } => f(iterable),
        OutKind::CondChain { clauses, .. } => {
            for c in clauses {
                f(&c.cond);
            }
        }
        OutKind::Return { expr } => {
            if let Some(e) = expr {
                f(e);
            }
        }
        OutKind::Yield { expr } => f(expr),
        OutKind::Begin { .. } | OutKind::Cobegin { .. } | OutKind::Proc { .. } => {}
    }
}

struct Lowerer<'a> {
    table: &'a ProgramSymbolTable,
    diagnostics: Vec<Diagnostic>,
    config_consts: Vec<ConfigConst>,
}

impl<'a> Lowerer<'a> {
    fn lower_statements(&mut self, stmts: &[AstNode], scope: ScopeId) -> Vec<OutputNode> {
        stmts
            .iter()
            .filter_map(|s| self.lower_statement(s, scope))
            .collect()
    }

    fn child_scope(&mut self, parent: ScopeId, span: &Span, what: &str) -> ScopeId {
        match self.table.child_at(parent, span) {
            Some(id) => id,
            None => {
                // a pass-ordering bug, not a user error; still reported as a
                // diagnostic rather than a crash
                self.diagnostics.push(Diagnostic::new(
                    span.clone(),
                    format!("internal: no scope recorded for {what}"),
                ));
                parent
            }
        }
    }

    fn finish(&mut self, node: &AstNode, kind: OutKind, scope: ScopeId) -> OutputNode {
        let out = OutputNode {
            kind,
            origin: node.span.clone(),
            resolved_symbols: Vec::new(),
        };
        self.resolve_into(out, scope)
    }

    fn resolve_into(&mut self, mut node: OutputNode, scope: ScopeId) -> OutputNode {
        let mut referenced: Vec<&str> = Vec::new();
        direct_exprs(&node, &mut |e| e.idents(&mut referenced));
        let mut resolved: Vec<(String, Symbol)> = Vec::new();
        for name in referenced {
            if resolved.iter().any(|(n, _)| n == name) {
                continue;
            }
            match self.table.resolve_symbol(scope, name) {
                Some(sym) => resolved.push((name.to_string(), sym.clone())),
                None => self.diagnostics.push(Diagnostic::new(
                    node.origin.clone(),
                    format!("unresolved identifier `{name}`"),
                )),
            }
        }
        node.resolved_symbols = resolved;
        node
    }

    fn lower_statement(&mut self, node: &AstNode, scope: ScopeId) -> Option<OutputNode> {
        let kind = match node.kind {
            NodeKind::VarDecl => {
                if node.attrs.type_name.as_deref() == Some("array") {
                    OutKind::ArrayDecl {
                        name: node.attrs.name.clone().unwrap(),
                        elem_type: node.attrs.elem_type.clone().unwrap(),
                        domain: self.lower_expr(&node.children[0]),
                    }
                } else {
                    OutKind::Decl {
                        name: node.attrs.name.clone().unwrap(),
                        decl_kind: node
                            .attrs
                            .decl_kind
                            .clone()
                            .unwrap_or_else(|| "var".to_string()),
                        declared_type: node.attrs.type_name.clone(),
                        init: node.children.first().map(|e| self.lower_expr(e)),
                    }
                }
            }
            NodeKind::ConfigConstDecl => {
                let name = node.attrs.name.clone().unwrap();
                let default = &node.children[0];
                let type_name = match node.attrs.type_name.clone() {
                    Some(t) => t,
                    None => match default.attrs.lit_kind.as_deref() {
                        Some(k) => k.to_string(),
                        None => {
                            self.diagnostics.push(Diagnostic::new(
                                node.span.clone(),
                                format!(
                                    "config const `{name}` needs a type annotation or a literal default"
                                ),
                            ));
                            "int".to_string()
                        }
                    },
                };
                self.config_consts.push(ConfigConst {
                    name: name.clone(),
                    type_name: type_name.clone(),
                    default_text: crate::unparse::expr(default),
                });
                OutKind::ConfigGet {
                    name,
                    type_name,
                    default: self.lower_expr(default),
                }
            }
            NodeKind::ProcDecl => {
                let body_scope = self.child_scope(scope, &node.span, "proc body");
                OutKind::Proc {
                    name: node.attrs.name.clone().unwrap(),
                    params: node.attrs.params.clone().unwrap_or_default(),
                    return_type: node.attrs.return_type.clone(),
                    is_iter: node.attrs.is_iter == Some(true),
                    body: self.lower_statements(&node.children[0].children, body_scope),
                }
            }
            NodeKind::ForLoop | NodeKind::ForallLoop | NodeKind::CoforallLoop => {
                let body_scope = self.child_scope(scope, &node.span, "loop body");
                let kind = match node.kind {
                    NodeKind::ForLoop => LoopKind::For,
                    NodeKind::ForallLoop => LoopKind::Forall,
                    _ => LoopKind::Coforall,
                };
                // the iterable is evaluated in the enclosing scope
                let iterable_node = OutputNode {
                    kind: OutKind::Loop {
                        kind,
                        index_names: node.attrs.index_names.clone().unwrap_or_default(),
                        iterable: self.lower_expr(&node.children[0]),
                        body: self.lower_statements(&node.children[1].children, body_scope),
                    },
                    origin: node.span.clone(),
                    resolved_symbols: Vec::new(),
                };
                return Some(self.resolve_into(iterable_node, scope));
            }
            NodeKind::BeginStmt => {
                let body_scope = self.child_scope(scope, &node.span, "begin block");
                OutKind::Begin {
                    body: self.lower_statements(&node.children[0].children, body_scope),
                }
            }
            NodeKind::CobeginStmt => {
                let body_scope = self.child_scope(scope, &node.span, "cobegin block");
                OutKind::Cobegin {
                    tasks: self.lower_statements(&node.children[0].children, body_scope),
                }
            }
            NodeKind::ConditionalChain => {
                let parts = chain_parts(node);
                let mut clauses = Vec::new();
                for (i, (cond, body)) in parts.clauses.iter().enumerate() {
                    let opening = clause_opening_span(node, i);
                    let clause_scope = self.child_scope(scope, &opening, "conditional clause");
                    clauses.push(Clause {
                        cond: self.lower_expr(cond),
                        opening,
                        body: self.lower_statements(&body.children, clause_scope),
                    });
                }
                let (else_opening, else_body) = match parts.else_body {
                    Some(eb) => {
                        let else_scope = self.child_scope(scope, &eb.span, "else body");
                        (
                            Some(eb.span.clone()),
                            Some(self.lower_statements(&eb.children, else_scope)),
                        )
                    }
                    None => (None, None),
                };
                OutKind::CondChain {
                    clauses,
                    else_opening,
                    else_body,
                }
            }
            NodeKind::AssignStmt => {
                let op = node.attrs.op.clone().unwrap();
                let lhs = self.lower_expr(&node.children[0]);
                let rhs = self.lower_expr(&node.children[1]);
                if op == "<=>" {
                    OutKind::Swap { lhs, rhs }
                } else {
                    OutKind::Assign { op, lhs, rhs }
                }
            }
            NodeKind::ReturnStmt => OutKind::Return {
                expr: node.children.first().map(|e| self.lower_expr(e)),
            },
            NodeKind::YieldStmt => OutKind::Yield {
                expr: self.lower_expr(&node.children[0]),
            },
            NodeKind::CallExpr => {
                if node.attrs.name.as_deref() == Some("writeln") {
                    OutKind::Writeln {
                        args: node.children.iter().map(|a| self.lower_expr(a)).collect(),
                    }
                } else {
                    OutKind::CallStmt {
                        expr: self.lower_expr(node),
                    }
                }
            }
            NodeKind::InlineCxxCall => OutKind::Inline {
                format: node.attrs.value.clone().unwrap(),
                args: node.children.iter().map(|a| self.lower_expr(a)).collect(),
            },
            NodeKind::If => {
                self.diagnostics.push(Diagnostic::new(
                    node.span.clone(),
                    "internal: nested If reached lowering; run normalization first",
                ));
                return None;
            }
            other => {
                self.diagnostics.push(Diagnostic::new(
                    node.span.clone(),
                    format!("unsupported construct in statement position: {other:?}"),
                ));
                return None;
            }
        };
        Some(self.finish(node, kind, scope))
    }

    fn lower_expr(&mut self, node: &AstNode) -> OutExpr {
        let expr = match node.kind {
            NodeKind::Literal => OutExpr::Lit {
                text: node.attrs.value.clone().unwrap(),
                lit_kind: node.attrs.lit_kind.clone().unwrap(),
            },
            NodeKind::Identifier => OutExpr::Ident(node.attrs.name.clone().unwrap()),
            NodeKind::BinaryExpr => {
                let op = node.attrs.op.clone().unwrap();
                if matches!(op.as_str(), "by" | "align" | "#") {
                    OutExpr::RangeOp {
                        op,
                        base: Box::new(self.lower_expr(&node.children[0])),
                        arg: Box::new(self.lower_expr(&node.children[1])),
                    }
                } else {
                    OutExpr::Bin {
                        op,
                        lhs: Box::new(self.lower_expr(&node.children[0])),
                        rhs: Box::new(self.lower_expr(&node.children[1])),
                    }
                }
            }
            NodeKind::TernaryExpr => OutExpr::Ternary {
                cond: Box::new(self.lower_expr(&node.children[0])),
                then_expr: Box::new(self.lower_expr(&node.children[1])),
                else_expr: Box::new(self.lower_expr(&node.children[2])),
            },
            NodeKind::RangeLiteral => {
                let (low, high) = match node.attrs.bounds.as_deref() {
                    Some("bounded") => (
                        Some(Box::new(self.lower_expr(&node.children[0]))),
                        Some(Box::new(self.lower_expr(&node.children[1]))),
                    ),
                    Some("low") => (Some(Box::new(self.lower_expr(&node.children[0]))), None),
                    Some("high") => (None, Some(Box::new(self.lower_expr(&node.children[0])))),
                    _ => (None, None),
                };
                OutExpr::Range { low, high }
            }
            NodeKind::TupleExpr => {
                OutExpr::Tuple(node.children.iter().map(|c| self.lower_expr(c)).collect())
            }
            NodeKind::IndexExpr => OutExpr::Index {
                base: Box::new(self.lower_expr(&node.children[0])),
                indices: node.children[1..]
                    .iter()
                    .map(|c| self.lower_expr(c))
                    .collect(),
            },
            NodeKind::CallExpr => OutExpr::Call {
                name: node.attrs.name.clone().unwrap(),
                args: node.children.iter().map(|c| self.lower_expr(c)).collect(),
            },
            other => {
                self.diagnostics.push(Diagnostic::new(
                    node.span.clone(),
                    format!("unsupported construct in expression position: {other:?}"),
                ));
                OutExpr::Lit {
                    text: "0".to_string(),
                    lit_kind: "int".to_string(),
                }
            }
        };
        if node.attrs.parenthesized == Some(true) {
            OutExpr::Paren(Box::new(expr))
        } else {
            expr
        }
    }
}

/// Count of lowered statement nodes, for the statement-preservation check.
pub fn count_output_nodes(body: &[OutputNode]) -> usize {
    let mut n = 0;
    walk_nodes(body, &mut |_| n += 1);
    n
}
