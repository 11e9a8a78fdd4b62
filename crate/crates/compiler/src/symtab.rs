//! Pass 1: the program symbol table, a tree of per-scope tables queryable by
//! the line on which each scope opens.
//!
//! The module scope is seeded with the builtin type names, the template
//! symbol `?`, the operators, and the builtin procedures. Loops, conditional
//! clauses, and task blocks each get a scope named `{kind}_{filestem}_{line}`
//! and are entered into their parent scope under that name, mirroring the
//! "loops are a special class of functions" treatment.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::ast::{AstNode, NodeKind};
use crate::normalize::chain_parts;
use crate::span::{Diagnostic, Span};

pub const BUILTIN_TYPES: &[&str] = &[
    "nil", "bool", "string", "int", "real", "complex", "tuple", "range", "domain", "function",
];

pub const BUILTIN_OPERATORS: &[&str] = &[
    "+", "-", "*", "/", "%", "**", "==", "!=", "<", "<=", ">", ">=", "&&", "||", "&", "|", "^",
    "<<", ">>", "..", "by", "align", "#", "<=>", "if-then-else",
];

/// Builtin procedures callable from any scope. `writeln` and `atomicXor` are
/// additions beyond the seeded set: every benchmark prints, and the xor
/// update benchmark needs a single-element atomic update.
pub const BUILTIN_PROCS: &[&str] = &["inlinecxx", "writeln", "atomicXor"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SymbolKind {
    Variable,
    ConfigConst,
    Function,
    LoopScope,
    ConditionalScope,
    BuiltinType,
    BuiltinOperator,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Symbol {
    pub name: String,
    pub kind: SymbolKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub declared_type: Option<String>,
    pub decl_span: Span,
}

pub type ScopeId = usize;

#[derive(Debug, Clone, Serialize)]
pub struct ScopeSymbolTable {
    pub id: ScopeId,
    pub scope_name: String,
    pub opening_span: Span,
    pub parent: Option<ScopeId>,
    pub children: Vec<ScopeId>,
    pub symbols: BTreeMap<String, Symbol>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProgramSymbolTable {
    pub scopes: Vec<ScopeSymbolTable>,
    pub root: ScopeId,
    #[serde(skip)]
    line_index: HashMap<(String, u32), ScopeId>,
    #[serde(skip)]
    pos_index: HashMap<(String, u32, u32), ScopeId>,
}

impl ProgramSymbolTable {
    pub fn scope(&self, id: ScopeId) -> &ScopeSymbolTable {
        &self.scopes[id]
    }

    /// Scope opening at `line`; the outermost one if several open there.
    pub fn lookup_scope_by_line(&self, file: &str, line: u32) -> Option<ScopeId> {
        self.line_index.get(&(file.to_string(), line)).copied()
    }

    /// Column-disambiguated variant for lines opening several scopes.
    pub fn lookup_scope_at(&self, file: &str, line: u32, column: u32) -> Option<ScopeId> {
        self.pos_index
            .get(&(file.to_string(), line, column))
            .copied()
    }

    /// Innermost-out search: the scope itself, then its ancestors.
    pub fn resolve_symbol(&self, scope: ScopeId, name: &str) -> Option<&Symbol> {
        let mut cur = Some(scope);
        while let Some(id) = cur {
            if let Some(sym) = self.scopes[id].symbols.get(name) {
                return Some(sym);
            }
            cur = self.scopes[id].parent;
        }
        None
    }

    /// Pre-order listing of the subtree rooted at `scope`.
    pub fn enumerate_descendants(&self, scope: ScopeId) -> Vec<ScopeId> {
        let mut out = Vec::new();
        let mut stack = vec![scope];
        while let Some(id) = stack.pop() {
            out.push(id);
            for &c in self.scopes[id].children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Child of `scope` opening exactly at `span`; used by the lowering pass
    /// to re-enter the scopes this pass created.
    pub fn child_at(&self, scope: ScopeId, span: &Span) -> Option<ScopeId> {
        self.scopes[scope]
            .children
            .iter()
            .copied()
            .find(|&c| self.scopes[c].opening_span == *span)
    }
}

/// Opening span of clause `idx` of a normalized chain: the chain head for
/// clause 0, the clause's condition for the rest (the `else if` line).
pub fn clause_opening_span(chain: &AstNode, idx: usize) -> Span {
    if idx == 0 {
        chain.span.clone()
    } else {
        chain.children[idx * 2].span.clone()
    }
}

struct Builder {
    table: ProgramSymbolTable,
    diagnostics: Vec<Diagnostic>,
    file_stem: String,
}

pub fn build_program_symbol_table(
    root: &AstNode,
) -> Result<ProgramSymbolTable, Vec<Diagnostic>> {
    assert_eq!(root.kind, NodeKind::Module, "expected a Module root");
    let mut b = Builder {
        table: ProgramSymbolTable {
            scopes: Vec::new(),
            root: 0,
            line_index: HashMap::new(),
            pos_index: HashMap::new(),
        },
        diagnostics: Vec::new(),
        file_stem: root.span.file_stem().to_string(),
    };
    let module_name = format!("module_{}_{}", b.file_stem, root.span.line);
    let root_id = b.new_scope(module_name, root.span.clone(), None);
    b.seed_builtins(root_id);
    for stmt in &root.children {
        b.visit_statement(stmt, root_id);
    }
    if b.diagnostics.is_empty() {
        Ok(b.table)
    } else {
        Err(b.diagnostics)
    }
}

impl Builder {
    fn new_scope(&mut self, name: String, span: Span, parent: Option<ScopeId>) -> ScopeId {
        let id = self.table.scopes.len();
        self.table.scopes.push(ScopeSymbolTable {
            id,
            scope_name: name,
            opening_span: span.clone(),
            parent,
            children: Vec::new(),
            symbols: BTreeMap::new(),
        });
        if let Some(p) = parent {
            self.table.scopes[p].children.push(id);
        }
        // first registration wins, so one line maps to its outermost scope
        self.table
            .line_index
            .entry((span.file.clone(), span.line))
            .or_insert(id);
        self.table
            .pos_index
            .insert((span.file.clone(), span.line, span.column), id);
        id
    }

    fn seed_builtins(&mut self, scope: ScopeId) {
        let mut add = |name: &str, kind: SymbolKind| {
            self.table.scopes[scope].symbols.insert(
                name.to_string(),
                Symbol {
                    name: name.to_string(),
                    kind,
                    declared_type: None,
                    decl_span: Span::builtin(),
                },
            );
        };
        for t in BUILTIN_TYPES {
            add(t, SymbolKind::BuiltinType);
        }
        add("?", SymbolKind::BuiltinType);
        for op in BUILTIN_OPERATORS {
            add(op, SymbolKind::BuiltinOperator);
        }
        for f in BUILTIN_PROCS {
            add(f, SymbolKind::Function);
        }
    }

    fn declare(&mut self, scope: ScopeId, symbol: Symbol) {
        if let Some(existing) = self.table.scopes[scope].symbols.get(&symbol.name) {
            self.diagnostics.push(
                Diagnostic::new(
                    symbol.decl_span.clone(),
                    format!(
                        "duplicate declaration of `{}` in scope `{}`",
                        symbol.name, self.table.scopes[scope].scope_name
                    ),
                )
                .with_related(existing.decl_span.clone()),
            );
            return;
        }
        self.table.scopes[scope]
            .symbols
            .insert(symbol.name.clone(), symbol);
    }

    fn scope_symbol(&mut self, parent: ScopeId, kind: &str, span: &Span) -> (String, ScopeId) {
        let name = format!("{}_{}_{}", kind, self.file_stem, span.line);
        let id = self.new_scope(name.clone(), span.clone(), Some(parent));
        let sym_kind = match kind {
            "if" | "else_if" | "else" => SymbolKind::ConditionalScope,
            _ => SymbolKind::LoopScope,
        };
        self.declare(
            parent,
            Symbol {
                name: name.clone(),
                kind: sym_kind,
                declared_type: None,
                decl_span: span.clone(),
            },
        );
        (name, id)
    }

    fn visit_statement(&mut self, node: &AstNode, scope: ScopeId) {
        match node.kind {
            NodeKind::VarDecl => {
                let declared_type = match node.attrs.type_name.as_deref() {
                    Some("array") => Some(format!(
                        "[] {}",
                        node.attrs.elem_type.as_deref().unwrap_or("?")
                    )),
                    other => other.map(str::to_string),
                };
                self.declare(
                    scope,
                    Symbol {
                        name: node.attrs.name.clone().unwrap(),
                        kind: SymbolKind::Variable,
                        declared_type,
                        decl_span: node.span.clone(),
                    },
                );
            }
            NodeKind::ConfigConstDecl => {
                self.declare(
                    scope,
                    Symbol {
                        name: node.attrs.name.clone().unwrap(),
                        kind: SymbolKind::ConfigConst,
                        declared_type: node.attrs.type_name.clone(),
                        decl_span: node.span.clone(),
                    },
                );
            }
            NodeKind::ProcDecl => {
                let name = node.attrs.name.clone().unwrap();
                self.declare(
                    scope,
                    Symbol {
                        name: name.clone(),
                        kind: SymbolKind::Function,
                        declared_type: node.attrs.return_type.clone(),
                        decl_span: node.span.clone(),
                    },
                );
                let body_scope = self.new_scope(name, node.span.clone(), Some(scope));
                for p in node.attrs.params.as_deref().unwrap_or(&[]) {
                    self.declare(
                        body_scope,
                        Symbol {
                            name: p.name.clone(),
                            kind: SymbolKind::Variable,
                            declared_type: Some(p.type_name.clone()),
                            decl_span: node.span.clone(),
                        },
                    );
                }
                self.visit_block_children(&node.children[0], body_scope);
            }
            NodeKind::ForLoop | NodeKind::ForallLoop | NodeKind::CoforallLoop => {
                let kind = match node.kind {
                    NodeKind::ForLoop => "for",
                    NodeKind::ForallLoop => "forall",
                    _ => "coforall",
                };
                let (_, body_scope) = self.scope_symbol(scope, kind, &node.span);
                for idx_name in node.attrs.index_names.as_deref().unwrap_or(&[]) {
                    self.declare(
                        body_scope,
                        Symbol {
                            name: idx_name.clone(),
                            kind: SymbolKind::Variable,
                            declared_type: None,
                            decl_span: node.span.clone(),
                        },
                    );
                }
                self.visit_block_children(&node.children[1], body_scope);
            }
            NodeKind::ConditionalChain => {
                let parts = chain_parts(node);
                for (i, (_cond, body)) in parts.clauses.iter().enumerate() {
                    let kind = if i == 0 { "if" } else { "else_if" };
                    let span = clause_opening_span(node, i);
                    let (_, clause_scope) = self.scope_symbol(scope, kind, &span);
                    self.visit_block_children(body, clause_scope);
                }
                if let Some(else_body) = parts.else_body {
                    let (_, else_scope) = self.scope_symbol(scope, "else", &else_body.span);
                    self.visit_block_children(else_body, else_scope);
                }
            }
            NodeKind::BeginStmt | NodeKind::CobeginStmt => {
                let kind = if node.kind == NodeKind::BeginStmt {
                    "begin"
                } else {
                    "cobegin"
                };
                let (_, body_scope) = self.scope_symbol(scope, kind, &node.span);
                self.visit_block_children(&node.children[0], body_scope);
            }
            NodeKind::If => {
                panic!("symbol table pass requires a normalized AST (found a nested If)");
            }
            _ => {}
        }
    }

    fn visit_block_children(&mut self, block: &AstNode, scope: ScopeId) {
        for stmt in &block.children {
            self.visit_statement(stmt, scope);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::tokenize;
    use crate::normalize::normalize_conditionals;
    use crate::parser::parse;

    fn table_for(src: &str, file: &str) -> ProgramSymbolTable {
        let ast = normalize_conditionals(parse(&tokenize(src, file).unwrap()).unwrap());
        build_program_symbol_table(&ast).unwrap()
    }

    #[test]
    fn module_scope_holds_decl_plus_builtins() {
        let t = table_for("var a = 1;", "t.chpl");
        let root = t.scope(t.root);
        assert!(root.symbols.contains_key("a"));
        for ty in BUILTIN_TYPES {
            assert_eq!(root.symbols[*ty].kind, SymbolKind::BuiltinType, "{ty}");
        }
        assert!(root.symbols.contains_key("?"));
        assert!(root.symbols.contains_key("inlinecxx"));
        assert_eq!(root.symbols["<=>"].kind, SymbolKind::BuiltinOperator);
        assert_eq!(root.symbols["a"].decl_span.line, 1);
    }

    #[test]
    fn empty_module_has_exactly_one_scope() {
        let t = table_for("", "t.chpl");
        assert_eq!(t.scopes.len(), 1);
    }

    #[test]
    fn loop_scope_names_follow_the_kind_file_line_scheme() {
        let src = "var n = 8;\nforall i in 1..n {\n  var x = i;\n}\n";
        let t = table_for(src, "heat.chpl");
        let id = t.lookup_scope_by_line("heat.chpl", 2).unwrap();
        assert_eq!(t.scope(id).scope_name, "forall_heat_2");
        assert!(t.scope(id).symbols.contains_key("i"));
        assert!(t.scope(id).symbols.contains_key("x"));
        // the loop is entered into its parent like a function
        assert_eq!(
            t.scope(t.root).symbols["forall_heat_2"].kind,
            SymbolKind::LoopScope
        );
    }

    #[test]
    fn clause_declarations_stay_in_their_clause() {
        let src = "var c = true;\nvar d = false;\nif c {\n  var x = 1;\n} else if d {\n}\n";
        let t = table_for(src, "t.chpl");
        let clause1 = t.lookup_scope_by_line("t.chpl", 3).unwrap();
        let clause2 = t.lookup_scope_by_line("t.chpl", 5).unwrap();
        assert_eq!(t.scope(clause1).scope_name, "if_t_3");
        assert_eq!(t.scope(clause2).scope_name, "else_if_t_5");
        assert!(t.resolve_symbol(clause1, "x").is_some());
        assert!(t.resolve_symbol(clause2, "x").is_none());
    }

    #[test]
    fn else_scope_and_chain_scope_count() {
        let src = "var c = true;\nif c {\n} else {\n  var y = 2;\n}\n";
        let t = table_for(src, "t.chpl");
        // module + if clause + else body
        assert_eq!(t.scopes.len(), 3);
        let else_scope = t.lookup_scope_by_line("t.chpl", 3).unwrap();
        assert_eq!(t.scope(else_scope).scope_name, "else_t_3");
        assert!(t.scope(else_scope).symbols.contains_key("y"));
    }

    #[test]
    fn resolution_walks_ancestors_not_siblings() {
        let src = "var a = 1;\nproc f(x : int) : int {\n  return x;\n}\nproc g(y : int) : int {\n  return y;\n}\n";
        let t = table_for(src, "t.chpl");
        let f_scope = t.lookup_scope_by_line("t.chpl", 2).unwrap();
        let g_scope = t.lookup_scope_by_line("t.chpl", 5).unwrap();
        assert!(t.resolve_symbol(f_scope, "a").is_some()); // ancestor
        assert!(t.resolve_symbol(f_scope, "int").is_some()); // builtin
        assert!(t.resolve_symbol(g_scope, "x").is_none()); // sibling's param
        assert!(t.resolve_symbol(t.root, "x").is_none()); // descendant
    }

    #[test]
    fn descendants_enumerate_in_preorder() {
        let src = "var a = 1;\nproc f(x : int) : int {\n  for i in 1..3 {\n  }\n  return x;\n}\nproc g(y : int) : int {\n  return y;\n}\n";
        let t = table_for(src, "t.chpl");
        let all = t.enumerate_descendants(t.root);
        assert_eq!(all, vec![0, 1, 2, 3]); // module, f, f's for, g
        // module file line 1 is the root scope
        assert_eq!(t.lookup_scope_by_line("t.chpl", 1), Some(t.root));
        let f_scope = t.lookup_scope_by_line("t.chpl", 2).unwrap();
        assert_eq!(t.enumerate_descendants(f_scope).len(), 2);
        let leaf = t.lookup_scope_by_line("t.chpl", 3).unwrap();
        assert_eq!(t.enumerate_descendants(leaf), vec![leaf]);
        assert_eq!(t.lookup_scope_by_line("t.chpl", 9), None);
    }

    #[test]
    fn one_line_double_scope_resolves_by_column() {
        let src = "var c = true;\nif c { if c { var z = 1; } }\n";
        let t = table_for(src, "t.chpl");
        // line lookup returns the outermost scope on that line
        let outer = t.lookup_scope_by_line("t.chpl", 2).unwrap();
        assert_eq!(t.scope(outer).scope_name, "if_t_2");
        assert!(t.scope(outer).parent == Some(t.root));
        // the inner scope is reachable via (line, column)
        let inner = t.lookup_scope_at("t.chpl", 2, 8).unwrap();
        assert_ne!(inner, outer);
        assert!(t.scope(inner).symbols.contains_key("z"));
    }

    #[test]
    fn duplicate_declaration_reports_both_spans() {
        let src = "var a = 1;\nvar a = 2;\n";
        let ast = normalize_conditionals(parse(&tokenize(src, "t.chpl").unwrap()).unwrap());
        let errs = build_program_symbol_table(&ast).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].span.line, 2);
        assert_eq!(errs[0].related[0].line, 1);
    }

    #[test]
    fn shadowing_across_scopes_is_permitted() {
        let src = "var a = 1;\nfor i in 1..2 {\n  var a = 2;\n}\n";
        let t = table_for(src, "t.chpl");
        let loop_scope = t.lookup_scope_by_line("t.chpl", 2).unwrap();
        let inner = t.resolve_symbol(loop_scope, "a").unwrap();
        assert_eq!(inner.decl_span.line, 3);
        let outer = t.resolve_symbol(t.root, "a").unwrap();
        assert_eq!(outer.decl_span.line, 1);
    }

    #[test]
    fn scope_count_matches_scope_opening_constructs() {
        let src = "var c = true;\nproc p(v : int) : int {\n  return v;\n}\nfor i in 1..2 {\n  begin {\n    writeln(i);\n  }\n}\nif c {\n} else {\n}\ncobegin {\n  writeln(1);\n}\n";
        let ast = normalize_conditionals(parse(&tokenize(src, "t.chpl").unwrap()).unwrap());
        let t = build_program_symbol_table(&ast).unwrap();
        // module + proc + for + begin + if-clause + else + cobegin
        assert_eq!(t.scopes.len(), 7);
    }
}
