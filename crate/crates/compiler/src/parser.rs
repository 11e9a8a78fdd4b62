//! Recursive-descent parser producing the nested-If parse tree.
//!
//! `else if` chains deliberately reproduce the upstream AST shape: each
//! continuation nests inside the previous conditional's then-Block as a
//! wrapper Block, and a trailing `else` lands there too as an untyped block
//! (indistinguishable by node kind from a chain continuation). The
//! normalization pass flattens this; see `normalize.rs`.
//!
//! Expression precedence, loosest to tightest: `if-then-else`, `||`, `&&`,
//! equality, relational, range construction and `by`/`align`/`#`, `|`, `^`,
//! `&`, shifts, additive, multiplicative, unary minus, `**`, postfix
//! call/index.

use crate::ast::{AstNode, Attrs, NodeKind, Param};
use crate::lexer::{Token, TokenKind};
use crate::span::{Diagnostic, Span};

pub fn parse(tokens: &[Token]) -> Result<AstNode, Vec<Diagnostic>> {
    let mut p = Parser {
        tokens,
        pos: 0,
        pending_array_domain: None,
    };
    match p.parse_module() {
        Ok(module) => Ok(module),
        Err(d) => Err(vec![d]),
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    /// Domain expression of an array-type annotation, handed from
    /// `parse_type_annotation` back to `parse_var_decl`.
    pending_array_domain: Option<AstNode>,
}

type PResult<T> = Result<T, Diagnostic>;

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn at(&self, kind: TokenKind, text: &str) -> bool {
        self.peek().is(kind, text)
    }

    fn at_kw(&self, kw: &str) -> bool {
        self.at(TokenKind::Keyword, kw)
    }

    fn eat(&mut self, kind: TokenKind, text: &str) -> bool {
        if self.at(kind, text) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, kind: TokenKind, text: &str) -> PResult<Token> {
        if self.at(kind, text) {
            Ok(self.bump())
        } else {
            let got = self.peek();
            Err(Diagnostic::new(
                got.span.clone(),
                format!(
                    "expected `{text}`, found {}",
                    describe(got)
                ),
            ))
        }
    }

    fn expect_identifier(&mut self, what: &str) -> PResult<Token> {
        if self.peek().kind == TokenKind::Identifier {
            Ok(self.bump())
        } else {
            let got = self.peek();
            Err(Diagnostic::new(
                got.span.clone(),
                format!("expected {what}, found {}", describe(got)),
            ))
        }
    }

    fn parse_module(&mut self) -> PResult<AstNode> {
        let span = self
            .tokens
            .first()
            .map(|t| t.span.clone())
            .unwrap_or_else(|| Span::new("<empty>", 1, 1));
        let mut module = AstNode::new(NodeKind::Module, span);
        while self.peek().kind != TokenKind::Eof {
            module.children.push(self.parse_statement()?);
        }
        Ok(module)
    }

    fn parse_statement(&mut self) -> PResult<AstNode> {
        let tok = self.peek().clone();
        match (tok.kind, tok.text.as_str()) {
            (TokenKind::Keyword, "var") | (TokenKind::Keyword, "const") => self.parse_var_decl(),
            (TokenKind::Keyword, "config") => self.parse_config_decl(),
            (TokenKind::Keyword, "proc") | (TokenKind::Keyword, "iter") => self.parse_proc_decl(),
            (TokenKind::Keyword, "if") => self.parse_if_statement(),
            (TokenKind::Keyword, "for") => self.parse_loop(NodeKind::ForLoop),
            (TokenKind::Keyword, "forall") => self.parse_loop(NodeKind::ForallLoop),
            (TokenKind::Keyword, "coforall") => self.parse_loop(NodeKind::CoforallLoop),
            (TokenKind::Keyword, "begin") => self.parse_begin(),
            (TokenKind::Keyword, "cobegin") => self.parse_cobegin(),
            (TokenKind::Keyword, "return") => self.parse_return(),
            (TokenKind::Keyword, "yield") => self.parse_yield(),
            _ => self.parse_expr_or_assign_statement(),
        }
    }

    fn parse_var_decl(&mut self) -> PResult<AstNode> {
        let kw = self.bump(); // var | const
        let name = self.expect_identifier("a variable name")?;
        let mut node = AstNode::new(NodeKind::VarDecl, kw.span.clone());
        node.attrs.decl_kind = Some(kw.text.clone());
        node.attrs.name = Some(name.text.clone());
        if self.eat(TokenKind::Punctuation, ":") {
            self.parse_type_annotation(&mut node.attrs)?;
            if let Some(dom) = self.take_pending_array_domain() {
                node.children.push(dom);
            }
        }
        if self.eat(TokenKind::Operator, "=") {
            node.children.push(self.parse_expr()?);
        }
        if node.attrs.type_name.is_none() && node.children.is_empty() {
            return Err(Diagnostic::new(
                kw.span,
                format!(
                    "declaration of `{}` needs a type annotation or an initializer",
                    name.text
                ),
            ));
        }
        self.expect(TokenKind::Punctuation, ";")?;
        Ok(node)
    }

    /// `ident` or the array form `[domainExpr] elemType`.
    fn parse_type_annotation(&mut self, attrs: &mut Attrs) -> PResult<()> {
        if self.eat(TokenKind::Punctuation, "[") {
            let dom = self.parse_expr()?;
            self.expect(TokenKind::Punctuation, "]")?;
            let elem = self.expect_identifier("an element type")?;
            attrs.type_name = Some("array".to_string());
            attrs.elem_type = Some(elem.text);
            self.pending_array_domain = Some(dom);
            Ok(())
        } else {
            let name = self.expect_identifier("a type name")?;
            attrs.type_name = Some(name.text);
            Ok(())
        }
    }

    fn parse_config_decl(&mut self) -> PResult<AstNode> {
        let kw = self.bump(); // config
        self.expect(TokenKind::Keyword, "const")?;
        let name = self.expect_identifier("a config const name")?;
        let mut node = AstNode::new(NodeKind::ConfigConstDecl, kw.span);
        node.attrs.name = Some(name.text);
        if self.eat(TokenKind::Punctuation, ":") {
            let ty = self.expect_identifier("a type name")?;
            node.attrs.type_name = Some(ty.text);
        }
        self.expect(TokenKind::Operator, "=")?;
        node.children.push(self.parse_expr()?);
        self.expect(TokenKind::Punctuation, ";")?;
        Ok(node)
    }

    fn parse_proc_decl(&mut self) -> PResult<AstNode> {
        let kw = self.bump(); // proc | iter
        let name = self.expect_identifier("a procedure name")?;
        let mut node = AstNode::new(NodeKind::ProcDecl, kw.span);
        node.attrs.name = Some(name.text);
        node.attrs.is_iter = Some(kw.text == "iter");
        self.expect(TokenKind::Punctuation, "(")?;
        let mut params = Vec::new();
        while !self.at(TokenKind::Punctuation, ")") {
            if !params.is_empty() {
                self.expect(TokenKind::Punctuation, ",")?;
            }
            let pname = self.expect_identifier("a parameter name")?;
            self.expect(TokenKind::Punctuation, ":")?;
            let ptype = self.expect_identifier("a parameter type")?;
            params.push(Param {
                name: pname.text,
                type_name: ptype.text,
            });
        }
        self.expect(TokenKind::Punctuation, ")")?;
        node.attrs.params = Some(params);
        if self.eat(TokenKind::Punctuation, ":") {
            let ret = self.expect_identifier("a return type")?;
            node.attrs.return_type = Some(ret.text);
        }
        let body = self.parse_block()?;
        node.children.push(body);
        Ok(node)
    }

    fn parse_block(&mut self) -> PResult<AstNode> {
        let open = self.expect(TokenKind::Punctuation, "{")?;
        let mut block = AstNode::new(NodeKind::Block, open.span);
        while !self.at(TokenKind::Punctuation, "}") {
            if self.peek().kind == TokenKind::Eof {
                return Err(Diagnostic::new(block.span.clone(), "unclosed block"));
            }
            block.children.push(self.parse_statement()?);
        }
        self.expect(TokenKind::Punctuation, "}")?;
        Ok(block)
    }

    /// Builds the nested form: each `else if` becomes a wrapper Block inside
    /// the previous then-Block, holding the continuation `If`; a final `else`
    /// becomes a wrapper Block holding the else statements.
    fn parse_if_statement(&mut self) -> PResult<AstNode> {
        let kw = self.expect(TokenKind::Keyword, "if")?;
        let cond = self.parse_expr()?;
        let mut then_block = self.parse_block()?;
        if self.at_kw("else") {
            let else_kw = self.bump();
            let mut wrapper = AstNode::new(NodeKind::Block, else_kw.span);
            if self.at_kw("if") {
                wrapper.children.push(self.parse_if_statement()?);
            } else {
                let else_block = self.parse_block()?;
                wrapper.children = else_block.children;
            }
            then_block.children.push(wrapper);
        }
        Ok(AstNode::new(NodeKind::If, kw.span).with_children(vec![cond, then_block]))
    }

    fn parse_loop(&mut self, kind: NodeKind) -> PResult<AstNode> {
        let kw = self.bump(); // for | forall | coforall
        let mut node = AstNode::new(kind, kw.span);
        let mut index_names = Vec::new();
        if self.eat(TokenKind::Punctuation, "(") {
            loop {
                let name = self.expect_identifier("a loop index name")?;
                index_names.push(name.text);
                if !self.eat(TokenKind::Punctuation, ",") {
                    break;
                }
            }
            self.expect(TokenKind::Punctuation, ")")?;
        } else {
            let name = self.expect_identifier("a loop index name")?;
            index_names.push(name.text);
        }
        node.attrs.name = Some(index_names[0].clone());
        node.attrs.index_names = Some(index_names);
        self.expect(TokenKind::Keyword, "in")?;
        let iterable = if self.at_kw("zip") {
            let zip_kw = self.bump();
            self.expect(TokenKind::Punctuation, "(")?;
            let mut call = AstNode::new(NodeKind::CallExpr, zip_kw.span);
            call.attrs.name = Some("zip".to_string());
            loop {
                call.children.push(self.parse_expr()?);
                if !self.eat(TokenKind::Punctuation, ",") {
                    break;
                }
            }
            self.expect(TokenKind::Punctuation, ")")?;
            node.attrs.zip_arity = Some(call.children.len());
            call
        } else {
            self.parse_expr()?
        };
        node.children.push(iterable);
        node.children.push(self.parse_block()?);
        Ok(node)
    }

    fn parse_begin(&mut self) -> PResult<AstNode> {
        let kw = self.bump();
        let mut node = AstNode::new(NodeKind::BeginStmt, kw.span.clone());
        let block = if self.at(TokenKind::Punctuation, "{") {
            self.parse_block()?
        } else {
            // `begin stmt;` sugar: a one-statement block
            let stmt = self.parse_statement()?;
            AstNode::new(NodeKind::Block, kw.span).with_children(vec![stmt])
        };
        node.children.push(block);
        Ok(node)
    }

    fn parse_cobegin(&mut self) -> PResult<AstNode> {
        let kw = self.bump();
        let mut node = AstNode::new(NodeKind::CobeginStmt, kw.span);
        node.children.push(self.parse_block()?);
        Ok(node)
    }

    fn parse_return(&mut self) -> PResult<AstNode> {
        let kw = self.bump();
        let mut node = AstNode::new(NodeKind::ReturnStmt, kw.span);
        if !self.at(TokenKind::Punctuation, ";") {
            node.children.push(self.parse_expr()?);
        }
        self.expect(TokenKind::Punctuation, ";")?;
        Ok(node)
    }

    fn parse_yield(&mut self) -> PResult<AstNode> {
        let kw = self.bump();
        let mut node = AstNode::new(NodeKind::YieldStmt, kw.span);
        node.children.push(self.parse_expr()?);
        self.expect(TokenKind::Punctuation, ";")?;
        Ok(node)
    }

    fn parse_expr_or_assign_statement(&mut self) -> PResult<AstNode> {
        let lhs = self.parse_expr()?;
        let next = self.peek().clone();
        if next.kind == TokenKind::Operator
            && matches!(next.text.as_str(), "=" | "+=" | "-=" | "*=" | "/=" | "<=>")
        {
            self.bump();
            let rhs = self.parse_expr()?;
            self.expect(TokenKind::Punctuation, ";")?;
            let mut node = AstNode::new(NodeKind::AssignStmt, lhs.span.clone());
            node.attrs.op = Some(next.text);
            node.children = vec![lhs, rhs];
            Ok(node)
        } else {
            self.expect(TokenKind::Punctuation, ";")?;
            match lhs.kind {
                NodeKind::CallExpr | NodeKind::InlineCxxCall => Ok(lhs),
                _ => Err(Diagnostic::new(
                    lhs.span,
                    "only call expressions may stand alone as statements",
                )),
            }
        }
    }

    // ---- expressions ----

    fn parse_expr(&mut self) -> PResult<AstNode> {
        if self.at_kw("if") {
            let kw = self.bump();
            let cond = self.parse_expr_or()?;
            self.expect(TokenKind::Keyword, "then")?;
            let then_e = self.parse_expr()?;
            self.expect(TokenKind::Keyword, "else")?;
            let else_e = self.parse_expr()?;
            return Ok(
                AstNode::new(NodeKind::TernaryExpr, kw.span).with_children(vec![
                    cond, then_e, else_e,
                ]),
            );
        }
        self.parse_expr_or()
    }

    fn binary(op: Token, lhs: AstNode, rhs: AstNode) -> AstNode {
        let mut node = AstNode::new(NodeKind::BinaryExpr, lhs.span.clone());
        node.attrs.op = Some(op.text);
        node.children = vec![lhs, rhs];
        node
    }

    fn parse_left_assoc(
        &mut self,
        ops: &[&str],
        next: fn(&mut Self) -> PResult<AstNode>,
    ) -> PResult<AstNode> {
        let mut lhs = next(self)?;
        while self.peek().kind == TokenKind::Operator
            && ops.contains(&self.peek().text.as_str())
        {
            let op = self.bump();
            let rhs = next(self)?;
            lhs = Self::binary(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn parse_expr_or(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["||"], Self::parse_expr_and)
    }

    fn parse_expr_and(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["&&"], Self::parse_equality)
    }

    fn parse_equality(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["==", "!="], Self::parse_relational)
    }

    fn parse_relational(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["<", "<=", ">", ">="], Self::parse_range)
    }

    /// `lo..hi`, `lo..`, `..hi`, `..`, and the `by`/`align`/`#` suffixes,
    /// which also apply to non-literal range expressions.
    fn parse_range(&mut self) -> PResult<AstNode> {
        let mut node = if self.at(TokenKind::Operator, "..") {
            let dots = self.bump();
            let mut range = AstNode::new(NodeKind::RangeLiteral, dots.span);
            if self.starts_expression() {
                range.children.push(self.parse_bitor()?);
                range.attrs.bounds = Some("high".to_string());
            } else {
                range.attrs.bounds = Some("none".to_string());
            }
            range
        } else {
            let low = self.parse_bitor()?;
            if self.at(TokenKind::Operator, "..") {
                self.bump();
                let mut range = AstNode::new(NodeKind::RangeLiteral, low.span.clone());
                if self.starts_expression() {
                    let high = self.parse_bitor()?;
                    range.attrs.bounds = Some("bounded".to_string());
                    range.children = vec![low, high];
                } else {
                    range.attrs.bounds = Some("low".to_string());
                    range.children = vec![low];
                }
                range
            } else {
                low
            }
        };
        loop {
            if self.at_kw("by") || self.at_kw("align") {
                let op = self.bump();
                let arg = self.parse_bitor()?;
                node = Self::binary(op, node, arg);
            } else if self.at(TokenKind::Operator, "#") {
                let op = self.bump();
                let arg = self.parse_bitor()?;
                node = Self::binary(op, node, arg);
            } else {
                return Ok(node);
            }
        }
    }

    /// Whether the current token can begin an expression operand; used to
    /// decide if a `..` has an upper bound.
    fn starts_expression(&self) -> bool {
        let t = self.peek();
        match t.kind {
            TokenKind::IntegerLiteral
            | TokenKind::RealLiteral
            | TokenKind::StringLiteral
            | TokenKind::Identifier => true,
            TokenKind::Keyword => matches!(t.text.as_str(), "true" | "false" | "nil" | "if"),
            TokenKind::Punctuation => t.text == "(",
            TokenKind::Operator => t.text == "-",
            TokenKind::Eof => false,
        }
    }

    fn parse_bitor(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["|"], Self::parse_bitxor)
    }

    fn parse_bitxor(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["^"], Self::parse_bitand)
    }

    fn parse_bitand(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["&"], Self::parse_shift)
    }

    fn parse_shift(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["<<", ">>"], Self::parse_additive)
    }

    fn parse_additive(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["+", "-"], Self::parse_multiplicative)
    }

    fn parse_multiplicative(&mut self) -> PResult<AstNode> {
        self.parse_left_assoc(&["*", "/", "%"], Self::parse_unary)
    }

    fn parse_unary(&mut self) -> PResult<AstNode> {
        if self.at(TokenKind::Operator, "-") {
            let minus = self.bump();
            let operand = self.parse_unary()?;
            if operand.kind == NodeKind::Literal
                && matches!(operand.attrs.lit_kind.as_deref(), Some("int" | "real"))
                && operand.attrs.parenthesized.is_none()
            {
                let mut lit = operand;
                lit.span = minus.span;
                lit.attrs.value = Some(format!("-{}", lit.attrs.value.take().unwrap()));
                return Ok(lit);
            }
            return Err(Diagnostic::new(
                minus.span,
                "unary minus is only supported on numeric literals; write `0 - expr` instead",
            ));
        }
        self.parse_power()
    }

    fn parse_power(&mut self) -> PResult<AstNode> {
        let base = self.parse_postfix()?;
        if self.at(TokenKind::Operator, "**") {
            let op = self.bump();
            // right-associative
            let exp = self.parse_unary()?;
            return Ok(Self::binary(op, base, exp));
        }
        Ok(base)
    }

    fn parse_postfix(&mut self) -> PResult<AstNode> {
        let mut node = self.parse_primary()?;
        loop {
            if self.at(TokenKind::Punctuation, "(") && node.kind == NodeKind::Identifier {
                self.bump();
                let name = node.attrs.name.clone().unwrap();
                let mut args = Vec::new();
                while !self.at(TokenKind::Punctuation, ")") {
                    if !args.is_empty() {
                        self.expect(TokenKind::Punctuation, ",")?;
                    }
                    args.push(self.parse_expr()?);
                }
                self.expect(TokenKind::Punctuation, ")")?;
                if name == "inlinecxx" {
                    node = self.make_inlinecxx(node.span, args)?;
                } else {
                    let mut call = AstNode::new(NodeKind::CallExpr, node.span);
                    call.attrs.name = Some(name);
                    call.children = args;
                    node = call;
                }
            } else if self.at(TokenKind::Punctuation, "[") {
                self.bump();
                let mut index = AstNode::new(NodeKind::IndexExpr, node.span.clone());
                index.children.push(node);
                loop {
                    index.children.push(self.parse_expr()?);
                    if !self.eat(TokenKind::Punctuation, ",") {
                        break;
                    }
                }
                self.expect(TokenKind::Punctuation, "]")?;
                node = index;
            } else {
                return Ok(node);
            }
        }
    }

    fn make_inlinecxx(&self, span: Span, mut args: Vec<AstNode>) -> PResult<AstNode> {
        if args.is_empty()
            || args[0].kind != NodeKind::Literal
            || args[0].attrs.lit_kind.as_deref() != Some("string")
        {
            return Err(Diagnostic::new(
                span,
                "inlinecxx requires a string literal as its first argument",
            ));
        }
        let format = args.remove(0);
        let mut node = AstNode::new(NodeKind::InlineCxxCall, span);
        node.attrs.value = format.attrs.value;
        node.children = args;
        Ok(node)
    }

    fn parse_primary(&mut self) -> PResult<AstNode> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::IntegerLiteral | TokenKind::RealLiteral | TokenKind::StringLiteral => {
                self.bump();
                let mut lit = AstNode::new(NodeKind::Literal, tok.span);
                lit.attrs.lit_kind = Some(
                    match tok.kind {
                        TokenKind::IntegerLiteral => "int",
                        TokenKind::RealLiteral => "real",
                        _ => "string",
                    }
                    .to_string(),
                );
                lit.attrs.value = Some(tok.text);
                Ok(lit)
            }
            TokenKind::Keyword if matches!(tok.text.as_str(), "true" | "false" | "nil") => {
                self.bump();
                let mut lit = AstNode::new(NodeKind::Literal, tok.span);
                lit.attrs.lit_kind = Some(if tok.text == "nil" { "nil" } else { "bool" }.into());
                lit.attrs.value = Some(tok.text);
                Ok(lit)
            }
            TokenKind::Identifier => {
                self.bump();
                let mut id = AstNode::new(NodeKind::Identifier, tok.span);
                id.attrs.name = Some(tok.text);
                Ok(id)
            }
            TokenKind::Punctuation if tok.text == "(" => {
                self.bump();
                let first = self.parse_expr()?;
                if self.at(TokenKind::Punctuation, ",") {
                    let mut tuple = AstNode::new(NodeKind::TupleExpr, tok.span);
                    tuple.children.push(first);
                    while self.eat(TokenKind::Punctuation, ",") {
                        tuple.children.push(self.parse_expr()?);
                    }
                    self.expect(TokenKind::Punctuation, ")")?;
                    Ok(tuple)
                } else {
                    self.expect(TokenKind::Punctuation, ")")?;
                    let mut inner = first;
                    inner.attrs.parenthesized = Some(true);
                    Ok(inner)
                }
            }
            _ => Err(Diagnostic::new(
                tok.span.clone(),
                format!(
                    "expected an expression (literal, identifier, or `(`), found {}",
                    describe(&tok)
                ),
            )),
        }
    }
}

// The array-type annotation needs to pass its domain expression from
// `parse_type_annotation` back to `parse_var_decl`; a field keeps the
// signature simple.
impl<'a> Parser<'a> {
    fn take_pending_array_domain(&mut self) -> Option<AstNode> {
        self.pending_array_domain.take()
    }
}

fn describe(t: &Token) -> String {
    match t.kind {
        TokenKind::Eof => "end of input".to_string(),
        _ => format!("`{}`", t.text),
    }
}
