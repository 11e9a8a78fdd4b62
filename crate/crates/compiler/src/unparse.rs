//! Chapel pretty-printer for parse trees, used to check grammar coverage:
//! parsing the unparsed text must give back the same token stream.
//!
//! Handles both the nested-If form and the normalized ConditionalChain form,
//! reconstructing `else if` chains from either shape.

use crate::ast::{AstNode, NodeKind};
use crate::normalize::chain_parts;

pub fn unparse(node: &AstNode) -> String {
    let mut out = String::new();
    match node.kind {
        NodeKind::Module => {
            for stmt in &node.children {
                unparse_stmt(stmt, 0, &mut out);
            }
        }
        _ => unparse_stmt(node, 0, &mut out),
    }
    out
}

fn indent(depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("    ");
    }
}

fn unparse_block_children(children: &[AstNode], depth: usize, out: &mut String) {
    for stmt in children {
        unparse_stmt(stmt, depth, out);
    }
}

fn unparse_stmt(node: &AstNode, depth: usize, out: &mut String) {
    indent(depth, out);
    match node.kind {
        NodeKind::VarDecl => {
            let kw = node.attrs.decl_kind.as_deref().unwrap_or("var");
            out.push_str(kw);
            out.push(' ');
            out.push_str(node.attrs.name.as_deref().unwrap());
            let mut children = node.children.iter();
            if let Some(ty) = node.attrs.type_name.as_deref() {
                if ty == "array" {
                    let dom = children.next().expect("array domain");
                    out.push_str(" : [");
                    out.push_str(&expr(dom));
                    out.push_str("] ");
                    out.push_str(node.attrs.elem_type.as_deref().unwrap());
                } else {
                    out.push_str(" : ");
                    out.push_str(ty);
                }
            }
            if let Some(init) = children.next() {
                out.push_str(" = ");
                out.push_str(&expr(init));
            }
            out.push_str(";\n");
        }
        NodeKind::ConfigConstDecl => {
            out.push_str("config const ");
            out.push_str(node.attrs.name.as_deref().unwrap());
            if let Some(ty) = node.attrs.type_name.as_deref() {
                out.push_str(" : ");
                out.push_str(ty);
            }
            out.push_str(" = ");
            out.push_str(&expr(&node.children[0]));
            out.push_str(";\n");
        }
        NodeKind::ProcDecl => {
            out.push_str(if node.attrs.is_iter == Some(true) {
                "iter "
            } else {
                "proc "
            });
            out.push_str(node.attrs.name.as_deref().unwrap());
            out.push('(');
            let params = node.attrs.params.as_deref().unwrap_or(&[]);
            for (k, p) in params.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                out.push_str(&p.name);
                out.push_str(" : ");
                out.push_str(&p.type_name);
            }
            out.push(')');
            if let Some(ret) = node.attrs.return_type.as_deref() {
                out.push_str(" : ");
                out.push_str(ret);
            }
            out.push_str(" {\n");
            unparse_block_children(&node.children[0].children, depth + 1, out);
            indent(depth, out);
            out.push_str("}\n");
        }
        NodeKind::If => {
            unparse_nested_if(node, depth, out);
        }
        NodeKind::ConditionalChain => {
            let parts = chain_parts(node);
            for (k, (cond, body)) in parts.clauses.iter().enumerate() {
                if k > 0 {
                    out.push_str(" else ");
                }
                out.push_str("if ");
                out.push_str(&expr(cond));
                out.push_str(" {\n");
                unparse_block_children(&body.children, depth + 1, out);
                indent(depth, out);
                out.push('}');
            }
            if let Some(else_body) = parts.else_body {
                out.push_str(" else {\n");
                unparse_block_children(&else_body.children, depth + 1, out);
                indent(depth, out);
                out.push('}');
            }
            out.push('\n');
        }
        NodeKind::ForLoop | NodeKind::ForallLoop | NodeKind::CoforallLoop => {
            out.push_str(match node.kind {
                NodeKind::ForLoop => "for ",
                NodeKind::ForallLoop => "forall ",
                _ => "coforall ",
            });
            let names = node.attrs.index_names.as_deref().unwrap();
            if names.len() > 1 {
                out.push('(');
                out.push_str(&names.join(", "));
                out.push(')');
            } else {
                out.push_str(&names[0]);
            }
            out.push_str(" in ");
            out.push_str(&expr(&node.children[0]));
            out.push_str(" {\n");
            unparse_block_children(&node.children[1].children, depth + 1, out);
            indent(depth, out);
            out.push_str("}\n");
        }
        NodeKind::BeginStmt => {
            out.push_str("begin {\n");
            unparse_block_children(&node.children[0].children, depth + 1, out);
            indent(depth, out);
            out.push_str("}\n");
        }
        NodeKind::CobeginStmt => {
            out.push_str("cobegin {\n");
            unparse_block_children(&node.children[0].children, depth + 1, out);
            indent(depth, out);
            out.push_str("}\n");
        }
        NodeKind::AssignStmt => {
            out.push_str(&expr(&node.children[0]));
            out.push(' ');
            out.push_str(node.attrs.op.as_deref().unwrap());
            out.push(' ');
            out.push_str(&expr(&node.children[1]));
            out.push_str(";\n");
        }
        NodeKind::ReturnStmt => {
            out.push_str("return");
            if let Some(e) = node.children.first() {
                out.push(' ');
                out.push_str(&expr(e));
            }
            out.push_str(";\n");
        }
        NodeKind::YieldStmt => {
            out.push_str("yield ");
            out.push_str(&expr(&node.children[0]));
            out.push_str(";\n");
        }
        NodeKind::CallExpr | NodeKind::InlineCxxCall => {
            out.push_str(&expr(node));
            out.push_str(";\n");
        }
        NodeKind::Block => {
            // wrapper blocks only occur inside If, handled there
            unparse_block_children(&node.children, depth, out);
        }
        _ => {
            out.push_str(&expr(node));
            out.push('\n');
        }
    }
}

/// Reconstructs `if/else if/else` text from the nested pathology: a trailing
/// wrapper Block inside the then-Block is the continuation or else body.
fn unparse_nested_if(node: &AstNode, depth: usize, out: &mut String) {
    out.push_str("if ");
    out.push_str(&expr(&node.children[0]));
    out.push_str(" {\n");
    let body = &node.children[1];
    let (stmts, tail) = match body.children.split_last() {
        Some((last, rest)) if last.kind == NodeKind::Block => (rest, Some(last)),
        _ => (&body.children[..], None),
    };
    unparse_block_children(stmts, depth + 1, out);
    indent(depth, out);
    out.push('}');
    if let Some(wrapper) = tail {
        let continuation =
            wrapper.children.len() == 1 && wrapper.children[0].kind == NodeKind::If;
        if continuation {
            out.push_str(" else ");
            let mut rest = String::new();
            unparse_nested_if(&wrapper.children[0], depth, &mut rest);
            out.push_str(rest.trim_start_matches(' '));
            return;
        }
        out.push_str(" else {\n");
        unparse_block_children(&wrapper.children, depth + 1, out);
        indent(depth, out);
        out.push('}');
    }
    out.push('\n');
}

pub fn expr(node: &AstNode) -> String {
    let text = expr_inner(node);
    if node.attrs.parenthesized == Some(true) {
        format!("({text})")
    } else {
        text
    }
}

fn expr_inner(node: &AstNode) -> String {
    match node.kind {
        NodeKind::Literal => match node.attrs.lit_kind.as_deref() {
            Some("string") => format!("\"{}\"", escape(node.attrs.value.as_deref().unwrap())),
            _ => node.attrs.value.clone().unwrap(),
        },
        NodeKind::Identifier => node.attrs.name.clone().unwrap(),
        NodeKind::BinaryExpr => {
            let op = node.attrs.op.as_deref().unwrap();
            format!(
                "{} {} {}",
                expr(&node.children[0]),
                op,
                expr(&node.children[1])
            )
        }
        NodeKind::TernaryExpr => format!(
            "if {} then {} else {}",
            expr(&node.children[0]),
            expr(&node.children[1]),
            expr(&node.children[2])
        ),
        NodeKind::RangeLiteral => match node.attrs.bounds.as_deref() {
            Some("bounded") => format!("{}..{}", expr(&node.children[0]), expr(&node.children[1])),
            Some("low") => format!("{}..", expr(&node.children[0])),
            Some("high") => format!("..{}", expr(&node.children[0])),
            _ => "..".to_string(),
        },
        NodeKind::TupleExpr => {
            let parts: Vec<String> = node.children.iter().map(expr).collect();
            format!("({})", parts.join(", "))
        }
        NodeKind::IndexExpr => {
            let idxs: Vec<String> = node.children[1..].iter().map(expr).collect();
            format!("{}[{}]", expr(&node.children[0]), idxs.join(", "))
        }
        NodeKind::CallExpr => {
            let args: Vec<String> = node.children.iter().map(expr).collect();
            format!("{}({})", node.attrs.name.as_deref().unwrap(), args.join(", "))
        }
        NodeKind::InlineCxxCall => {
            let mut args = vec![format!(
                "\"{}\"",
                escape(node.attrs.value.as_deref().unwrap())
            )];
            args.extend(node.children.iter().map(expr));
            format!("inlinecxx({})", args.join(", "))
        }
        _ => panic!("not an expression node: {:?}", node.kind),
    }
}

fn escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => vec!['\\', '"'],
            '\\' => vec!['\\', '\\'],
            '\n' => vec!['\\', 'n'],
            '\t' => vec!['\\', 't'],
            c => vec![c],
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexer::{tokenize, TokenKind};
    use crate::normalize::normalize_conditionals;
    use crate::parser::parse;

    fn token_texts(src: &str) -> Vec<(TokenKind, String)> {
        tokenize(src, "t.chpl")
            .unwrap()
            .into_iter()
            .map(|t| (t.kind, t.text))
            .collect()
    }

    fn round_trips(src: &str) {
        let ast = parse(&tokenize(src, "t.chpl").unwrap()).unwrap();
        let printed = unparse(&ast);
        assert_eq!(token_texts(src), token_texts(&printed), "{printed}");
    }

    #[test]
    fn declarations_and_assignments() {
        round_trips("var a : int = 1 + 1;\na = a + 1;\n");
        round_trips("const q = 3.0;\nconfig const n : int = 100;\n");
        round_trips("var u : [0..9] real;\n");
    }

    #[test]
    fn loops_and_ranges() {
        round_trips("for i in 1..n - 1 by 2 { a[i] = i; }\n");
        round_trips("forall i in 0..9 align 1 { f(i); }\n");
        round_trips("coforall t in 0..tasks - 1 { g(t); }\n");
        round_trips("forall (x, y) in zip(a, 1..10) { h(x, y); }\n");
    }

    #[test]
    fn conditionals_nested_and_normalized_print_identically() {
        let src = "if a { f(1); } else if b { f(2); } else { f(3); }\n";
        round_trips(src);
        let normalized =
            normalize_conditionals(parse(&tokenize(src, "t.chpl").unwrap()).unwrap());
        assert_eq!(token_texts(src), token_texts(&unparse(&normalized)));
    }

    #[test]
    fn procs_tasks_and_exprs() {
        round_trips("proc f(x : int, y : real) : real { return x * y; }\n");
        round_trips("iter firstn(n : int) : int { yield 1; }\n");
        round_trips("begin { f(); }\ncobegin { f(); g(); }\n");
        round_trips("var m = if c then 1 else 2;\nvar t = (1, 2.5);\n");
        round_trips("var z = (a + b) * c ** 2;\n");
        round_trips("inlinecxx(\"std::cout << {} << std::endl\", i);\n");
        round_trips("x = (y >> 7) & 144115188075855871;\n");
        round_trips("a <=> b;\n");
    }
}
