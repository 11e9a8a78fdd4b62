//! Flattens the nested conditional parse shape into `ConditionalChain`.
//!
//! The parser stores `if / else if / ... / else` the way the upstream AST
//! does: continuations and else bodies hide inside the previous then-Block as
//! a trailing wrapper Block. This pass rewrites every maximal chain into one
//! node holding a clause list plus an optional else body, removing the
//! wrapper Blocks.
//!
//! Disambiguation: a trailing wrapper whose sole statement is a conditional
//! is treated as a chain continuation (`else if`); anything else is an else
//! body. An `else { if c {} }` written by the user therefore normalizes to
//! `else if c {}` — the two are semantically identical, which is exactly why
//! the nested shape cannot distinguish them.

use crate::ast::{AstNode, NodeKind};

pub fn normalize_conditionals(mut root: AstNode) -> AstNode {
    normalize_in_place(&mut root);
    root
}

fn normalize_in_place(node: &mut AstNode) {
    for child in &mut node.children {
        normalize_in_place(child);
    }
    if node.kind == NodeKind::If {
        let placeholder = AstNode::new(NodeKind::Module, node.span.clone());
        let taken = std::mem::replace(node, placeholder);
        *node = flatten_if(taken);
    }
}

/// `if_node`'s children are already normalized, so a chain continuation
/// inside the wrapper Block has itself become a ConditionalChain; flattening
/// just splices its clauses after this head clause.
fn flatten_if(mut if_node: AstNode) -> AstNode {
    debug_assert_eq!(if_node.children.len(), 2);
    let mut body = if_node.children.pop().unwrap();
    let cond = if_node.children.pop().unwrap();

    let mut chain = AstNode::new(NodeKind::ConditionalChain, if_node.span);
    chain.attrs.has_else = Some(false);

    let tail = match body.children.last() {
        Some(last) if last.kind == NodeKind::Block => body.children.pop(),
        _ => None,
    };
    chain.children.push(cond);
    chain.children.push(body);

    if let Some(mut wrapper) = tail {
        let is_continuation =
            wrapper.children.len() == 1 && wrapper.children[0].kind == NodeKind::ConditionalChain;
        if is_continuation {
            let inner = wrapper.children.pop().unwrap();
            chain.attrs.has_else = inner.attrs.has_else;
            chain.children.extend(inner.children);
        } else {
            chain.attrs.has_else = Some(true);
            chain.children.push(wrapper); // becomes the else body Block
        }
    }
    chain
}

/// Clause views over a normalized chain node.
pub struct ChainParts<'a> {
    pub clauses: Vec<(&'a AstNode, &'a AstNode)>,
    pub else_body: Option<&'a AstNode>,
}

pub fn chain_parts(chain: &AstNode) -> ChainParts<'_> {
    assert_eq!(chain.kind, NodeKind::ConditionalChain);
    let has_else = chain.attrs.has_else == Some(true);
    let clause_children = if has_else {
        &chain.children[..chain.children.len() - 1]
    } else {
        &chain.children[..]
    };
    let clauses = clause_children
        .chunks(2)
        .map(|pair| (&pair[0], &pair[1]))
        .collect();
    ChainParts {
        clauses,
        else_body: has_else.then(|| chain.children.last().unwrap()),
    }
}
