//! chplx-lite: a source-to-source compiler lowering a Chapel subset onto the
//! chplx-rt runtime crate, in three passes over a normalized AST: symbol
//! table construction, lowering with embedded symbols, and code generation
//! with per-statement source provenance.

pub mod ast;
pub mod codegen;
pub mod irgen;
pub mod lexer;
pub mod normalize;
pub mod parser;
pub mod pipeline;
pub mod span;
pub mod symtab;
pub mod unparse;
