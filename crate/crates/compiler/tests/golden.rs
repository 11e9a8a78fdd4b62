//! Golden dumps pinned against the committed JSON: the normalized AST and
//! the scope symbol tables for heat.chpl. Catches accidental changes to the
//! tree shape, span assignment, or scope naming.

use std::path::Path;

use chplx_lite::pipeline::{compile_source, CompileOptions};

fn repo_root() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

#[test]
fn heat_ast_and_symbols_match_goldens() {
    let root = repo_root();
    let source = std::fs::read_to_string(root.join("benchmarks/heat.chpl")).unwrap();
    let c = compile_source(&source, "benchmarks/heat.chpl", &CompileOptions::default())
        .expect("heat.chpl compiles");

    let ast = serde_json::to_string_pretty(&c.ast).unwrap() + "\n";
    let golden_ast =
        std::fs::read_to_string(root.join("crates/compiler/tests/golden/heat_ast.json")).unwrap();
    assert_eq!(ast, golden_ast, "normalized heat AST drifted from golden");

    let symbols = serde_json::to_string_pretty(&c.symbols).unwrap() + "\n";
    let golden_symbols =
        std::fs::read_to_string(root.join("crates/compiler/tests/golden/heat_symbols.json"))
            .unwrap();
    assert_eq!(
        symbols, golden_symbols,
        "heat symbol tables drifted from golden"
    );
}
