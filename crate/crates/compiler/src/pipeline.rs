//! Whole-file driver: read, lex, parse, normalize, build symbols, lower,
//! emit. Nothing is written to disk unless every pass succeeds.

use std::fs;
use std::path::{Path, PathBuf};

use crate::codegen::{emit_program, CodegenProfile, EmittedUnit};
use crate::irgen::{check_lowered, lower_program, OutputProgram};
use crate::lexer::tokenize;
use crate::normalize::normalize_conditionals;
use crate::parser::parse;
use crate::span::Diagnostic;
use crate::symtab::{build_program_symbol_table, ProgramSymbolTable};
use crate::ast::AstNode;

pub struct CompileOptions {
    pub profile: CodegenProfile,
    pub emit_build: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            profile: CodegenProfile::default(),
            emit_build: false,
        }
    }
}

pub struct Compilation {
    pub ast: AstNode,
    pub symbols: ProgramSymbolTable,
    pub program: OutputProgram,
    pub unit: EmittedUnit,
}

pub fn compile_source(
    source: &str,
    file: &str,
    options: &CompileOptions,
) -> Result<Compilation, Vec<Diagnostic>> {
    let tokens = tokenize(source, file)?;
    let ast = normalize_conditionals(parse(&tokens)?);
    let symbols = build_program_symbol_table(&ast)?;
    let program = lower_program(&ast, &symbols)?;
    let internal = check_lowered(&program);
    if !internal.is_empty() {
        return Err(internal);
    }
    let unit = emit_program(&program, &options.profile, options.emit_build)?;
    Ok(Compilation {
        ast,
        symbols,
        program,
        unit,
    })
}

pub fn compile_file(path: &Path, options: &CompileOptions) -> Result<Compilation, Vec<Diagnostic>> {
    let source = fs::read_to_string(path).map_err(|e| {
        vec![Diagnostic::new(
            crate::span::Span::new(path.display().to_string(), 1, 1),
            format!("cannot read input: {e}"),
        )]
    })?;
    compile_source(&source, &path.display().to_string(), options)
}

/// Writes the emitted unit under `outdir`, creating `src/` and `src/bin/`.
/// Returns the paths written.
pub fn write_unit(unit: &EmittedUnit, outdir: &Path) -> std::io::Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    let mut files = vec![&unit.program, &unit.driver];
    if let Some(m) = &unit.manifest {
        files.push(m);
    }
    for f in files {
        let dest = outdir.join(&f.path);
        if let Some(parent) = dest.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&dest, &f.contents)?;
        written.push(dest);
    }
    Ok(written)
}
