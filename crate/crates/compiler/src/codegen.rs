//! Pass 3: prints the lowered program as a Rust module targeting chplx-rt,
//! with a source-line directive for every emitted statement, plus a driver
//! binary and a standalone Cargo manifest for the generated crate.

use serde::Serialize;

use crate::irgen::{Clause, ConfigConst, LoopKind, OutExpr, OutKind, OutputNode, OutputProgram};
use crate::span::{Diagnostic, Span};

/// Where the per-statement directive goes relative to the statement line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DirectivePlacement {
    /// `#line N "file"` on its own line before the statement. This is the
    /// classic preprocessor shape; tools that understand it can map panics
    /// back to the original source.
    Standalone,
    /// `// @srcline file:N` appended to the statement line, keeping the
    /// emitted line count equal to the statement count.
    Trailing,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodegenProfile {
    pub placement: DirectivePlacement,
    pub emit_line_directives: bool,
    /// Spaces per nesting level in the emitted module.
    pub indent: usize,
    /// Path to the chplx-rt crate written into the generated manifest.
    pub runtime_path: String,
}

impl Default for CodegenProfile {
    fn default() -> Self {
        CodegenProfile {
            placement: DirectivePlacement::Trailing,
            emit_line_directives: true,
            indent: 4,
            runtime_path: "../crates/runtime".to_string(),
        }
    }
}

/// One generated source or manifest file, path relative to the output crate
/// root.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmittedFile {
    pub path: String,
    pub contents: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmittedUnit {
    /// `src/{stem}_program.rs`: the translated module.
    pub program: EmittedFile,
    /// `src/bin/{stem}.rs`: argument parsing, runtime bring-up, run, shutdown.
    pub driver: EmittedFile,
    /// `Cargo.toml` for the generated crate; only present when requested.
    pub manifest: Option<EmittedFile>,
}

pub fn emit_program(
    program: &OutputProgram,
    profile: &CodegenProfile,
    with_manifest: bool,
) -> Result<EmittedUnit, Vec<Diagnostic>> {
    let mut cg = Codegen {
        profile,
        out: String::new(),
        diagnostics: Vec::new(),
        source_name: Span::new(&program.source_file, 1, 1).file_name().to_string(),
    };
    cg.push_plain(0, "#![allow(unused)]");
    cg.push_plain(0, "");
    cg.push_plain(0, "use chplx_rt::prelude::*;");
    cg.push_plain(0, "");
    cg.push_plain(0, "pub fn run(rt: &Runtime, cfg: &Config) {");
    cg.emit_body(&program.body, 1);
    cg.push_plain(0, "}");
    if !cg.diagnostics.is_empty() {
        return Err(cg.diagnostics);
    }
    let stem = program.module_name.clone();
    let unit = EmittedUnit {
        program: EmittedFile {
            path: format!("src/{stem}_program.rs"),
            contents: cg.out,
        },
        driver: EmittedFile {
            path: format!("src/bin/{stem}.rs"),
            contents: emit_driver(&stem, &program.config_consts),
        },
        manifest: with_manifest.then(|| EmittedFile {
            path: "Cargo.toml".to_string(),
            contents: emit_manifest(&stem, &profile.runtime_path),
        }),
    };
    Ok(unit)
}

fn emit_driver(stem: &str, config_consts: &[ConfigConst]) -> String {
    let names: Vec<String> = config_consts
        .iter()
        .map(|c| format!("\"{}\"", c.name))
        .collect();
    format!(
        "#[path = \"../{stem}_program.rs\"]\n\
         mod {stem}_program;\n\
         \n\
         use chplx_rt::prelude::*;\n\
         \n\
         fn main() {{\n\
         \x20   let cfg = Config::from_args(&[{}]);\n\
         \x20   let rt = Runtime::new(cfg.threads());\n\
         \x20   {stem}_program::run(&rt, &cfg);\n\
         \x20   rt.shutdown();\n\
         }}\n",
        names.join(", ")
    )
}

fn emit_manifest(stem: &str, runtime_path: &str) -> String {
    format!(
        "[workspace]\n\
         \n\
         [package]\n\
         name = \"{stem}\"\n\
         version = \"0.1.0\"\n\
         edition = \"2021\"\n\
         \n\
         [dependencies]\n\
         chplx-rt = {{ path = \"{runtime_path}\" }}\n\
         \n\
         [[bin]]\n\
         name = \"{stem}\"\n\
         path = \"src/bin/{stem}.rs\"\n\
         \n\
         [profile.dev]\n\
         opt-level = 1\n"
    )
}

fn rust_type(chapel: &str) -> &str {
    match chapel {
        "int" => "i64",
        "real" => "f64",
        "bool" => "bool",
        "string" => "String",
        other => other,
    }
}

fn default_value(chapel: &str) -> &str {
    match chapel {
        "real" => "0.0",
        "bool" => "false",
        "string" => "String::new()",
        _ => "0",
    }
}

struct Codegen<'a> {
    profile: &'a CodegenProfile,
    out: String,
    diagnostics: Vec<Diagnostic>,
    source_name: String,
}

impl<'a> Codegen<'a> {
    fn indent_str(&self, depth: usize) -> String {
        " ".repeat(self.profile.indent * depth)
    }

    /// A structural line with no source counterpart (scaffold, closing
    /// braces).
    fn push_plain(&mut self, depth: usize, text: &str) {
        if text.is_empty() {
            self.out.push('\n');
            return;
        }
        self.out.push_str(&self.indent_str(depth));
        self.out.push_str(text);
        self.out.push('\n');
    }

    /// A line carrying provenance: gets the directive for `origin` per the
    /// active profile.
    fn push_traced(&mut self, depth: usize, text: &str, origin: &Span) {
        if !self.profile.emit_line_directives {
            self.push_plain(depth, text);
            return;
        }
        match self.profile.placement {
            DirectivePlacement::Standalone => {
                self.out
                    .push_str(&format!("#line {} \"{}\"\n", origin.line, self.source_name));
                self.push_plain(depth, text);
            }
            DirectivePlacement::Trailing => {
                self.out.push_str(&self.indent_str(depth));
                self.out.push_str(text);
                self.out
                    .push_str(&format!(" // @srcline {}:{}\n", self.source_name, origin.line));
            }
        }
    }

    fn emit_body(&mut self, body: &[OutputNode], depth: usize) {
        for node in body {
            self.emit_statement(node, depth);
        }
    }

    fn emit_statement(&mut self, node: &OutputNode, depth: usize) {
        let origin = node.origin.clone();
        match &node.kind {
            OutKind::Decl {
                name,
                decl_kind,
                declared_type,
                init,
            } => {
                let binder = if decl_kind == "const" {
                    "let"
                } else {
                    "let mut"
                };
                let line = match (declared_type, init) {
                    (Some(ty), Some(e)) => {
                        format!("{binder} {name}: {} = {};", rust_type(ty), self.expr(e))
                    }
                    (None, Some(e)) => format!("{binder} {name} = {};", self.expr(e)),
                    (Some(ty), None) => format!(
                        "{binder} {name}: {} = {};",
                        rust_type(ty),
                        default_value(ty)
                    ),
                    (None, None) => {
                        self.diagnostics.push(Diagnostic::new(
                            origin.clone(),
                            format!("cannot infer a type for `{name}`: no annotation and no initializer"),
                        ));
                        return;
                    }
                };
                self.push_traced(depth, &line, &origin);
            }
            OutKind::ArrayDecl {
                name,
                elem_type,
                domain,
            } => {
                let line = format!(
                    "let mut {name} = Array::fill(d1({}), {});",
                    self.expr(domain),
                    default_value(elem_type)
                );
                self.push_traced(depth, &line, &origin);
            }
            OutKind::ConfigGet {
                name,
                type_name,
                default,
            } => {
                let getter = match type_name.as_str() {
                    "real" => "get_f64",
                    "bool" => "get_bool",
                    "string" => "get_str",
                    _ => "get_i64",
                };
                let mut default_text = self.expr(default);
                if type_name == "string" {
                    // get_str takes &str; string literals already fit
                    default_text = default_text.to_string();
                }
                let line = format!("let {name} = cfg.{getter}(\"{name}\", {default_text});");
                self.push_traced(depth, &line, &origin);
            }
            OutKind::Assign { op, lhs, rhs } => {
                let line = match lhs {
                    OutExpr::Index { base, indices } => {
                        let value = if op == "=" {
                            self.expr(rhs)
                        } else {
                            // read-modify-write on the element
                            format!(
                                "{} {} ({})",
                                self.index_read(base, indices),
                                op.trim_end_matches('='),
                                self.expr(rhs)
                            )
                        };
                        self.index_write(base, indices, &value)
                    }
                    _ => format!("{} {} {};", self.expr(lhs), op, self.expr(rhs)),
                };
                self.push_traced(depth, &line, &origin);
            }
            OutKind::Swap { lhs, rhs } => {
                let line = format!(
                    "std::mem::swap(&mut {}, &mut {});",
                    self.expr(lhs),
                    self.expr(rhs)
                );
                self.push_traced(depth, &line, &origin);
            }
            OutKind::CallStmt { expr } => {
                let line = format!("{};", self.expr(expr));
                self.push_traced(depth, &line, &origin);
            }
            OutKind::Writeln { args } => {
                let parts: Vec<String> = args.iter().map(|a| self.expr(a)).collect();
                let line = format!("chpl_writeln!({});", parts.join(", "));
                self.push_traced(depth, &line, &origin);
            }
            OutKind::Inline { format, args } => {
                match expand_inline_cxx(format, &args.iter().map(|a| self.expr(a)).collect::<Vec<_>>())
                {
                    Ok(text) => {
                        for line in text.lines() {
                            self.push_traced(depth, line, &origin);
                        }
                    }
                    Err(msg) => self.diagnostics.push(Diagnostic::new(origin.clone(), msg)),
                }
            }
            OutKind::Loop {
                kind,
                index_names,
                iterable,
                body,
            } => {
                let binding = if index_names.len() == 1 {
                    index_names[0].clone()
                } else {
                    format!("({})", index_names.join(", "))
                };
                let iter_text = self.iterable_expr(iterable);
                match kind {
                    LoopKind::For => {
                        self.push_traced(
                            depth,
                            &format!("for {binding} in seq({iter_text}) {{"),
                            &origin,
                        );
                        self.emit_body(body, depth + 1);
                        self.push_plain(depth, "}");
                    }
                    LoopKind::Forall | LoopKind::Coforall => {
                        let method = if *kind == LoopKind::Forall {
                            "forall"
                        } else {
                            "coforall"
                        };
                        self.push_traced(
                            depth,
                            &format!("rt.{method}({iter_text}, |{binding}| {{"),
                            &origin,
                        );
                        self.emit_body(body, depth + 1);
                        self.push_plain(depth, "});");
                    }
                }
            }
            OutKind::Begin { body } => {
                // `begin` without a sync point joins at the end of the
                // enclosing statement; a scoped one-task group gives that
                // without requiring 'static captures
                self.push_traced(depth, "rt.cobegin(vec![task(|| {", &origin);
                self.emit_body(body, depth + 1);
                self.push_plain(depth, "})]);");
            }
            OutKind::Cobegin { tasks } => {
                self.push_traced(depth, "rt.cobegin(vec![", &origin);
                for task_node in tasks {
                    self.push_plain(depth + 1, "task(|| {");
                    self.emit_statement(task_node, depth + 2);
                    self.push_plain(depth + 1, "}),");
                }
                self.push_plain(depth, "]);");
            }
            OutKind::CondChain {
                clauses,
                else_opening,
                else_body,
            } => {
                for (i, Clause { cond, opening, body }) in clauses.iter().enumerate() {
                    let head = if i == 0 { "if" } else { "} else if" };
                    let cond_text = self.expr(cond);
                    self.push_traced(depth, &format!("{head} {cond_text} {{"), opening);
                    self.emit_body(body, depth + 1);
                }
                if let (Some(open), Some(body)) = (else_opening, else_body) {
                    self.push_traced(depth, "} else {", open);
                    self.emit_body(body, depth + 1);
                }
                self.push_plain(depth, "}");
            }
            OutKind::Proc {
                name,
                params,
                return_type,
                is_iter,
                body,
            } => {
                let plist: Vec<String> = params
                    .iter()
                    .map(|p| format!("{}: {}", p.name, rust_type(&p.type_name)))
                    .collect();
                let ret = return_type.as_deref().map(rust_type);
                let sig = match (is_iter, ret) {
                    (true, Some(r)) => format!("fn {name}({}) -> Vec<{r}> {{", plist.join(", ")),
                    (true, None) => format!("fn {name}({}) -> Vec<i64> {{", plist.join(", ")),
                    (false, Some(r)) => format!("fn {name}({}) -> {r} {{", plist.join(", ")),
                    (false, None) => format!("fn {name}({}) {{", plist.join(", ")),
                };
                self.push_traced(depth, &sig, &origin);
                if *is_iter {
                    self.push_plain(depth + 1, "let mut yielded = Vec::new();");
                }
                self.emit_body(body, depth + 1);
                if *is_iter {
                    self.push_plain(depth + 1, "yielded");
                }
                self.push_plain(depth, "}");
            }
            OutKind::Return { expr } => {
                let line = match expr {
                    Some(e) => format!("return {};", self.expr(e)),
                    None => "return;".to_string(),
                };
                self.push_traced(depth, &line, &origin);
            }
            OutKind::Yield { expr } => {
                let line = format!("yielded.push({});", self.expr(expr));
                self.push_traced(depth, &line, &origin);
            }
        }
    }

    fn index_read(&mut self, base: &OutExpr, indices: &[OutExpr]) -> String {
        let b = self.expr(base);
        let idx: Vec<String> = indices.iter().map(|i| self.expr(i)).collect();
        match idx.len() {
            1 => format!("{b}.get({})", idx[0]),
            2 => format!("{b}.get2({}, {})", idx[0], idx[1]),
            _ => format!("{b}.getn(&[{}])", idx.join(", ")),
        }
    }

    fn index_write(&mut self, base: &OutExpr, indices: &[OutExpr], value: &str) -> String {
        let b = self.expr(base);
        let idx: Vec<String> = indices.iter().map(|i| self.expr(i)).collect();
        match idx.len() {
            1 => format!("{b}.set({}, {value});", idx[0]),
            2 => format!("{b}.set2({}, {}, {value});", idx[0], idx[1]),
            _ => format!("{b}.setn(&[{}], {value});", idx.join(", ")),
        }
    }

    /// Loop-source position: named collections are borrowed so the loop does
    /// not consume them; ranges and zips are built in place.
    fn iterable_expr(&mut self, e: &OutExpr) -> String {
        match e {
            OutExpr::Ident(name) => format!("&{name}"),
            OutExpr::Call { name, args } if name == "zip" => {
                let parts: Vec<String> = args.iter().map(|a| self.iterable_expr(a)).collect();
                format!("zip{}({})", args.len(), parts.join(", "))
            }
            other => self.expr(other),
        }
    }

    fn expr(&mut self, e: &OutExpr) -> String {
        match e {
            OutExpr::Lit { text, lit_kind } => match lit_kind.as_str() {
                "string" => format!("\"{}\"", escape(text)),
                _ => text.clone(),
            },
            OutExpr::Ident(name) => name.clone(),
            OutExpr::Bin { op, lhs, rhs } => match op.as_str() {
                "**" => format!("power({}, {})", self.expr(lhs), self.expr(rhs)),
                _ => format!("{} {} {}", self.expr(lhs), op, self.expr(rhs)),
            },
            OutExpr::Ternary {
                cond,
                then_expr,
                else_expr,
            } => format!(
                "(if {} {{ {} }} else {{ {} }})",
                self.expr(cond),
                self.expr(then_expr),
                self.expr(else_expr)
            ),
            OutExpr::Range { low, high } => match (low, high) {
                (Some(l), Some(h)) => format!("rng({}, {})", self.expr(l), self.expr(h)),
                (Some(l), None) => format!("rng_from({})", self.expr(l)),
                (None, Some(h)) => format!("rng_to({})", self.expr(h)),
                (None, None) => "rng_all()".to_string(),
            },
            OutExpr::RangeOp { op, base, arg } => {
                let method = match op.as_str() {
                    "by" => "by",
                    "align" => "align",
                    _ => "count",
                };
                format!("{}.{method}({})", self.expr(base), self.expr(arg))
            }
            OutExpr::Call { name, args } => {
                if name == "atomicXor" {
                    if args.len() != 3 {
                        return format!("/* atomicXor arity {} */", args.len());
                    }
                    return format!(
                        "{}.fetch_xor({}, {})",
                        self.expr(&args[0]),
                        self.expr(&args[1]),
                        self.expr(&args[2])
                    );
                }
                if name == "zip" {
                    let parts: Vec<String> = args.iter().map(|a| self.iterable_expr(a)).collect();
                    return format!("zip{}({})", args.len(), parts.join(", "));
                }
                let parts: Vec<String> = args.iter().map(|a| self.expr(a)).collect();
                format!("{name}({})", parts.join(", "))
            }
            OutExpr::Index { base, indices } => self.index_read(base, indices),
            OutExpr::Tuple(items) => {
                let parts: Vec<String> = items.iter().map(|i| self.expr(i)).collect();
                format!("({})", parts.join(", "))
            }
            OutExpr::Paren(inner) => format!("({})", self.expr(inner)),
        }
    }
}

/// Substitutes argument texts into an `inlinecxx` format string: each `{}`
/// takes the next argument, `{{`/`}}` are literal braces, and a terminating
/// `;` is added when missing so the expansion stands as a statement.
pub fn expand_inline_cxx(format: &str, args: &[String]) -> Result<String, String> {
    let mut out = String::new();
    let mut chars = format.chars().peekable();
    let mut next_arg = 0usize;
    while let Some(c) = chars.next() {
        match c {
            '{' if chars.peek() == Some(&'{') => {
                chars.next();
                out.push('{');
            }
            '}' if chars.peek() == Some(&'}') => {
                chars.next();
                out.push('}');
            }
            '{' if chars.peek() == Some(&'}') => {
                chars.next();
                match args.get(next_arg) {
                    Some(a) => out.push_str(a),
                    None => {
                        return Err(format!(
                            "inlinecxx format has more `{{}}` placeholders than arguments ({} given)",
                            args.len()
                        ))
                    }
                }
                next_arg += 1;
            }
            '{' | '}' => {
                return Err(format!(
                    "stray `{c}` in inlinecxx format; use `{{{{` or `}}}}` for a literal brace"
                ))
            }
            c => out.push(c),
        }
    }
    if next_arg < args.len() {
        return Err(format!(
            "inlinecxx format uses {next_arg} placeholder(s) but {} argument(s) were given",
            args.len()
        ));
    }
    let trimmed = out.trim_end();
    if !trimmed.ends_with(';') && !trimmed.ends_with('}') {
        out = format!("{trimmed};");
    }
    Ok(out)
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
