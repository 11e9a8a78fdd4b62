use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use chplx_lite::codegen::{CodegenProfile, DirectivePlacement};
use chplx_lite::pipeline::{compile_file, write_unit, CompileOptions};

#[derive(Parser)]
#[command(name = "chplx-lite", about = "Chapel-subset to Rust translator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate one .chpl file into a Rust crate layout.
    Compile(CompileArgs),
}

#[derive(Args)]
struct CompileArgs {
    /// Input Chapel source file.
    input: PathBuf,

    /// Output directory for the generated crate.
    #[arg(short, long, default_value = "out")]
    output: PathBuf,

    /// Skip source-line directives in the generated code.
    #[arg(long)]
    no_line_directives: bool,

    /// Directive shape: `trailing` comments or `standalone` #line lines.
    #[arg(long, default_value = "trailing", value_parser = ["trailing", "standalone"])]
    line_directive_style: String,

    /// Also write a Cargo.toml for the generated crate.
    #[arg(long)]
    emit_build: bool,

    /// Path to the chplx-rt crate, recorded in the generated manifest.
    #[arg(long, default_value = "../crates/runtime")]
    runtime_path: String,

    /// Print the normalized syntax tree as JSON and exit.
    #[arg(long)]
    dump_ast: bool,

    /// Print the scope symbol tables as JSON and exit.
    #[arg(long)]
    dump_symbols: bool,

    /// Print the lowered program as JSON and exit.
    #[arg(long)]
    dump_ir: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compile(args) => compile(args),
    }
}

fn compile(args: CompileArgs) -> ExitCode {
    let options = CompileOptions {
        profile: CodegenProfile {
            placement: if args.line_directive_style == "standalone" {
                DirectivePlacement::Standalone
            } else {
                DirectivePlacement::Trailing
            },
            emit_line_directives: !args.no_line_directives,
            runtime_path: args.runtime_path.clone(),
            ..CodegenProfile::default()
        },
        emit_build: args.emit_build,
    };
    let compilation = match compile_file(&args.input, &options) {
        Ok(c) => c,
        Err(diags) => {
            for d in diags {
                eprintln!("{d}");
            }
            return ExitCode::from(1);
        }
    };
    if args.dump_ast || args.dump_symbols || args.dump_ir {
        if args.dump_ast {
            println!(
                "{}",
                serde_json::to_string_pretty(&compilation.ast).expect("serialize ast")
            );
        }
        if args.dump_symbols {
            println!(
                "{}",
                serde_json::to_string_pretty(&compilation.symbols).expect("serialize symbols")
            );
        }
        if args.dump_ir {
            println!(
                "{}",
                serde_json::to_string_pretty(&compilation.program).expect("serialize ir")
            );
        }
        return ExitCode::SUCCESS;
    }
    match write_unit(&compilation.unit, &args.output) {
        Ok(written) => {
            for p in written {
                println!("wrote {}", p.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}
