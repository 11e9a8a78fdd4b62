use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use chplx_complexity::cocomo::CocomoParams;
use chplx_complexity::report::report_complexity;

/// Lines-of-code and schedule-effort comparison between input Chapel
/// programs and their generated translations.
#[derive(Debug, Parser)]
#[command(name = "chplx-complexity")]
struct Args {
    /// Input Chapel sources, one per benchmark.
    #[arg(long, num_args = 1.., required = true)]
    chapel: Vec<PathBuf>,

    /// Generated program files.
    #[arg(long, num_args = 1.., required = true)]
    generated: Vec<PathBuf>,

    /// Generated support files (drivers, manifests rendered as sources).
    #[arg(long, num_args = 0..)]
    support: Vec<PathBuf>,

    /// Count provenance directives as comments instead of code.
    #[arg(long)]
    exclude_line_directives: bool,

    /// Write the report as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match report_complexity(
        &args.chapel,
        &args.generated,
        &args.support,
        args.exclude_line_directives,
        &CocomoParams::default(),
    ) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    };
    print!("{}", report.render_table());
    if let Some(path) = &args.csv {
        if let Err(e) = std::fs::write(path, report.to_csv()) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::FAILURE;
        }
    }
    ExitCode::SUCCESS
}
