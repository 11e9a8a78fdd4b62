use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use chplx_bench::csv::write_results_csv;
use chplx_bench::gups::{run_gups, GupsParams};
use chplx_bench::heat::{run_heat, HeatParams};
use chplx_bench::stream::{run_stream, StreamParams};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Bench {
    Heat,
    Stream,
    Gups,
}

/// Native benchmark harness for the heat, STREAM, and GUPS kernels.
#[derive(Debug, Parser)]
#[command(name = "chplx-bench")]
struct Args {
    #[arg(long, value_enum)]
    bench: Bench,

    /// Worker count (0 = hardware default).
    #[arg(long, default_value_t = 0)]
    threads: usize,

    /// Heat: grid points.
    #[arg(long, default_value_t = 1_000_000)]
    nx: usize,

    /// Heat: time steps.
    #[arg(long, default_value_t = 100)]
    nt: usize,

    /// STREAM: element count.
    #[arg(long, default_value_t = 1_000_000)]
    n: usize,

    /// GUPS: table size in 64-bit words; accepts `1048576` or `2^20`.
    #[arg(long = "tableSize", default_value = "2^20")]
    table_size: String,

    /// GUPS: number of updates.
    #[arg(long, default_value_t = 1 << 20)]
    updates: usize,

    /// GUPS: PRNG seed.
    #[arg(long, default_value_t = 0x1234_5678_9ABC_DEF0)]
    seed: u64,

    /// Results file; rows append across invocations.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_size(s: &str) -> Result<usize, String> {
    if let Some((base, exp)) = s.split_once('^') {
        let base: usize = base.trim().parse().map_err(|_| format!("bad size `{s}`"))?;
        let exp: u32 = exp.trim().parse().map_err(|_| format!("bad size `{s}`"))?;
        Ok(base.pow(exp))
    } else {
        s.trim().parse().map_err(|_| format!("bad size `{s}`"))
    }
}

fn run(args: &Args) -> Result<(), String> {
    let results = match args.bench {
        Bench::Heat => {
            let p = HeatParams {
                nx: args.nx,
                nt: args.nt,
                ..HeatParams::default()
            };
            let (res, _) = run_heat(&p, args.threads)?;
            vec![res]
        }
        Bench::Stream => {
            let p = StreamParams {
                n: args.n,
                ..StreamParams::default()
            };
            run_stream(&p, args.threads)?
        }
        Bench::Gups => {
            let p = GupsParams {
                table_size: parse_size(&args.table_size)?,
                updates: args.updates,
                seed: args.seed,
                ..GupsParams::default()
            };
            let (res, _) = run_gups(&p, args.threads)?;
            vec![res]
        }
    };
    for r in &results {
        match r.rate {
            Some(rate) => println!("{}: threads={} seconds={} rate={}", r.benchmark, r.threads, r.seconds, rate),
            None => println!("{}: threads={} seconds={}", r.benchmark, r.threads, r.seconds),
        }
    }
    if let Some(path) = &args.csv {
        write_results_csv(&results, path).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
