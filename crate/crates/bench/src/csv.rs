//! CSV results writer with the `threads,seconds,rate` schema used by the
//! scaling plots. Appends rows when the file already has content, so
//! repeated invocations build up a sweep.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use crate::result::BenchResult;

pub const CSV_HEADER: &str = "threads,seconds,rate";

pub fn format_row(r: &BenchResult) -> String {
    match r.rate {
        Some(rate) => format!("{},{},{}", r.threads, r.seconds, rate),
        None => format!("{},{},", r.threads, r.seconds),
    }
}

pub fn write_results_csv(results: &[BenchResult], path: &Path) -> std::io::Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    if fresh {
        writeln!(f, "{CSV_HEADER}")?;
    }
    for r in results {
        writeln!(f, "{}", format_row(r))?;
    }
    Ok(())
}
