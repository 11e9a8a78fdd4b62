//! Per-benchmark complexity report: three LOC frequencies (input Chapel,
//! generated program file, generated program plus support files) with the
//! corresponding schedule-effort estimates, plus the mean/median effort gap.
//!
//! Benchmarks are keyed by the Chapel file's stem. A generated or support
//! file belongs to the benchmark whose stem prefixes its own stem
//! (`heat.chpl` owns `heat_program.rs` and `heat_main.rs`); support files
//! matching no benchmark are shared and count toward every benchmark.

use std::path::{Path, PathBuf};

use crate::cocomo::{estimate, CocomoParams};
use crate::loc::{count_loc, Language, LocCount};

pub const CSV_HEADER: &str =
    "benchmark,chapel_loc,cpp_loc,boilerplate_loc,chapel_ese,cpp_ese,boilerplate_ese";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRow {
    pub benchmark: String,
    pub chapel_loc: usize,
    pub cpp_loc: usize,
    pub boilerplate_loc: usize,
    pub chapel_ese: f64,
    pub cpp_ese: f64,
    pub boilerplate_ese: f64,
}

impl BenchmarkRow {
    /// Generated-minus-input code-line gap.
    pub fn loc_gap(&self) -> i64 {
        self.cpp_loc as i64 - self.chapel_loc as i64
    }

    /// Generated-minus-input schedule-effort gap, in months.
    pub fn ese_gap(&self) -> f64 {
        self.cpp_ese - self.chapel_ese
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.benchmark,
            self.chapel_loc,
            self.cpp_loc,
            self.boilerplate_loc,
            self.chapel_ese,
            self.cpp_ese,
            self.boilerplate_ese
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport {
    pub rows: Vec<BenchmarkRow>,
}

impl ComplexityReport {
    pub fn mean_ese_gap(&self) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        self.rows.iter().map(BenchmarkRow::ese_gap).sum::<f64>() / self.rows.len() as f64
    }

    pub fn median_ese_gap(&self) -> f64 {
        if self.rows.is_empty() {
            return 0.0;
        }
        let mut gaps: Vec<f64> = self.rows.iter().map(BenchmarkRow::ese_gap).collect();
        gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = gaps.len();
        if n % 2 == 1 {
            gaps[n / 2]
        } else {
            (gaps[n / 2 - 1] + gaps[n / 2]) / 2.0
        }
    }

    pub fn max_loc_gap(&self) -> i64 {
        self.rows.iter().map(BenchmarkRow::loc_gap).max().unwrap_or(0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.csv_row());
            out.push('\n');
        }
        out
    }

    /// Human-readable table plus the summary gap statistics.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<12} {:>10} {:>8} {:>11} {:>11} {:>9} {:>12}\n",
            "benchmark", "chapel_loc", "cpp_loc", "boiler_loc", "chapel_ese", "cpp_ese", "boiler_ese"
        ));
        for r in &self.rows {
            out.push_str(&format!(
                "{:<12} {:>10} {:>8} {:>11} {:>11.4} {:>9.4} {:>12.4}\n",
                r.benchmark,
                r.chapel_loc,
                r.cpp_loc,
                r.boilerplate_loc,
                r.chapel_ese,
                r.cpp_ese,
                r.boilerplate_ese
            ));
        }
        out.push_str(&format!(
            "max LOC gap: {}   mean ESE gap: {:.4}   median ESE gap: {:.4}\n",
            self.max_loc_gap(),
            self.mean_ese_gap(),
            self.median_ese_gap()
        ));
        out
    }
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn belongs_to(bench: &str, file: &Path) -> bool {
    let s = stem(file);
    s == bench || s.starts_with(&format!("{bench}_")) || s.starts_with(&format!("{bench}-"))
}

fn ese(code_lines: usize, params: &CocomoParams) -> f64 {
    estimate(code_lines, params).schedule_months
}

pub fn report_complexity(
    chapel_files: &[PathBuf],
    generated_files: &[PathBuf],
    support_files: &[PathBuf],
    exclude_directives: bool,
    params: &CocomoParams,
) -> std::io::Result<ComplexityReport> {
    let bench_names: Vec<String> = chapel_files.iter().map(|p| stem(p)).collect();
    let count = |p: &Path, lang| -> std::io::Result<LocCount> {
        count_loc(p, lang, exclude_directives)
    };
    let mut rows = Vec::new();
    for (chapel, bench) in chapel_files.iter().zip(&bench_names) {
        let chapel_loc = count(chapel, Language::Chapel)?.code_lines;
        let mut cpp_loc = 0;
        for f in generated_files {
            if belongs_to(bench, f) {
                cpp_loc += count(f, Language::Target)?.code_lines;
            }
        }
        // boilerplate = program file(s) + attributed and shared support files
        let mut boilerplate_loc = cpp_loc;
        for f in support_files {
            let owned_elsewhere = bench_names
                .iter()
                .any(|b| b != bench && belongs_to(b, f));
            if belongs_to(bench, f) || !owned_elsewhere {
                boilerplate_loc += count(f, Language::Target)?.code_lines;
            }
        }
        rows.push(BenchmarkRow {
            benchmark: bench.clone(),
            chapel_loc,
            cpp_loc,
            boilerplate_loc,
            chapel_ese: ese(chapel_loc, params),
            cpp_ese: ese(cpp_loc, params),
            boilerplate_ese: ese(boilerplate_loc, params),
        });
    }
    Ok(ComplexityReport { rows })
}
