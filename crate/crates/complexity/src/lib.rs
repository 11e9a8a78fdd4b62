//! Source-complexity measurement: cloc-style line counting over Chapel and
//! generated target sources, and COCOMO effort/schedule estimates, used to
//! quantify the gap between an input program and its translation.

pub mod cocomo;
pub mod loc;
pub mod report;

pub use cocomo::{cocomo_effort, cocomo_schedule, CocomoEstimate, CocomoParams};
pub use loc::{count_loc, count_loc_str, Language, LocCount};
pub use report::{report_complexity, BenchmarkRow, ComplexityReport};
