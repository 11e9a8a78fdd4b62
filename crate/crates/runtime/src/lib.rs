//! Parallel runtime library mirroring a subset of Chapel's value types and
//! task constructs: ranges with `#`/`by`/`align` operators, rectangular
//! domains, dense arrays, zippered iteration, sync/single variables, atomics,
//! and fork-join parallel loops over a work-stealing worker pool.
//!
//! Generated programs link against this crate; the `prelude` re-exports
//! everything their emitted code refers to.

mod array;
mod config;
mod domain;
mod gen_iter;
mod range;
mod runtime;
mod sort;
mod sync_vars;
mod timer;
mod zip;

pub mod atomic;

pub use array::Array;
pub use config::Config;
pub use domain::{d1, d2, dom, Domain, IntoDomain};
pub use gen_iter::GenIter;
pub use range::{rng, rng_all, rng_from, rng_to, Boundedness, Range};
pub use runtime::{seq, task, Iterable, Runtime, TaskBody, TaskHandle};
pub use sort::{parallel_quicksort, sort_array};
pub use sync_vars::{Single, SingleWriteError, SyncVar};
pub use timer::Timer;
pub use zip::{try_zip2, try_zip3, zip1, zip2, zip3, Zip1, Zip2, Zip3, ZipError};

pub use atomic::{AtomicBoolVar, AtomicInt};

/// Chapel's `**` operator for the two numeric types in the subset.
pub trait Power {
    fn power(self, exp: Self) -> Self;
}

impl Power for i64 {
    fn power(self, exp: Self) -> Self {
        assert!(exp >= 0, "negative integer exponent");
        self.pow(exp as u32)
    }
}

impl Power for f64 {
    fn power(self, exp: Self) -> Self {
        self.powf(exp)
    }
}

pub fn power<T: Power>(base: T, exp: T) -> T {
    base.power(exp)
}

/// Joins its arguments with no separator and appends a newline, like
/// Chapel's `writeln`.
#[macro_export]
macro_rules! chpl_writeln {
    ($($e:expr),* $(,)?) => {{
        use ::std::io::Write as _;
        let mut __line = ::std::string::String::new();
        $(__line.push_str(&::std::format!("{}", $e));)*
        __line.push('\n');
        let __stdout = ::std::io::stdout();
        let mut __lock = __stdout.lock();
        let _ = __lock.write_all(__line.as_bytes());
    }};
}

pub mod prelude {
    pub use crate::atomic::{AtomicBoolVar, AtomicInt};
    pub use crate::chpl_writeln;
    pub use crate::{
        d1, d2, dom, parallel_quicksort, power, rng, rng_all, rng_from, rng_to, seq, task, zip1,
        zip2, zip3, Array, Config, Domain, GenIter, Range, Runtime, Single, SyncVar, Timer,
    };
}
