pub mod csv;
pub mod gups;
pub mod heat;
pub mod probe;
pub mod result;
pub mod stream;

pub use result::BenchResult;
