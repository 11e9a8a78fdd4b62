/// One timed benchmark configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchResult {
    pub benchmark: String,
    pub threads: usize,
    pub seconds: f64,
    /// Benchmark-specific rate (GUPS or GB/s); absent when the benchmark
    /// reports only wall time.
    pub rate: Option<f64>,
}

impl BenchResult {
    pub fn new(benchmark: &str, threads: usize, seconds: f64, rate: Option<f64>) -> BenchResult {
        assert!(seconds > 0.0, "wall time must be positive");
        BenchResult {
            benchmark: benchmark.to_string(),
            threads,
            seconds,
            rate,
        }
    }
}
