//! Compute-bound scaling probe: a fused multiply-add sweep used by the
//! strong-scaling smoke check.

use chplx_rt::{d1, rng, Array, Runtime, Timer};

/// Runs `reps` data-parallel sweeps of `n` elements, each element doing a
/// short FMA chain, and returns the wall seconds.
pub fn fma_sweep_seconds(rt: &Runtime, n: usize, reps: usize) -> f64 {
    let out = Array::fill(d1(rng(0, n as i64 - 1)), 0.0);
    let timer = Timer::start();
    for _ in 0..reps {
        rt.forall(rng(0, n as i64 - 1), |i| {
            let mut x = i as f64;
            for _ in 0..16 {
                x = x.mul_add(1.000_000_1, 0.5);
            }
            out.set(i, x);
        });
    }
    timer.elapsed_secs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probe_runs_and_times() {
        let rt = Runtime::new(2);
        let secs = fma_sweep_seconds(&rt, 10_000, 2);
        assert!(secs > 0.0);
    }
}
