//! STREAM memory-bandwidth kernels: copy, scale, add, and triad over three
//! double-precision vectors. Each kernel is verified element-wise against
//! its defining formula before being timed.

use chplx_rt::{d1, rng, Array, Runtime, Timer};

use crate::result::BenchResult;

#[derive(Debug, Clone, Copy)]
pub struct StreamParams {
    pub n: usize,
    pub q: f64,
}

impl Default for StreamParams {
    fn default() -> Self {
        StreamParams {
            n: 1_000_000,
            q: 3.0,
        }
    }
}

impl StreamParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.n < 1 {
            return Err("n must be at least 1".to_string());
        }
        Ok(())
    }
}

struct Kernel {
    name: &'static str,
    /// Bytes moved per element (reads + writes), for the GB/s rate.
    bytes_per_elem: usize,
}

const KERNELS: [Kernel; 4] = [
    Kernel { name: "stream-copy", bytes_per_elem: 16 },
    Kernel { name: "stream-scale", bytes_per_elem: 16 },
    Kernel { name: "stream-add", bytes_per_elem: 24 },
    Kernel { name: "stream-triad", bytes_per_elem: 24 },
];

fn run_kernel(rt: &Runtime, which: usize, a: &Array<f64>, b: &Array<f64>, c: &Array<f64>, q: f64, n: i64) {
    match which {
        0 => rt.forall(rng(0, n - 1), |i| c.set(i, a.get(i))),
        1 => rt.forall(rng(0, n - 1), |i| b.set(i, q * c.get(i))),
        2 => rt.forall(rng(0, n - 1), |i| c.set(i, a.get(i) + b.get(i))),
        3 => rt.forall(rng(0, n - 1), |i| a.set(i, b.get(i) + q * c.get(i))),
        _ => unreachable!(),
    }
}

fn verify_kernel(which: usize, pre_a: &[f64], pre_b: &[f64], pre_c: &[f64], a: &Array<f64>, b: &Array<f64>, c: &Array<f64>, q: f64) {
    let n = pre_a.len();
    for i in 0..n {
        let ii = i as i64;
        match which {
            0 => assert_eq!(c.get(ii), pre_a[i], "copy at {i}"),
            1 => assert_eq!(b.get(ii), q * pre_c[i], "scale at {i}"),
            2 => assert_eq!(c.get(ii), pre_a[i] + pre_b[i], "add at {i}"),
            3 => assert_eq!(a.get(ii), pre_b[i] + q * pre_c[i], "triad at {i}"),
            _ => unreachable!(),
        }
    }
}

/// Runs copy, scale, add, triad in order; one verified, timed result per
/// kernel, rates in GB/s.
pub fn run_stream(p: &StreamParams, threads: usize) -> Result<Vec<BenchResult>, String> {
    p.validate()?;
    let rt = Runtime::new(threads);
    let n = p.n as i64;
    let a = Array::fill(d1(rng(0, n - 1)), 1.0);
    let b = Array::fill(d1(rng(0, n - 1)), 2.0);
    let c = Array::fill(d1(rng(0, n - 1)), 0.0);

    let mut results = Vec::with_capacity(KERNELS.len());
    for (which, k) in KERNELS.iter().enumerate() {
        let (pre_a, pre_b, pre_c) = (a.to_vec(), b.to_vec(), c.to_vec());
        run_kernel(&rt, which, &a, &b, &c, p.q, n);
        verify_kernel(which, &pre_a, &pre_b, &pre_c, &a, &b, &c, p.q);
        // kernels are idempotent given unchanged inputs, so the timed pass
        // re-runs the same update
        let timer = Timer::start();
        run_kernel(&rt, which, &a, &b, &c, p.q, n);
        let seconds = timer.elapsed_secs();
        let rate = (p.n * k.bytes_per_elem) as f64 / seconds / 1e9;
        results.push(BenchResult::new(k.name, rt.worker_count(), seconds, Some(rate)));
    }
    Ok(results)
}

/// Sequential reference of the full kernel sequence; returns (a, b, c).
pub fn run_stream_scalar(p: &StreamParams) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>), String> {
    p.validate()?;
    let n = p.n;
    let mut a = vec![1.0; n];
    let mut b = vec![2.0; n];
    let mut c = vec![0.0; n];
    for i in 0..n {
        c[i] = a[i];
    }
    for i in 0..n {
        b[i] = p.q * c[i];
    }
    for i in 0..n {
        c[i] = a[i] + b[i];
    }
    for i in 0..n {
        a[i] = b[i] + p.q * c[i];
    }
    Ok((a, b, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_zero_scale_produces_zero_vector() {
        let p = StreamParams { n: 64, q: 0.0 };
        let results = run_stream(&p, 2).unwrap();
        assert_eq!(results.len(), 4);
        // the element-wise verification inside run_stream asserts b == 0·c
    }

    #[test]
    fn hand_arithmetic_triad() {
        // a=1..8 (index i+1), b[i]=i, c[i]=2i, q=3 → triad a[i] = i + 3·2i = 7i
        let q = 3.0;
        let n = 8;
        let b: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let c: Vec<f64> = (0..n).map(|i| 2.0 * i as f64).collect();
        let mut a: Vec<f64> = (0..n).map(|i| (i + 1) as f64).collect();
        for i in 0..n {
            a[i] = b[i] + q * c[i];
        }
        for i in 0..n {
            assert_eq!(a[i], 7.0 * i as f64);
        }
    }

    #[test]
    fn parallel_equals_scalar_bitwise() {
        let p = StreamParams { n: 1000, q: 3.0 };
        let (a, b, c) = run_stream_scalar(&p).unwrap();
        // re-derive the parallel end state by running the kernels once more
        let rt = Runtime::new(4);
        let n = p.n as i64;
        let pa = Array::fill(d1(rng(0, n - 1)), 1.0);
        let pb = Array::fill(d1(rng(0, n - 1)), 2.0);
        let pc = Array::fill(d1(rng(0, n - 1)), 0.0);
        for which in 0..4 {
            run_kernel(&rt, which, &pa, &pb, &pc, p.q, n);
        }
        assert_eq!(pa.to_vec(), a);
        assert_eq!(pb.to_vec(), b);
        assert_eq!(pc.to_vec(), c);
    }

    #[test]
    fn empty_is_rejected() {
        assert!(run_stream(&StreamParams { n: 0, q: 1.0 }, 1).is_err());
    }
}
