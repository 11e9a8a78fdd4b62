//! GUPS: random-access xor updates over a power-of-two table.
//!
//! All update indices come from one seeded xorshift64 stream. Workers
//! leapfrog over that stream (worker `t` applies the positions congruent to
//! `t`), so the multiset of applied updates is independent of the worker
//! count, and xor commutativity makes the final table state exactly equal to
//! the sequential oracle's for any thread count.

use chplx_rt::{d1, rng, Array, Runtime, Timer};

use crate::result::BenchResult;

#[derive(Debug, Clone, Copy)]
pub struct GupsParams {
    /// Power-of-two count of 64-bit words.
    pub table_size: usize,
    pub updates: usize,
    pub literal: i64,
    pub seed: u64,
}

impl Default for GupsParams {
    fn default() -> Self {
        GupsParams {
            table_size: 1 << 20,
            updates: 1 << 20,
            literal: 0xAAAA_AAAA,
            seed: 0x1234_5678_9ABC_DEF0,
        }
    }
}

impl GupsParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.table_size == 0 || !self.table_size.is_power_of_two() {
            return Err(format!(
                "tableSize must be a power of two, got {}",
                self.table_size
            ));
        }
        if self.seed == 0 {
            return Err("seed must be nonzero".to_string());
        }
        Ok(())
    }
}

/// xorshift64 with the fixed constants 13, 7, 17.
#[inline]
pub fn xorshift64(x: &mut u64) -> u64 {
    *x ^= *x << 13;
    *x ^= *x >> 7;
    *x ^= *x << 17;
    *x
}

/// `Fig. 1`-style rate: `threads × bytes / seconds / 1e9`.
pub fn compute_gups_rate(threads: usize, bytes: usize, seconds: f64) -> Result<f64, String> {
    if seconds <= 0.0 {
        return Err(format!("seconds must be positive, got {seconds}"));
    }
    Ok(threads as f64 * bytes as f64 / seconds / 1e9)
}

fn fresh_table(table_size: usize) -> Array<i64> {
    let t = Array::fill(d1(rng(0, table_size as i64 - 1)), 0);
    for i in 0..table_size as i64 {
        t.set(i, i);
    }
    t
}

/// Sequential oracle: the exact final table for a parameter set.
pub fn gups_oracle(p: &GupsParams) -> Result<Vec<i64>, String> {
    p.validate()?;
    let mask = p.table_size as u64 - 1;
    let mut table: Vec<i64> = (0..p.table_size as i64).collect();
    let mut x = p.seed;
    for _ in 0..p.updates {
        let idx = (xorshift64(&mut x) & mask) as usize;
        table[idx] ^= p.literal;
    }
    Ok(table)
}

/// Timed parallel run; returns the rate-bearing result and the final table.
pub fn run_gups(p: &GupsParams, threads: usize) -> Result<(BenchResult, Array<i64>), String> {
    p.validate()?;
    let rt = Runtime::new(threads);
    let table = fresh_table(p.table_size);
    let mask = p.table_size as u64 - 1;
    let chunks = rt.worker_count() as u64;
    let timer = Timer::start();
    rt.forall(rng(0, chunks as i64 - 1), |c| {
        let own = c as u64;
        let mut x = p.seed;
        for k in 0..p.updates as u64 {
            let v = xorshift64(&mut x);
            if k % chunks == own {
                table.fetch_xor((v & mask) as i64, p.literal);
            }
        }
    });
    let seconds = timer.elapsed_secs();
    let rate = compute_gups_rate(rt.worker_count(), p.updates * 8, seconds)?;
    Ok((
        BenchResult::new("gups", rt.worker_count(), seconds, Some(rate)),
        table,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> GupsParams {
        GupsParams {
            table_size: 1 << 10,
            updates: 10_000,
            ..GupsParams::default()
        }
    }

    #[test]
    fn zero_updates_leaves_table_unchanged() {
        let p = GupsParams {
            updates: 0,
            ..small()
        };
        let (_, table) = run_gups(&p, 2).unwrap();
        assert_eq!(table.to_vec(), (0..1 << 10).collect::<Vec<i64>>());
    }

    #[test]
    fn double_update_restores_original_value() {
        let t = fresh_table(8);
        t.fetch_xor(5, 0x77);
        t.fetch_xor(5, 0x77);
        assert_eq!(t.get(5), 5);
    }

    #[test]
    fn final_table_is_thread_count_invariant() {
        let p = small();
        let oracle = gups_oracle(&p).unwrap();
        for threads in [1, 2, 4] {
            let (_, table) = run_gups(&p, threads).unwrap();
            assert_eq!(table.to_vec(), oracle, "threads={threads}");
        }
    }

    #[test]
    fn rate_formula() {
        assert_eq!(compute_gups_rate(1, 1_000_000_000, 1.0).unwrap(), 1.0);
        assert_eq!(compute_gups_rate(2, 1_000_000_000, 1.0).unwrap(), 2.0);
        assert_eq!(compute_gups_rate(4, 80_000_000, 0.5).unwrap(), 0.64);
        assert!(compute_gups_rate(1, 8, 0.0).is_err());
    }

    #[test]
    fn non_power_of_two_table_is_rejected() {
        let p = GupsParams {
            table_size: 1000,
            ..small()
        };
        assert!(run_gups(&p, 1).is_err());
    }
}
