//! 1D heat equation under explicit Euler time stepping with Dirichlet
//! boundaries: interior points advance by
//! `u'[i] = u[i] + dt·alpha·(u[i-1] - 2·u[i] + u[i+1]) / denom`.
//!
//! The published update divides by `2h` where the standard second-difference
//! scheme divides by `h²`; the denominator is a parameter defaulting to `h²`
//! so either reading can be run.

use chplx_rt::{d1, rng, Array, Runtime, Timer};

use crate::result::BenchResult;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Denominator {
    /// `h²` — the standard explicit Euler second-difference scheme (default).
    HSquared,
    /// `2h` — the update exactly as printed.
    TwoH,
}

#[derive(Debug, Clone, Copy)]
pub struct HeatParams {
    pub nx: usize,
    pub nt: usize,
    pub alpha: f64,
    pub dt: f64,
    pub h: f64,
    pub denom: Denominator,
}

impl Default for HeatParams {
    fn default() -> Self {
        HeatParams {
            nx: 1_000_000,
            nt: 100,
            alpha: 0.1,
            dt: 0.1,
            h: 1.0,
            denom: Denominator::HSquared,
        }
    }
}

impl HeatParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.nx < 3 {
            return Err(format!("nx must be at least 3, got {}", self.nx));
        }
        if self.dt <= 0.0 || self.h <= 0.0 {
            return Err("dt and h must be positive".to_string());
        }
        Ok(())
    }

    pub fn denominator(&self) -> f64 {
        match self.denom {
            Denominator::HSquared => self.h * self.h,
            Denominator::TwoH => 2.0 * self.h,
        }
    }

    /// Explicit Euler is stable when `dt·alpha/h² ≤ 0.5`; warned, not
    /// enforced.
    pub fn stability_warning(&self) -> Option<String> {
        let cfl = self.dt * self.alpha / (self.h * self.h);
        (cfl > 0.5).then(|| format!("explicit Euler unstable: dt*alpha/h^2 = {cfl} > 0.5"))
    }
}

/// Zero field with a unit spike at `nx/2`, matching `heat.chpl`.
pub fn initial_field(nx: usize) -> Array<f64> {
    let u = Array::fill(d1(rng(0, nx as i64 - 1)), 0.0);
    u.set(nx as i64 / 2, 1.0);
    u
}

/// One parallel time step: interior via `forall`, boundaries held fixed.
pub fn heat_step(rt: &Runtime, u: &Array<f64>, un: &Array<f64>, p: &HeatParams) {
    let nx = p.nx as i64;
    let coeff = p.dt * p.alpha;
    let denom = p.denominator();
    rt.forall(rng(1, nx - 2), |i| {
        un.set(
            i,
            u.get(i) + coeff * (u.get(i - 1) - 2.0 * u.get(i) + u.get(i + 1)) / denom,
        );
    });
    un.set(0, u.get(0));
    un.set(nx - 1, u.get(nx - 1));
}

/// Sequential reference step over plain slices; the oracle the parallel path
/// is checked against.
pub fn heat_step_scalar(u: &[f64], un: &mut [f64], p: &HeatParams) {
    let coeff = p.dt * p.alpha;
    let denom = p.denominator();
    for i in 1..u.len() - 1 {
        un[i] = u[i] + coeff * (u[i - 1] - 2.0 * u[i] + u[i + 1]) / denom;
    }
    un[0] = u[0];
    un[u.len() - 1] = u[u.len() - 1];
}

/// Full sequential run from the standard initial field.
pub fn run_heat_scalar(p: &HeatParams) -> Result<Vec<f64>, String> {
    p.validate()?;
    let mut u = vec![0.0; p.nx];
    u[p.nx / 2] = 1.0;
    let mut un = vec![0.0; p.nx];
    for _ in 0..p.nt {
        heat_step_scalar(&u, &mut un, p);
        std::mem::swap(&mut u, &mut un);
    }
    Ok(u)
}

/// Timed parallel run with double buffering; returns the final field.
pub fn run_heat(p: &HeatParams, threads: usize) -> Result<(BenchResult, Array<f64>), String> {
    p.validate()?;
    if let Some(w) = p.stability_warning() {
        eprintln!("warning: {w}");
    }
    let rt = Runtime::new(threads);
    let mut u = initial_field(p.nx);
    let mut un = Array::fill(d1(rng(0, p.nx as i64 - 1)), 0.0);
    let timer = Timer::start();
    for _ in 0..p.nt {
        heat_step(&rt, &u, &un, p);
        std::mem::swap(&mut u, &mut un);
    }
    let seconds = timer.elapsed_secs();
    Ok((
        BenchResult::new("heat", rt.worker_count(), seconds, None),
        u,
    ))
}
