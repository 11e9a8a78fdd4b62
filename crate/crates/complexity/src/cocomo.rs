//! Basic COCOMO (organic mode) effort and schedule estimates.
//!
//! effort  = a * kloc^b          person-months
//! schedule = c * effort^d       months

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocomoParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Default for CocomoParams {
    fn default() -> Self {
        // organic-mode constants
        CocomoParams {
            a: 2.4,
            b: 1.05,
            c: 2.5,
            d: 0.38,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CocomoEstimate {
    pub kloc: f64,
    pub effort_person_months: f64,
    pub schedule_months: f64,
}

pub fn cocomo_effort(kloc: f64, p: &CocomoParams) -> Result<f64, String> {
    if kloc < 0.0 || !kloc.is_finite() {
        return Err(format!("kloc must be a nonnegative finite number, got {kloc}"));
    }
    Ok(p.a * kloc.powf(p.b))
}

pub fn cocomo_schedule(effort: f64, p: &CocomoParams) -> Result<f64, String> {
    if effort < 0.0 || !effort.is_finite() {
        return Err(format!("effort must be a nonnegative finite number, got {effort}"));
    }
    Ok(p.c * effort.powf(p.d))
}

pub fn estimate(loc: usize, p: &CocomoParams) -> CocomoEstimate {
    let kloc = loc as f64 / 1000.0;
    let effort = cocomo_effort(kloc, p).expect("nonnegative kloc");
    let schedule = cocomo_schedule(effort, p).expect("nonnegative effort");
    CocomoEstimate {
        kloc,
        effort_person_months: effort,
        schedule_months: schedule,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_kloc_organic() {
        let p = CocomoParams::default();
        let effort = cocomo_effort(1.0, &p).unwrap();
        assert!((effort - 2.4).abs() < 1e-12);
        let schedule = cocomo_schedule(effort, &p).unwrap();
        // 2.5 * 2.4^0.38, evaluated independently to high precision
        assert!((schedule - 3.486_745_752_485).abs() / schedule < 1e-9, "{schedule}");
    }

    #[test]
    fn effort_is_monotone_in_loc() {
        let p = CocomoParams::default();
        let mut prev = -1.0;
        for loc in [0, 10, 100, 1_000, 10_000, 100_000] {
            let e = estimate(loc, &p).effort_person_months;
            assert!(e > prev);
            prev = e;
        }
    }

    #[test]
    fn zero_loc_gives_zero_effort() {
        let p = CocomoParams::default();
        assert_eq!(cocomo_effort(0.0, &p).unwrap(), 0.0);
    }

    #[test]
    fn negative_and_nonfinite_inputs_are_rejected() {
        let p = CocomoParams::default();
        assert!(cocomo_effort(-1.0, &p).is_err());
        assert!(cocomo_effort(f64::NAN, &p).is_err());
        assert!(cocomo_schedule(-0.5, &p).is_err());
    }
}
