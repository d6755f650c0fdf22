use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ode::{Dopri5, State};
use crate::system::{Complex, HolomorphicSystem};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PeriodOutcome {
    /// Closed orbit around equilibrium `center` (index into the root set).
    Periodic { period: f64, center: usize },
    NotPeriodic,
}

fn wrap(a: f64) -> f64 {
    (a + PI).rem_euclid(TAU) - PI
}

/// Time of first return of the orbit through `start` (normalized frame,
/// original time), detected by one full turn around a center.
pub fn orbit_period(system: &HolomorphicSystem, start: (f64, f64), tol: &Tolerances) -> Result<PeriodOutcome> {
    let roots = system.roots();
    let reports = crate::equilibria::classify_all(system, tol.class)?;
    let centers: Vec<(usize, Complex)> = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.kind.is_center())
        .map(|(k, r)| (k, r.location))
        .collect();
    let others: Vec<Complex> = reports
        .iter()
        .filter(|r| !r.kind.is_center())
        .map(|r| r.location)
        .collect();
    let scale = 1.0 + roots.entries.iter().map(|e| e.0.norm()).fold(0.0, f64::max);
    let z0 = Complex::new(start.0, start.1);
    if roots.entries.iter().any(|e| (e.0 - z0).norm() == 0.0) {
        return Err(Error::SingularPoint { x: start.0, y: start.1 });
    }

    let f = |y: State| -> State {
        let (p, q) = system.eval_field(y[0], y[1]);
        [p, q]
    };
    let lambda_max = reports.iter().map(|r| r.lambda.norm()).fold(0.0, f64::max).max(1e-3);
    let mut solver = Dopri5::new(tol.rtol.min(1e-11), 1e-14 * scale, 1e-3 / lambda_max, 0.05 / lambda_max);
    let mut y = [start.0, start.1];
    let mut fy = f(y);
    let mut t = 0.0;
    let mut winding = vec![0.0; centers.len()];
    let angle = |y: State, c: Complex| (y[1] - c.im).atan2(y[0] - c.re);
    let mut prev: Vec<f64> = centers.iter().map(|&(_, c)| angle(y, c)).collect();

    for steps in 0..tol.max_steps {
        if t > tol.t_max {
            return Err(Error::TraceBudgetExceeded { steps, time: t });
        }
        let step = solver.step(&f, y, fy).ok_or(Error::TraceBudgetExceeded { steps, time: t })?;
        for (i, &(k, c)) in centers.iter().enumerate() {
            let a = angle(step.y1, c);
            let w = winding[i] + wrap(a - prev[i]);
            if w.abs() >= TAU {
                // bisect for the exact crossing inside the step
                let target = TAU * w.signum();
                let (mut lo, mut hi) = (0.0, 1.0);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let wm = winding[i] + wrap(angle(step.interpolate(mid), c) - prev[i]);
                    if (wm - target) * w.signum() >= 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return Ok(PeriodOutcome::Periodic { period: t + hi * step.h, center: k });
            }
            winding[i] = w;
            prev[i] = a;
        }
        t += step.h;
        y = step.y1;
        fy = step.f1;
        let z = Complex::new(y[0], y[1]);
        if others.iter().any(|&e| (z - e).norm() < 1e-6 * scale) || z.norm() > 1e8 * scale {
            return Ok(PeriodOutcome::NotPeriodic);
        }
    }
    Err(Error::TraceBudgetExceeded { steps: tol.max_steps, time: t })
}
