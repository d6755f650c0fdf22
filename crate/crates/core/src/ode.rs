//! Adaptive Dormand–Prince 5(4) integration of autonomous planar fields.

pub type State = [f64; 2];

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy(y: State, terms: &[(f64, State)], h: f64) -> State {
    let mut out = y;
    for &(c, k) in terms {
        out[0] += h * c * k[0];
        out[1] += h * c * k[1];
    }
    out
}

/// One accepted step.
#[derive(Debug, Clone, Copy)]
pub struct Step {
    pub h: f64,
    pub y0: State,
    pub y1: State,
    pub f0: State,
    pub f1: State,
}

impl Step {
    /// Cubic Hermite interpolation at `theta ∈ [0, 1]` of the step.
    pub fn interpolate(&self, theta: f64) -> State {
        let t = theta;
        let h00 = 2.0 * t * t * t - 3.0 * t * t + 1.0;
        let h10 = t * t * t - 2.0 * t * t + t;
        let h01 = -2.0 * t * t * t + 3.0 * t * t;
        let h11 = t * t * t - t * t;
        let mut out = [0.0; 2];
        for i in 0..2 {
            out[i] = h00 * self.y0[i]
                + h10 * self.h * self.f0[i]
                + h01 * self.y1[i]
                + h11 * self.h * self.f1[i];
        }
        out
    }
}

/// Adaptive stepper with step-size memory between calls.
#[derive(Debug, Clone)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub h: f64,
    pub h_max: f64,
    pub h_min: f64,
}

impl Dopri5 {
    pub fn new(rtol: f64, atol: f64, h0: f64, h_max: f64) -> Self {
        Self { rtol, atol, h: h0, h_max, h_min: 1e-14 }
    }

    /// Advance from `y` by one accepted step (`f0 = f(y)` is reused).
    /// Returns `None` when the step size underflows or the field is not
    /// finite along the attempted step.
    pub fn step<F: Fn(State) -> State>(&mut self, f: &F, y: State, f0: State) -> Option<Step> {
        loop {
            let h = self.h.min(self.h_max);
            let k1 = f0;
            let k2 = f(axpy(y, &[(A21, k1)], h));
            let k3 = f(axpy(y, &[(A31, k1), (A32, k2)], h));
            let k4 = f(axpy(y, &[(A41, k1), (A42, k2), (A43, k3)], h));
            let k5 = f(axpy(y, &[(A51, k1), (A52, k2), (A53, k3), (A54, k4)], h));
            let k6 = f(axpy(y, &[(A61, k1), (A62, k2), (A63, k3), (A64, k4), (A65, k5)], h));
            let y1 = axpy(y, &[(B1, k1), (B3, k3), (B4, k4), (B5, k5), (B6, k6)], h);
            let k7 = f(y1);
            // error measured against the size of the whole state, so that a
            // component passing through zero does not force tiny steps
            let size = y[0].abs().max(y[1].abs()).max(y1[0].abs()).max(y1[1].abs());
            let sc = self.atol + self.rtol * size;
            let mut err = 0.0f64;
            let mut finite = true;
            for i in 0..2 {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                err = err.max((e / sc).abs());
                finite &= y1[i].is_finite() && k7[i].is_finite();
            }
            if !finite {
                err = f64::INFINITY;
            }
            if err <= 1.0 {
                let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                self.h = (h * factor).min(self.h_max);
                return Some(Step { h, y0: y, y1, f0, f1: k7 });
            }
            let factor = if err.is_finite() { (0.9 * err.powf(-0.2)).clamp(0.1, 0.5) } else { 0.1 };
            self.h = h * factor;
            if self.h < self.h_min {
                return None;
            }
        }
    }
}

/// Integrate over `[0, t_end]`, returning the final state, or `None` if the
/// integrator fails.
pub fn integrate<F: Fn(State) -> State>(f: &F, y0: State, t_end: f64, rtol: f64, atol: f64) -> Option<State> {
    let mut solver = Dopri5::new(rtol, atol, (t_end * 1e-3).max(1e-6), t_end);
    let mut t = 0.0;
    let mut y = y0;
    let mut fy = f(y);
    while t < t_end {
        solver.h_max = t_end - t;
        let step = solver.step(f, y, fy)?;
        t += step.h;
        y = step.y1;
        fy = step.f1;
        if t_end - t <= 1e-14 * t_end {
            break;
        }
    }
    Some(y)
}
