//! Orbit tracing on the compactified plane.
//!
//! Tracing happens in a scaled copy of the normalized frame in which every
//! root lies in the closed unit disk. Inside the box `max(|x|, |y|) <= BOX`
//! the plane field is followed by arc length; outside it the rescaled chart
//! field of the nearest equator chart is used.

use crate::compactify::{from_plane, ChartId, ChartPoint, EquatorSaddle, ManifoldSeries, MonicField, SeparatrixRole};
use crate::error::{Error, Result};
use crate::ode::{Dopri5, State};
use crate::system::{Complex, HolomorphicSystem};
use crate::tolerances::Tolerances;

const BOX: f64 = 2.5;
/// Connections are looked for once `v` drops below this (scaled frame).
const DETECT_V: f64 = 0.1;
const PLANE_STEP: f64 = 0.05;
const CHART_STEP: f64 = 0.25;
/// Series tail below which the manifold series replaces integration.
const SERIES_TAIL: f64 = 1e-14;
/// Steps still taken toward a captured focus before settling for it.
const CAPTURE_STEPS: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Stop {
    Landed(usize),
    Connection(usize),
    Closed,
}

#[derive(Debug, Clone)]
pub(crate) struct Trace {
    /// Points in the scaled frame.
    pub points: Vec<ChartPoint>,
    pub stop: Stop,
}

pub(crate) struct Tracer {
    pub field: MonicField,
    pub scale: f64,
    pub saddles: Vec<EquatorSaddle>,
    pub manifolds: Vec<ManifoldSeries>,
    /// Distinct finite equilibria, scaled, in report order.
    pub equilibria: Vec<Complex>,
    /// For each focus, the direction (`±1`) in which it attracts.
    pub foci: Vec<Option<f64>>,
    pub tol: Tolerances,
}

/// Winding of the current stretch of a trace around every equilibrium.
#[derive(Debug, Clone)]
struct Capture {
    angles: Vec<f64>,
    winding: Vec<f64>,
}

fn wrap(a: f64) -> f64 {
    (a + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU) - std::f64::consts::PI
}

impl Tracer {
    pub fn new(system: &HolomorphicSystem, tol: &Tolerances) -> Self {
        let radius = system.root_radius();
        let scale = if radius > 0.0 { radius } else { 1.0 };
        let roots: Vec<Complex> = system.normalized_roots().iter().map(|r| r / scale).collect();
        let field = MonicField::new(&roots);
        let saddles = crate::compactify::saddles_for(&field);
        let manifolds = saddles.iter().map(|s| ManifoldSeries::compute(&field, s.chart)).collect();
        let entries = system.roots().entries;
        let equilibria: Vec<Complex> = entries.iter().map(|e| e.0 / scale).collect();
        let foci = entries
            .iter()
            .map(|&(r, m)| {
                let lambda = system.eval_derivative(r);
                let n = lambda.norm();
                let focus = m == 1 && lambda.re.abs() > tol.class * n && lambda.im.abs() > tol.class * n;
                focus.then(|| -lambda.re.signum())
            })
            .collect();
        Self { field, scale, saddles, manifolds, equilibria, foci, tol: *tol }
    }

    /// Seed on the in-disk manifold of a saddle.
    pub fn seed(&self, saddle: usize) -> ChartPoint {
        let v = self.tol.seed;
        let s = &self.saddles[saddle];
        ChartPoint { chart: s.chart, u: self.manifolds[saddle].eval(v), v }
    }

    /// Points on the manifold series from the seed distance out to where
    /// the series is still exact to working precision; the last point is
    /// where numerical integration takes over.
    pub fn seed_path(&self, saddle: usize) -> Vec<ChartPoint> {
        let m = &self.manifolds[saddle];
        let chart = self.saddles[saddle].chart;
        let start = self.tol.seed;
        let mut end = DETECT_V;
        while end > start && m.tail(end) > SERIES_TAIL {
            end *= 0.5;
        }
        if end <= start {
            return vec![self.seed(saddle)];
        }
        let count = 40;
        let ratio = (end / start).powf(1.0 / count as f64);
        (0..=count)
            .map(|k| {
                let v = if k == count { end } else { start * ratio.powi(k) };
                ChartPoint { chart, u: m.eval(v), v }
            })
            .collect()
    }

    fn to_plane_scaled(p: &ChartPoint) -> Complex {
        let (x, y) = p.to_plane().expect("off the equator");
        Complex::new(x, y)
    }

    /// Follow the orbit through `start` in direction `dir` (`±1`).
    ///
    /// With `winding_center` set, the trace stops after one full turn
    /// around that point.
    ///
    /// A full turn around an attracting focus that winds around no other
    /// equilibrium captures the trace. A closed orbit around a lone focus
    /// would have the non-real period `2πi/λ`, so a captured spiral can only
    /// accumulate on the focus; if it has not landed `CAPTURE_STEPS` later
    /// it is taken to land there. This keeps weak foci within budget.
    pub fn run(&self, start: ChartPoint, dir: f64, winding_center: Option<Complex>) -> Result<Trace> {
        let tol = &self.tol;
        let target_role = if dir > 0.0 { SeparatrixRole::Stable } else { SeparatrixRole::Unstable };
        let mut points = vec![start];
        let mut p = start;
        let mut t = 0.0;
        let mut steps = 0usize;
        let mut winding = 0.0;
        let mut last_angle = winding_center.map(|c| (Self::to_plane_scaled(&start) - c).arg());
        let mut capture = self.capture_start(&start);
        let mut captured: Option<(usize, usize)> = None;

        loop {
            let chart = p.chart;
            let field = &self.field;
            let f = move |y: State| -> State {
                if chart == ChartId::Plane {
                    let (a, b) = field.plane(y[0], y[1]);
                    let n = a.hypot(b);
                    if n == 0.0 {
                        [0.0, 0.0]
                    } else {
                        [dir * a / n, dir * b / n]
                    }
                } else {
                    let (a, b) = field.chart(chart, y[0], y[1]);
                    [dir * a, dir * b]
                }
            };
            let (atol, h_max) = if chart == ChartId::Plane {
                (tol.rtol * 1e-6, PLANE_STEP)
            } else {
                (tol.rtol * tol.seed * 1e-3, CHART_STEP)
            };
            let mut solver = Dopri5::new(tol.rtol, atol, 1e-3, h_max);
            let mut y = [p.u, p.v];
            let mut fy = f(y);
            let next = loop {
                if chart == ChartId::Plane {
                    // never step across a landing ball
                    let w = Complex::new(y[0], y[1]);
                    let near = self.equilibria.iter().map(|&e| (w - e).norm()).fold(f64::INFINITY, f64::min);
                    solver.h_max = (0.5 * near).clamp(0.5 * tol.land, PLANE_STEP);
                }
                if let Some((k, at)) = captured {
                    if steps >= at + CAPTURE_STEPS || steps >= tol.max_steps || t > tol.t_max {
                        return Ok(Trace { points, stop: Stop::Landed(k) });
                    }
                } else if steps >= tol.max_steps || t > tol.t_max {
                    return Err(Error::TraceBudgetExceeded { steps, time: t });
                }
                let step = solver
                    .step(&f, y, fy)
                    .ok_or(Error::TraceBudgetExceeded { steps, time: t })?;
                steps += 1;
                t += step.h;
                y = step.y1;
                fy = step.f1;
                let q = ChartPoint { chart, u: y[0], v: y[1] };
                points.push(q);

                if let (Some(c), Some(prev)) = (winding_center, last_angle) {
                    let a = (Self::to_plane_scaled(&q) - c).arg();
                    winding += wrap(a - prev);
                    last_angle = Some(a);
                    if winding.abs() >= std::f64::consts::TAU {
                        return Ok(Trace { points, stop: Stop::Closed });
                    }
                }

                if chart == ChartId::Plane {
                    let w = Complex::new(y[0], y[1]);
                    if let Some(k) = self.equilibria.iter().position(|&e| (w - e).norm() < tol.land) {
                        return Ok(Trace { points, stop: Stop::Landed(k) });
                    }
                    if captured.is_none() {
                        captured = self.track_capture(&mut capture, w, dir).map(|k| (k, steps));
                    }
                    if y[0].abs().max(y[1].abs()) > BOX {
                        break from_plane(ChartId::for_direction(y[0], y[1]), y[0], y[1])?;
                    }
                } else {
                    if let (None, Some((x, yy))) = (captured, q.to_plane()) {
                        captured = self.track_capture(&mut capture, Complex::new(x, yy), dir).map(|k| (k, steps));
                    }
                    if let Some(s) = self.connection_at(&q, target_role) {
                        self.splice(s, q.v, &mut points);
                        return Ok(Trace { points, stop: Stop::Connection(s) });
                    }
                    if y[1] > tol.v_max {
                        let (x, yy) = q.to_plane().expect("v > 0");
                        break ChartPoint::plane(x, yy);
                    }
                    if y[0].abs() > 1.0 {
                        let (x, yy) = q.to_plane().expect("v > 0");
                        break from_plane(ChartId::for_direction(x, yy), x, yy)?;
                    }
                }
            };
            p = next;
        }
    }

    fn capture_start(&self, p: &ChartPoint) -> Capture {
        let w = p.to_plane().map_or(Complex::new(0.0, 0.0), |(x, y)| Complex::new(x, y));
        Capture {
            angles: self.equilibria.iter().map(|&e| (w - e).arg()).collect(),
            winding: vec![0.0; self.equilibria.len()],
        }
    }

    /// Accumulate the winding up to `w`; returns the focus once a full turn
    /// around it encloses no other equilibrium. A turn that does starts a
    /// new stretch.
    fn track_capture(&self, c: &mut Capture, w: Complex, dir: f64) -> Option<usize> {
        for (k, &e) in self.equilibria.iter().enumerate() {
            let a = (w - e).arg();
            c.winding[k] += wrap(a - c.angles[k]);
            c.angles[k] = a;
        }
        let turned = (0..self.foci.len()).find(|&k| c.winding[k].abs() >= std::f64::consts::TAU)?;
        let alone = (0..self.foci.len()).all(|k| k == turned || c.winding[k].abs() < std::f64::consts::PI);
        if alone && self.foci[turned] == Some(dir) {
            return Some(turned);
        }
        c.winding.iter_mut().for_each(|x| *x = 0.0);
        None
    }

    fn connection_at(&self, q: &ChartPoint, role: SeparatrixRole) -> Option<usize> {
        if q.v >= DETECT_V || q.v <= 0.0 {
            return None;
        }
        let window = self.tol.connection_window;
        self.saddles.iter().position(|s| {
            s.chart == q.chart && s.role == role && {
                let m = &self.manifolds[s.index];
                m.tail(q.v) < 1e-12 && (q.u - m.eval(q.v)).abs() <= window * q.v
            }
        })
    }

    /// Continue along the target manifold series from `v` down to the seed
    /// distance.
    fn splice(&self, saddle: usize, v: f64, points: &mut Vec<ChartPoint>) {
        let s = &self.saddles[saddle];
        let m = &self.manifolds[saddle];
        let end = self.tol.seed;
        if v <= end {
            return;
        }
        let count = 40;
        let ratio = (end / v).powf(1.0 / count as f64);
        let mut vk = v;
        for _ in 0..count {
            vk *= ratio;
            points.push(ChartPoint { chart: s.chart, u: m.eval(vk), v: vk });
        }
    }
}
