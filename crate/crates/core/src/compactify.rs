//! Poincaré compactification: disk projection, equator saddles and the
//! four charts covering a neighbourhood of the equator.
//!
//! A chart with base direction `e₀` (one of `±1`, `±i`) uses coordinates
//! `z = s (e₀' + e₁ u) / v` where `(e₀', e₁, s)` is `(1, i, 1)` for
//! [`ChartId::U1`], `(i, 1, 1)` for [`ChartId::U2`] and the same with
//! `s = -1` for [`ChartId::V1`] and [`ChartId::V2`]. Multiplying the pushed
//! forward field by `v^(n-1)` gives a polynomial field that extends to the
//! equator `v = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{Complex, HolomorphicSystem};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartId {
    /// The finite plane; `(u, v) = (x, y)`.
    Plane,
    /// `x > 0`: `x = 1/v`, `y = u/v`.
    U1,
    /// `x < 0`: `x = -1/v`, `y = -u/v`.
    V1,
    /// `y > 0`: `x = u/v`, `y = 1/v`.
    U2,
    /// `y < 0`: `x = -u/v`, `y = -1/v`.
    V2,
}

impl ChartId {
    pub const EQUATOR: [ChartId; 4] = [ChartId::U1, ChartId::U2, ChartId::V1, ChartId::V2];

    /// `(e₀, e₁, s)` of an equator chart.
    fn params(self) -> (Complex, Complex, f64) {
        let one = Complex::new(1.0, 0.0);
        let i = Complex::new(0.0, 1.0);
        match self {
            ChartId::U1 => (one, i, 1.0),
            ChartId::U2 => (i, one, 1.0),
            ChartId::V1 => (one, i, -1.0),
            ChartId::V2 => (i, one, -1.0),
            ChartId::Plane => panic!("the plane is not an equator chart"),
        }
    }

    /// Whether the chart's second coordinate is measured along `x`.
    fn is_horizontal(self) -> bool {
        matches!(self, ChartId::U1 | ChartId::V1)
    }

    /// Equator chart whose axis direction is closest to that of `(x, y)`.
    pub fn for_direction(x: f64, y: f64) -> ChartId {
        if x.abs() >= y.abs() {
            if x >= 0.0 {
                ChartId::U1
            } else {
                ChartId::V1
            }
        } else if y >= 0.0 {
            ChartId::U2
        } else {
            ChartId::V2
        }
    }
}

/// Point of the compactified plane in one chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: ChartId,
    pub u: f64,
    pub v: f64,
}

impl ChartPoint {
    pub fn plane(x: f64, y: f64) -> Self {
        Self { chart: ChartId::Plane, u: x, v: y }
    }

    /// Plane coordinates; `None` on the equator.
    pub fn to_plane(&self) -> Option<(f64, f64)> {
        match self.chart {
            ChartId::Plane => Some((self.u, self.v)),
            _ if self.v == 0.0 => None,
            c => {
                let (e0, e1, s) = c.params();
                let z = s * (e0 + e1 * self.u) / self.v;
                Some((z.re, z.im))
            }
        }
    }

    /// Disk coordinates; well conditioned up to and including the equator.
    pub fn to_disk(&self) -> (f64, f64) {
        match self.chart {
            ChartId::Plane => to_disk(self.u, self.v),
            c => {
                let (e0, e1, s) = c.params();
                let zeta = s * (e0 + e1 * self.u);
                let d = (self.v * self.v + zeta.norm_sqr()).sqrt();
                (zeta.re / d, zeta.im / d)
            }
        }
    }

    /// Re-express the point in `chart`; fails if the point is not covered.
    pub fn in_chart(&self, chart: ChartId) -> Result<ChartPoint> {
        if chart == self.chart {
            return Ok(*self);
        }
        let (x, y) = match self.to_plane() {
            Some(p) => p,
            None => {
                // equator point: use the direction only
                let (dx, dy) = self.to_disk();
                return equator_point(chart, dx, dy);
            }
        };
        from_plane(chart, x, y)
    }

    /// Scale the underlying plane point by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> ChartPoint {
        match self.chart {
            ChartId::Plane => ChartPoint::plane(self.u * factor, self.v * factor),
            c => ChartPoint { chart: c, u: self.u, v: self.v / factor },
        }
    }
}

fn equator_point(chart: ChartId, dx: f64, dy: f64) -> Result<ChartPoint> {
    let (axis, other) = match chart {
        ChartId::U1 => (dx, dy),
        ChartId::V1 => (-dx, -dy),
        ChartId::U2 => (dy, dx),
        ChartId::V2 => (-dy, -dx),
        ChartId::Plane => return Err(Error::ChartDomainExceeded(0.0)),
    };
    if axis <= 0.0 {
        return Err(Error::ChartDomainExceeded(0.0));
    }
    Ok(ChartPoint { chart, u: other / axis, v: 0.0 })
}

/// Coordinates of the plane point `(x, y)` in `chart`.
pub fn from_plane(chart: ChartId, x: f64, y: f64) -> Result<ChartPoint> {
    let (axis, other) = match chart {
        ChartId::Plane => return Ok(ChartPoint::plane(x, y)),
        ChartId::U1 => (x, y),
        ChartId::V1 => (-x, -y),
        ChartId::U2 => (y, x),
        ChartId::V2 => (-y, -x),
    };
    if axis <= 0.0 {
        return Err(Error::ChartDomainExceeded(f64::INFINITY));
    }
    Ok(ChartPoint { chart, u: other / axis, v: 1.0 / axis })
}

/// Central projection onto the open unit disk.
pub fn to_disk(x: f64, y: f64) -> (f64, f64) {
    let d = (1.0 + x * x + y * y).sqrt();
    (x / d, y / d)
}

pub fn from_disk(x: f64, y: f64) -> Result<(f64, f64)> {
    let r2 = x * x + y * y;
    if !(r2 < 1.0) {
        return Err(Error::OutsideDisk);
    }
    let d = (1.0 - r2).sqrt();
    Ok((x / d, y / d))
}

/// Role of the in-disk separatrix of an equator saddle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparatrixRole {
    /// Orbits leave the saddle into the disk (unstable manifold).
    Unstable,
    /// Orbits reach the saddle from the disk (stable manifold).
    Stable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquatorSaddle {
    pub index: usize,
    #[serde(serialize_with = "crate::json::sig17")]
    pub theta: f64,
    pub chart: ChartId,
    pub role: SeparatrixRole,
}

/// Monic field `Π (z - r_k)` in any chart; `roots` repeat multiple roots.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicField {
    pub roots: Vec<Complex>,
}

impl MonicField {
    pub fn new(roots: &[Complex]) -> Self {
        Self { roots: roots.to_vec() }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn plane(&self, x: f64, y: f64) -> (f64, f64) {
        let z = Complex::new(x, y);
        let p: Complex = self.roots.iter().map(|&r| z - r).product();
        (p.re, p.im)
    }

    /// `A' = s^(n-1) Π (ζ - s v r_k)` and its partial derivatives in `u`, `v`.
    fn chart_poly(&self, chart: ChartId, u: f64, v: f64) -> (Complex, Complex, Complex) {
        let (e0, e1, s) = chart.params();
        let zeta = e0 + e1 * u;
        let factors: Vec<Complex> = self.roots.iter().map(|&r| zeta - s * v * r).collect();
        let mut a = Complex::new(1.0, 0.0);
        let mut du = Complex::new(0.0, 0.0);
        let mut dv = Complex::new(0.0, 0.0);
        for (k, &f) in factors.iter().enumerate() {
            du = du * f + a * e1;
            dv = dv * f - a * s * self.roots[k];
            a *= f;
        }
        let sign = s.powi(self.degree() as i32 - 1);
        (a * sign, du * sign, dv * sign)
    }

    /// Rescaled chart field (no domain check).
    pub fn chart(&self, chart: ChartId, u: f64, v: f64) -> (f64, f64) {
        if chart == ChartId::Plane {
            return self.plane(u, v);
        }
        let (a, _, _) = self.chart_poly(chart, u, v);
        if chart.is_horizontal() {
            (a.im - u * a.re, -v * a.re)
        } else {
            (a.re - u * a.im, -v * a.im)
        }
    }

    /// Jacobian of the chart field.
    pub fn chart_jacobian(&self, chart: ChartId, u: f64, v: f64) -> [[f64; 2]; 2] {
        let (a, du, dv) = self.chart_poly(chart, u, v);
        if chart.is_horizontal() {
            [[du.im - a.re - u * du.re, dv.im - u * dv.re], [-v * du.re, -a.re - v * dv.re]]
        } else {
            [[du.re - a.im - u * du.im, dv.re - u * dv.im], [-v * du.im, -a.im - v * dv.im]]
        }
    }
}

/// Equator chart and local `u = 0` position of saddle `j` of `2(n-1)`.
fn saddle_chart(degree: usize, j: usize) -> ChartId {
    match (degree, j) {
        (2, 0) | (3, 0) => ChartId::U1,
        (2, 1) | (3, 2) => ChartId::V1,
        (3, 1) => ChartId::U2,
        (3, 3) => ChartId::V2,
        _ => unreachable!("degree 2 or 3"),
    }
}

pub fn saddles_for(field: &MonicField) -> Vec<EquatorSaddle> {
    let n = field.degree();
    (0..2 * (n - 1))
        .map(|j| {
            let chart = saddle_chart(n, j);
            let jac = field.chart_jacobian(chart, 0.0, 0.0);
            // dv/dt = jac[1][1] v near the equator
            let role = if jac[1][1] < 0.0 { SeparatrixRole::Stable } else { SeparatrixRole::Unstable };
            EquatorSaddle {
                index: j,
                theta: j as f64 * std::f64::consts::PI / (n - 1) as f64,
                chart,
                role,
            }
        })
        .collect()
}

/// The `2(n-1)` hyperbolic saddles on the equator of a normalized system.
pub fn equator_saddles(system: &HolomorphicSystem) -> Vec<EquatorSaddle> {
    saddles_for(&MonicField::new(system.normalized_roots()))
}

/// Rescaled field of `system` in an equator chart, normalized frame.
pub fn chart_field(
    system: &HolomorphicSystem,
    chart: ChartId,
    u: f64,
    v: f64,
    tol: &Tolerances,
) -> Result<(f64, f64)> {
    if chart != ChartId::Plane {
        let bound = tol.v_max / (1.0 + system.root_radius());
        if !(0.0..=bound).contains(&v) {
            return Err(Error::ChartDomainExceeded(v));
        }
    }
    Ok(MonicField::new(system.normalized_roots()).chart(chart, u, v))
}

/// Eigenvalues `(along the equator, into the disk)` of the saddle.
pub fn saddle_eigenvalues(system: &HolomorphicSystem, saddle: &EquatorSaddle) -> (f64, f64) {
    let jac = MonicField::new(system.normalized_roots()).chart_jacobian(saddle.chart, 0.0, 0.0);
    (jac[0][0], jac[1][1])
}

/// Truncated series `u = h(v)` of the in-disk invariant manifold of an
/// equator saddle, in the saddle's chart.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSeries {
    /// `coeffs[j]` multiplies `v^j`; `coeffs[0] = 0`.
    pub coeffs: Vec<f64>,
}

type Series = Vec<Complex>;

fn series_mul(a: &Series, b: &Series) -> Series {
    let n = a.len();
    let mut out = vec![Complex::new(0.0, 0.0); n];
    for (i, &x) in a.iter().enumerate() {
        if x == Complex::new(0.0, 0.0) {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

impl ManifoldSeries {
    pub const ORDER: usize = 14;

    /// Residual series `h' g - f` of the invariance equation.
    fn residual(field: &MonicField, chart: ChartId, h: &[f64]) -> Vec<f64> {
        let n = h.len();
        let (e0, e1, s) = chart.params();
        let zero = Complex::new(0.0, 0.0);
        let mut a: Series = vec![zero; n];
        a[0] = Complex::new(1.0, 0.0);
        for &r in &field.roots {
            let mut fac: Series = h.iter().map(|&c| e1 * c).collect();
            fac[0] += e0;
            if n > 1 {
                fac[1] -= s * r;
            }
            a = series_mul(&a, &fac);
        }
        let sign = s.powi(field.degree() as i32 - 1);
        let a: Vec<Complex> = a.into_iter().map(|c| c * sign).collect();
        let (along, radial): (Vec<f64>, Vec<f64>) = if chart.is_horizontal() {
            (a.iter().map(|c| c.im).collect(), a.iter().map(|c| c.re).collect())
        } else {
            (a.iter().map(|c| c.re).collect(), a.iter().map(|c| c.im).collect())
        };
        let mul = |x: &[f64], y: &[f64]| -> Vec<f64> {
            let mut out = vec![0.0; n];
            for i in 0..n {
                for j in 0..n - i {
                    out[i + j] += x[i] * y[j];
                }
            }
            out
        };
        // f = along - h radial, g = -v radial
        let h_rad = mul(h, &radial);
        let f: Vec<f64> = (0..n).map(|i| along[i] - h_rad[i]).collect();
        let mut g = vec![0.0; n];
        for i in 1..n {
            g[i] = -radial[i - 1];
        }
        let mut dh = vec![0.0; n];
        for i in 1..n {
            dh[i - 1] = i as f64 * h[i];
        }
        let dhg = mul(&dh, &g);
        (0..n).map(|i| dhg[i] - f[i]).collect()
    }

    pub fn compute(field: &MonicField, chart: ChartId) -> Self {
        let n = Self::ORDER + 1;
        let mut h = vec![0.0; n];
        for j in 1..n {
            let r0 = Self::residual(field, chart, &h)[j];
            h[j] = 1.0;
            let r1 = Self::residual(field, chart, &h)[j];
            h[j] = -r0 / (r1 - r0);
        }
        Self { coeffs: h }
    }

    pub fn eval(&self, v: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * v + c)
    }

    /// Size of the last retained term relative to `v`.
    pub fn tail(&self, v: f64) -> f64 {
        let n = self.coeffs.len() - 1;
        (self.coeffs[n] * v.powi(n as i32)).abs() / v.abs().max(f64::MIN_POSITIVE)
    }
}
