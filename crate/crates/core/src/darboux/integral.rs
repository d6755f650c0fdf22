use serde::{Deserialize, Serialize};

use super::{build_invariants, solve_exponents, InvariantForm, RationalIntegral};
use crate::error::{Error, Result};
use crate::poly2::{ComplexPoly2, Poly2};
use crate::system::HolomorphicSystem;

/// One multiplicative factor of a real first integral.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Factor {
    /// `((x - a)^2 + (y - b)^2)^exponent`
    Power {
        #[serde(serialize_with = "crate::json::sig17_pair")]
        center: (f64, f64),
        #[serde(serialize_with = "crate::json::sig17")]
        exponent: f64,
    },
    /// `exp(coefficient * θ)` with `θ` the angle of `(x - a, y - b)`.
    Angle {
        #[serde(serialize_with = "crate::json::sig17_pair")]
        center: (f64, f64),
        #[serde(serialize_with = "crate::json::sig17")]
        coefficient: f64,
    },
    /// `exp(numerator / denominator)`
    Exp { numerator: Poly2, denominator: Poly2 },
    /// `numerator / denominator` itself.
    Rational { numerator: Poly2, denominator: Poly2 },
}

/// Real Darboux integral in the normalized frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DarbouxIntegral {
    pub factors: Vec<Factor>,
}

/// Either kind of integral, for evaluation and residual checks.
#[derive(Debug, Clone, Copy)]
pub enum FirstIntegral<'a> {
    Darboux(&'a DarbouxIntegral),
    Rational(&'a RationalIntegral),
}

impl<'a> From<&'a DarbouxIntegral> for FirstIntegral<'a> {
    fn from(h: &'a DarbouxIntegral) -> Self {
        Self::Darboux(h)
    }
}

impl<'a> From<&'a RationalIntegral> for FirstIntegral<'a> {
    fn from(h: &'a RationalIntegral) -> Self {
        Self::Rational(h)
    }
}

impl FirstIntegral<'_> {
    pub fn factors(&self) -> Vec<Factor> {
        match self {
            Self::Darboux(h) => h.factors.clone(),
            Self::Rational(r) => r.factors(),
        }
    }
}

/// Residual `P H_x + Q H_y` and its size relative to the sum of the
/// magnitudes of the individual terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residual {
    pub value: f64,
    pub relative: f64,
}

/// Singular set guard: distance to any factor center, or `|N|`, `|D|`.
const SINGULAR_EPS: f64 = 1e-12;

fn angle_of(center: (f64, f64), x: f64, y: f64) -> f64 {
    (y - center.1).atan2(x - center.0)
}

/// Continuous continuation of every angle factor along a path.
#[derive(Debug, Clone)]
pub struct BranchTracker {
    centers: Vec<(f64, f64)>,
    angles: Vec<f64>,
}

impl BranchTracker {
    pub fn new(factors: &[Factor], x: f64, y: f64) -> Self {
        let centers: Vec<(f64, f64)> = factors
            .iter()
            .filter_map(|f| match f {
                Factor::Angle { center, .. } => Some(*center),
                _ => None,
            })
            .collect();
        let angles = centers.iter().map(|&c| angle_of(c, x, y)).collect();
        Self { centers, angles }
    }

    /// Move to `(x, y)`, assuming the step winds less than half a turn
    /// around each center.
    pub fn advance(&mut self, x: f64, y: f64) {
        for (a, &c) in self.angles.iter_mut().zip(&self.centers) {
            let target = angle_of(c, x, y);
            let mut delta = target - a.rem_euclid(std::f64::consts::TAU);
            delta = (delta + std::f64::consts::PI).rem_euclid(std::f64::consts::TAU)
                - std::f64::consts::PI;
            *a += delta;
        }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }
}

/// `log|H|` and the sign of `H`.
pub fn log_value(factors: &[Factor], x: f64, y: f64, angles: Option<&[f64]>) -> Result<(f64, f64)> {
    let mut log = 0.0;
    let mut sign = 1.0;
    let mut angle_idx = 0;
    for f in factors {
        match f {
            Factor::Power { center, exponent } => {
                let r2 = (x - center.0).powi(2) + (y - center.1).powi(2);
                if r2 <= SINGULAR_EPS * SINGULAR_EPS {
                    return Err(Error::SingularPoint { x, y });
                }
                log += exponent * r2.ln();
            }
            Factor::Angle { center, coefficient } => {
                let theta = match angles {
                    Some(a) => a[angle_idx],
                    None => angle_of(*center, x, y),
                };
                angle_idx += 1;
                log += coefficient * theta;
            }
            Factor::Exp { numerator, denominator } => {
                let d = denominator.eval(x, y);
                if d.abs() <= SINGULAR_EPS {
                    return Err(Error::SingularPoint { x, y });
                }
                log += numerator.eval(x, y) / d;
            }
            Factor::Rational { numerator, denominator } => {
                let n = numerator.eval(x, y);
                let d = denominator.eval(x, y);
                if d.abs() <= SINGULAR_EPS || n == 0.0 {
                    return Err(Error::SingularPoint { x, y });
                }
                log += (n / d).abs().ln();
                sign *= (n / d).signum();
            }
        }
    }
    Ok((log, sign))
}

/// Value of the integral at `(x, y)`.
///
/// Angle factors use the principal branch unless `branch_path` is given, in
/// which case the angles are continued along the polyline (starting from
/// the principal values at its first point) and then to `(x, y)`.
pub fn eval_integral<'a>(
    h: impl Into<FirstIntegral<'a>>,
    x: f64,
    y: f64,
    branch_path: Option<&[(f64, f64)]>,
) -> Result<f64> {
    let factors = h.into().factors();
    let angles = branch_path.filter(|p| !p.is_empty()).map(|path| {
        let mut tracker = BranchTracker::new(&factors, path[0].0, path[0].1);
        for &(px, py) in &path[1..] {
            tracker.advance(px, py);
        }
        tracker.advance(x, y);
        tracker.angles
    });
    // A zero of a rational numerator is a regular value.
    if let [Factor::Rational { numerator, denominator }] = factors.as_slice() {
        let d = denominator.eval(x, y);
        if d.abs() <= SINGULAR_EPS {
            return Err(Error::SingularPoint { x, y });
        }
        return Ok(numerator.eval(x, y) / d);
    }
    let (log, sign) = log_value(&factors, x, y, angles.as_deref())?;
    Ok(sign * log.exp())
}

/// `P H_x + Q H_y` from the log-derivatives of the factors.
pub fn integral_residual<'a>(
    h: impl Into<FirstIntegral<'a>>,
    system: &HolomorphicSystem,
    x: f64,
    y: f64,
) -> Result<Residual> {
    let h = h.into();
    let factors = h.factors();
    let (p, q) = system.eval_field(x, y);
    let mut total = 0.0;
    let mut scale = 0.0;
    let mut push = |gx: f64, gy: f64, sign: f64| {
        total += sign * (p * gx + q * gy);
        scale += (p * gx).abs() + (q * gy).abs();
    };
    for f in &factors {
        match f {
            Factor::Power { center, exponent } => {
                let (dx, dy) = (x - center.0, y - center.1);
                let r2 = dx * dx + dy * dy;
                if r2 <= SINGULAR_EPS * SINGULAR_EPS {
                    return Err(Error::SingularPoint { x, y });
                }
                push(2.0 * exponent * dx / r2, 2.0 * exponent * dy / r2, 1.0);
            }
            Factor::Angle { center, coefficient } => {
                let (dx, dy) = (x - center.0, y - center.1);
                let r2 = dx * dx + dy * dy;
                if r2 <= SINGULAR_EPS * SINGULAR_EPS {
                    return Err(Error::SingularPoint { x, y });
                }
                push(-coefficient * dy / r2, coefficient * dx / r2, 1.0);
            }
            Factor::Exp { numerator, denominator } => {
                let n = numerator.eval(x, y);
                let d = denominator.eval(x, y);
                if d.abs() <= SINGULAR_EPS {
                    return Err(Error::SingularPoint { x, y });
                }
                push(numerator.dx().eval(x, y) / d, numerator.dy().eval(x, y) / d, 1.0);
                push(
                    n * denominator.dx().eval(x, y) / (d * d),
                    n * denominator.dy().eval(x, y) / (d * d),
                    -1.0,
                );
            }
            Factor::Rational { numerator, denominator } => {
                let n = numerator.eval(x, y);
                let d = denominator.eval(x, y);
                if d.abs() <= SINGULAR_EPS || n.abs() <= SINGULAR_EPS {
                    return Err(Error::SingularPoint { x, y });
                }
                push(numerator.dx().eval(x, y) / n, numerator.dy().eval(x, y) / n, 1.0);
                push(
                    denominator.dx().eval(x, y) / d,
                    denominator.dy().eval(x, y) / d,
                    -1.0,
                );
            }
        }
    }
    let relative = if scale == 0.0 { total.abs() } else { total.abs() / scale };
    let value = match eval_integral(h, x, y, None) {
        Ok(v) if v.is_finite() => v * total,
        _ => total,
    };
    Ok(Residual { value, relative })
}

/// Positive rescaling applied to the exponents before assembly, chosen so
/// that the assembled integral coincides with the classical closed forms
/// (`(x²+y²)^b ((x-a)²+(y-b)²)^{-b} e^{2a(θ₂-θ₁)}` for quadratics and the
/// square root of the raw product for `z²(z - z₂)`).
fn assembly_scale(system: &HolomorphicSystem) -> f64 {
    let roots = system.roots();
    match (system.degree(), roots.max_multiplicity()) {
        (2, 1) => roots.entries[1].0.norm_sqr(),
        (3, 2) => 0.5,
        _ => 1.0,
    }
}

pub fn build_integral(system: &HolomorphicSystem) -> Result<DarbouxIntegral> {
    let invariants = build_invariants(system);
    let exponents = solve_exponents(system, &invariants)?;
    let s = assembly_scale(system);
    let biggest = exponents.iter().map(|l| l.norm()).fold(0.0, f64::max) * s;
    let negligible = |v: f64| v.abs() <= 1e-14 * biggest;

    let mut factors = Vec::new();
    let mut exp_factors = Vec::new();
    for (inv, &raw) in invariants.iter().zip(&exponents) {
        let lambda = raw * s;
        match inv.form {
            InvariantForm::Linear { root } => {
                let center = (root.re, root.im);
                if !negligible(lambda.re) {
                    factors.push(Factor::Power { center, exponent: lambda.re });
                }
                if !negligible(lambda.im) {
                    factors.push(Factor::Angle { center, coefficient: -2.0 * lambda.im });
                }
            }
            InvariantForm::Exponential { root, order } => {
                // 2 Re(λ / w^m) = 2 Re(λ conj(w)^m) / |w|^(2m)
                let w_bar_m = ComplexPoly2::linear(root.re, root.im).conj().pow(order);
                let numerator = (w_bar_m.re.scale(2.0 * lambda.re) - w_bar_m.im.scale(2.0 * lambda.im))
                    .chop(1e-14);
                if numerator.is_zero() {
                    continue;
                }
                let denominator = Poly2::circle(root.re, root.im).pow(order);
                exp_factors.push(Factor::Exp { numerator, denominator });
            }
        }
    }
    if factors.is_empty() && exp_factors.len() == 1 {
        // z² and z³: exp(R) is replaced by R itself.
        if let Factor::Exp { numerator, denominator } = exp_factors.remove(0) {
            return Ok(DarbouxIntegral {
                factors: vec![Factor::Rational {
                    numerator: numerator.normalized(),
                    denominator: denominator.normalized(),
                }],
            });
        }
    }
    factors.extend(exp_factors);
    Ok(DarbouxIntegral { factors })
}
