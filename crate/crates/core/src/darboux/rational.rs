use serde::{Deserialize, Serialize};

use super::integral::{integral_residual, Factor};
use super::build_integral;
use crate::equilibria::EquilibriumReport;
use crate::error::{Error, Result};
use crate::poly2::{ComplexPoly2, Poly2};
use crate::system::{Complex, HolomorphicSystem};
use crate::tolerances::Tolerances;

/// `((x - a)^2 + (y - b)^2)^exponent` with an integer exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircleFactor {
    #[serde(serialize_with = "crate::json::sig17_pair")]
    pub center: (f64, f64),
    pub exponent: i64,
}

/// Exact rational first integral in the normalized frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum RationalIntegral {
    /// Product of circle factors; the exponents sum to zero.
    CircleProduct { factors: Vec<CircleFactor> },
    /// `numerator / denominator`, both normalized to leading coefficient one.
    Quotient { numerator: Poly2, denominator: Poly2 },
}

impl RationalIntegral {
    pub fn factors(&self) -> Vec<Factor> {
        match self {
            Self::CircleProduct { factors } => factors
                .iter()
                .map(|f| Factor::Power { center: f.center, exponent: f.exponent as f64 })
                .collect(),
            Self::Quotient { numerator, denominator } => vec![Factor::Rational {
                numerator: numerator.clone(),
                denominator: denominator.clone(),
            }],
        }
    }

    /// Numerator and denominator as explicit polynomials.
    pub fn as_quotient(&self) -> (Poly2, Poly2) {
        match self {
            Self::CircleProduct { factors } => {
                let mut num = Poly2::constant(1.0);
                let mut den = Poly2::constant(1.0);
                for f in factors {
                    let c = Poly2::circle(f.center.0, f.center.1).pow(f.exponent.unsigned_abs() as u32);
                    if f.exponent > 0 {
                        num = &num * &c;
                    } else {
                        den = &den * &c;
                    }
                }
                (num, den)
            }
            Self::Quotient { numerator, denominator } => (numerator.clone(), denominator.clone()),
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        super::eval_integral(self, x, y, None)
    }
}

/// Why no rational integral is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AbsenceReason {
    /// At least one equilibrium is a focus.
    FocusPresent,
    /// `z²(z - z₂)` with a focus at `z₂`: conjectured to have none.
    DoubleRootConjecture,
    /// `z²(z - z₂)` with a node or center at `z₂`: undecided.
    DoubleRootUnresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RationalOutcome {
    Found { integral: RationalIntegral },
    Absent { reason: AbsenceReason },
}

/// Best rational approximation `p/q` of `x` with `q <= n_max` from the
/// continued-fraction convergents, if one is within `tol` (relative).
fn rational_approx(x: f64, n_max: u64, tol: f64) -> Option<(i64, i64)> {
    let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a.abs() > 1e15 {
            return None;
        }
        let a = a as i64;
        let (p2, q2) = (a * p1 + p0, a * q1 + q0);
        if q2 as u64 > n_max {
            return None;
        }
        if (x - p2 as f64 / q2 as f64).abs() <= tol * x.abs().max(1.0) {
            return Some((p2, q2));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Coprime integers proportional to `values`, with the first one positive.
pub fn commensurate_integers(values: &[f64], n_max: u64) -> Result<Vec<i64>> {
    let undecided = || Error::CommensurabilityUndecided(values.to_vec(), n_max);
    let Some(&first) = values.first() else {
        return Ok(Vec::new());
    };
    if first == 0.0 || values.iter().any(|v| !v.is_finite()) {
        return Err(undecided());
    }
    let mut fracs = Vec::with_capacity(values.len());
    for &v in values {
        fracs.push(rational_approx(v / first, n_max, 1e-9).ok_or_else(undecided)?);
    }
    let lcm = fracs.iter().fold(1i64, |l, &(_, q)| l / gcd(l, q) * q);
    let mut ints: Vec<i64> = fracs.iter().map(|&(p, q)| p * (lcm / q)).collect();
    let g = ints.iter().fold(0, |g, &m| gcd(g, m));
    for m in &mut ints {
        *m /= g;
    }
    Ok(ints)
}

/// `Σ 1/𝒫'(z_k)` over simple roots; vanishes for cubics with simple roots.
pub fn residue_sum(system: &HolomorphicSystem) -> Complex {
    system
        .roots()
        .entries
        .iter()
        .map(|&(r, _)| 1.0 / system.eval_derivative(r))
        .sum()
}

/// `Im W / Re W` with `W = Π h_k^{m_k}` for positive exponents and the
/// conjugate power for negative ones, i.e. `tan Σ m_k θ_k`.
fn angle_quotient(centers: &[Complex], exponents: &[i64]) -> (Poly2, Poly2) {
    let mut w = ComplexPoly2::one();
    for (&c, &m) in centers.iter().zip(exponents) {
        let h = ComplexPoly2::linear(c.re, c.im);
        let h = if m > 0 { h } else { h.conj() };
        w = w.mul(&h.pow(m.unsigned_abs() as u32));
    }
    (w.im.chop(1e-14), w.re.chop(1e-14))
}

fn quotient(numerator: Poly2, denominator: Poly2) -> RationalIntegral {
    RationalIntegral::Quotient {
        numerator: numerator.normalized(),
        denominator: denominator.normalized(),
    }
}

/// Sample points for the residual check, kept away from the roots.
fn probe_points(system: &HolomorphicSystem) -> Vec<(f64, f64)> {
    let r = 1.0 + system.root_radius();
    (0..12)
        .map(|k| {
            let t = 0.37 + k as f64 * 0.53;
            let rho = r * (0.31 + 0.17 * k as f64);
            (rho * t.cos(), rho * t.sin())
        })
        .collect()
}

fn verify(system: &HolomorphicSystem, h: &RationalIntegral) -> Result<()> {
    let mut checked = 0;
    for (x, y) in probe_points(system) {
        match integral_residual(h, system, x, y) {
            Ok(r) if r.relative <= 1e-8 => checked += 1,
            Ok(r) => {
                return Err(Error::ConfigurationInconsistent(format!(
                    "rational integral fails the residual check at ({x}, {y}): {:e}",
                    r.relative
                )))
            }
            Err(Error::SingularPoint { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    if checked == 0 {
        return Err(Error::ConfigurationInconsistent("no regular probe point".into()));
    }
    Ok(())
}

/// Exact rational first integral when one is known to exist.
///
/// Centers give a product of circles with integer exponents proportional to
/// `1/ω_k`; nodes give `tan` of the corresponding integer combination of
/// angles; `z²` and `z³` give their classical quotients.
pub fn rational_integral(
    system: &HolomorphicSystem,
    reports: &[EquilibriumReport],
    tol: &Tolerances,
) -> Result<RationalOutcome> {
    let found = |integral: RationalIntegral| -> Result<RationalOutcome> {
        verify(system, &integral)?;
        Ok(RationalOutcome::Found { integral })
    };
    let roots = system.roots();
    match roots.max_multiplicity() {
        1 => {}
        2 if system.degree() == 3 => {
            let simple = reports.iter().find(|r| r.multiplicity == 1).expect("simple root");
            let reason = if simple.kind.is_focus() {
                AbsenceReason::DoubleRootConjecture
            } else {
                AbsenceReason::DoubleRootUnresolved
            };
            return Ok(RationalOutcome::Absent { reason });
        }
        _ => {
            let h = build_integral(system)?;
            let [Factor::Rational { numerator, denominator }] = h.factors.as_slice() else {
                unreachable!("single-root systems assemble to one rational factor")
            };
            return found(quotient(numerator.clone(), denominator.clone()));
        }
    }

    if reports.iter().any(|r| r.kind.is_focus()) {
        return Ok(RationalOutcome::Absent { reason: AbsenceReason::FocusPresent });
    }
    let centers: Vec<Complex> = reports.iter().map(|r| r.location).collect();
    let all_centers = reports.iter().all(|r| r.kind.is_center());
    let all_nodes = reports.iter().all(|r| r.kind.is_node());
    if !all_centers && !all_nodes {
        // Mixed centers and nodes without a focus cannot occur (the
        // reciprocals of λ sum to zero); treat it as absent for safety.
        return Ok(RationalOutcome::Absent { reason: AbsenceReason::FocusPresent });
    }
    let weights: Vec<f64> = reports
        .iter()
        .map(|r| if all_centers { 1.0 / r.lambda.im } else { 1.0 / r.lambda.re })
        .collect();
    let m = commensurate_integers(&weights, tol.n_max)?;
    if m.iter().sum::<i64>() != 0 {
        return Err(Error::CommensurabilityUndecided(weights, tol.n_max));
    }
    if all_centers {
        let factors = centers
            .iter()
            .zip(&m)
            .map(|(c, &exponent)| CircleFactor { center: (c.re, c.im), exponent })
            .collect();
        found(RationalIntegral::CircleProduct { factors })
    } else {
        let (num, den) = angle_quotient(&centers, &m);
        found(quotient(num, den))
    }
}
