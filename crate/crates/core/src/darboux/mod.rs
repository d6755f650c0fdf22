//! Darboux integrability of holomorphic systems.
//!
//! Invariants are the linear factors `z - z_k` (plus exponential factors
//! at a multiple root); their cofactors are polynomials in `z` alone, so the
//! real cofactor balance `Σ λ_k c_k + Σ conj(λ_k) conj(c_k) = 0` splits into
//! one complex equation per positive power of `z` and one real equation for
//! the constant term.

mod integral;
mod rational;

pub use integral::{
    build_integral, eval_integral, integral_residual, log_value, BranchTracker, DarbouxIntegral,
    Factor, FirstIntegral, Residual,
};
pub use rational::{
    commensurate_integers, rational_integral, residue_sum, AbsenceReason, CircleFactor, RationalIntegral,
    RationalOutcome,
};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{Complex, HolomorphicSystem};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum InvariantForm {
    /// `h = z - root`.
    Linear { root: Complex },
    /// `exp(1 / (z - root)^order)` at a multiple root.
    Exponential { root: Complex, order: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Invariant {
    pub form: InvariantForm,
    /// Cofactor coefficients, lowest power of `z` first, padded to the
    /// degree of the system.
    pub cofactor: Vec<Complex>,
}

/// Coefficients (lowest first) of `Π (z - r)` over `roots`.
fn product_lowest_first(roots: &[Complex]) -> Vec<Complex> {
    let mut out = vec![Complex::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex::new(0.0, 0.0); out.len() + 1];
        for (i, &c) in out.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        out = next;
    }
    out
}

/// `𝒫(z) / (z - root)^count` by removing factors from the product form.
fn quotient_by_root(system: &HolomorphicSystem, root: Complex, count: usize) -> Vec<Complex> {
    let mut rest: Vec<Complex> = system.normalized_roots().to_vec();
    for _ in 0..count {
        let pos = rest.iter().position(|&r| r == root).expect("root present");
        rest.remove(pos);
    }
    let mut co = product_lowest_first(&rest);
    co.resize(system.degree(), Complex::new(0.0, 0.0));
    co
}

pub fn build_invariants(system: &HolomorphicSystem) -> Vec<Invariant> {
    let roots = system.roots();
    let mut out: Vec<Invariant> = roots
        .entries
        .iter()
        .map(|&(root, _)| Invariant {
            form: InvariantForm::Linear { root },
            cofactor: quotient_by_root(system, root, 1),
        })
        .collect();
    for &(root, mult) in &roots.entries {
        if mult >= 2 {
            let order = (mult - 1) as u32;
            // d/dt exp(1/h^m) = -m 𝒫 / h^(m+1) · exp(1/h^m)
            let cofactor = quotient_by_root(system, root, mult)
                .into_iter()
                .map(|c| -(order as f64) * c)
                .collect();
            out.push(Invariant {
                form: InvariantForm::Exponential { root, order },
                cofactor,
            });
        }
    }
    out
}

/// Real matrix of the cofactor balance; unknowns are `(Re λ_k, Im λ_k)`.
fn balance_matrix(invariants: &[Invariant], degree: usize) -> DMatrix<f64> {
    let cols = 2 * invariants.len();
    let rows = (2 * (degree - 1) + 1).max(cols);
    let mut m = DMatrix::<f64>::zeros(rows, cols);
    for (k, inv) in invariants.iter().enumerate() {
        let c0 = inv.cofactor[0];
        // Re(λ c₀) = α p - β q
        m[(0, 2 * k)] = c0.re;
        m[(0, 2 * k + 1)] = -c0.im;
        for j in 1..degree {
            let c = inv.cofactor[j];
            let row = 1 + 2 * (j - 1);
            m[(row, 2 * k)] = c.re;
            m[(row, 2 * k + 1)] = -c.im;
            m[(row + 1, 2 * k)] = c.im;
            m[(row + 1, 2 * k + 1)] = c.re;
        }
    }
    m
}

/// Largest coefficient of `Σ λ_k c_k + conj` relative to `Σ |λ_k| |c_k|`.
pub fn balance_residual(invariants: &[Invariant], exponents: &[Complex], degree: usize) -> f64 {
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for j in 0..degree {
        let mut s = Complex::new(0.0, 0.0);
        for (inv, &l) in invariants.iter().zip(exponents) {
            s += l * inv.cofactor[j];
            scale = scale.max(l.norm() * inv.cofactor[j].norm());
        }
        let v = if j == 0 { 2.0 * s.re.abs() } else { s.norm() };
        worst = worst.max(v);
    }
    if scale == 0.0 {
        worst
    } else {
        worst / scale
    }
}

/// Closed-form exponents for each structural case; see [`solve_exponents`].
pub fn closed_form_exponents(system: &HolomorphicSystem, invariants: &[Invariant]) -> Vec<Complex> {
    let i = Complex::new(0.0, 1.0);
    let roots = system.roots();
    let degree = system.degree();
    match (degree, roots.max_multiplicity()) {
        (2, 1) => invariants
            .iter()
            .map(|inv| match inv.form {
                InvariantForm::Linear { root } => -i / system.eval_derivative(root),
                InvariantForm::Exponential { .. } => unreachable!("simple roots"),
            })
            .collect(),
        (3, 1) => invariants
            .iter()
            .map(|inv| match inv.form {
                InvariantForm::Linear { root } => i / system.eval_derivative(root),
                InvariantForm::Exponential { .. } => unreachable!("simple roots"),
            })
            .collect(),
        (3, 2) => {
            let z2 = roots.entries[1].0;
            let zb2 = z2.conj() * z2.conj();
            invariants
                .iter()
                .map(|inv| match inv.form {
                    InvariantForm::Linear { root } if root == Complex::new(0.0, 0.0) => i * zb2,
                    InvariantForm::Linear { .. } => -i * zb2,
                    InvariantForm::Exponential { .. } => -i * z2.conj() * z2.norm_sqr(),
                })
                .collect()
        }
        _ => invariants
            .iter()
            .map(|inv| match inv.form {
                InvariantForm::Linear { .. } => Complex::new(0.0, 0.0),
                InvariantForm::Exponential { .. } => i,
            })
            .collect(),
    }
}

/// Exponents `λ_k` with `Σ λ_k c_k + Σ conj(λ_k c_k) ≡ 0`.
///
/// The solution is computed as the null space of the real balance matrix
/// and then rescaled onto the closed form of its structural case:
/// `-i/𝒫'(z_k)` for quadratics, `i/𝒫'(z_k)` for cubics with simple roots,
/// `(i z̄₂², -i z̄₂², -i z̄₂|z₂|²)` for `z²(z - z₂)`, and `i` on the
/// exponential factor of `z²` and `z³`.
pub fn solve_exponents(system: &HolomorphicSystem, invariants: &[Invariant]) -> Result<Vec<Complex>> {
    let degree = system.degree();
    let m = balance_matrix(invariants, degree);
    let cols = m.ncols();
    let svd = m.svd(false, true);
    let v_t = svd.v_t.ok_or(Error::NoNontrivialSolution)?;
    let sigma_max = svd.singular_values.max();
    let threshold = 1e-10 * sigma_max.max(1e-300);
    let null: Vec<usize> = (0..cols)
        .filter(|&i| svd.singular_values[i] <= threshold)
        .collect();
    if null.is_empty() {
        return Err(Error::NoNontrivialSolution);
    }
    let closed = closed_form_exponents(system, invariants);
    let target: Vec<f64> = closed.iter().flat_map(|c| [c.re, c.im]).collect();

    // Project the closed form onto the numerical null space.
    let mut solution = vec![0.0; cols];
    for &row in &null {
        let basis: Vec<f64> = (0..cols).map(|c| v_t[(row, c)]).collect();
        let coeff: f64 = basis.iter().zip(&target).map(|(a, b)| a * b).sum();
        for (s, b) in solution.iter_mut().zip(&basis) {
            *s += coeff * b;
        }
    }
    let norm = solution.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NoNontrivialSolution);
    }
    // The projection reproduces the closed form up to roundoff; keep the
    // exact values when it does.
    let target_norm = target.iter().map(|v| v * v).sum::<f64>().sqrt();
    let gap = solution
        .iter()
        .zip(&target)
        .map(|(a, b)| (a - b).powi(2))
        .sum::<f64>()
        .sqrt();
    if gap <= 1e-9 * target_norm {
        return Ok(closed);
    }
    Ok(solution
        .chunks(2)
        .map(|p| Complex::new(p[0], p[1]))
        .collect())
}
