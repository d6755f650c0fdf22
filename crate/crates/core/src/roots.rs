//! Closed-form roots of monic complex quadratics and cubics.
//!
//! Multiple roots are detected structurally (a critical point of the
//! polynomial that is also a zero) instead of by comparing the outputs of
//! the general formula, which lose half their digits near a double root.

use num_complex::Complex64;

/// Root with its multiplicity.
pub type RootEntry = (Complex64, usize);

/// Coefficient magnitude scale `max |c_k|^(1/k)` of a monic polynomial given
/// highest degree first (the leading 1 included).
pub fn root_scale(monic: &[Complex64]) -> f64 {
    monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max)
}

/// Evaluate a polynomial given highest degree first.
pub fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Expand `Π (z - r_k)` into monic coefficients, highest degree first.
pub fn expand(roots: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for &r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (i, &c) in out.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * r;
        }
        out = next;
    }
    out
}

fn quadratic_pair(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = b * b - 4.0 * c;
    let mut sq = disc.sqrt();
    if (b.conj() * sq).re < 0.0 {
        sq = -sq;
    }
    let q = -(b + sq) / 2.0;
    if q.norm() == 0.0 {
        (q, q)
    } else {
        (q, c / q)
    }
}

/// Roots of `z^2 + b z + c`, clustered with separation threshold `sep`
/// relative to the coefficient scale.
pub fn solve_monic_quadratic(b: Complex64, c: Complex64, sep: f64) -> Vec<RootEntry> {
    let scale = root_scale(&[Complex64::new(1.0, 0.0), b, c]);
    let disc = b * b - 4.0 * c;
    if disc.norm().sqrt() <= sep * scale {
        return vec![(-b / 2.0, 2)];
    }
    let (r1, r2) = quadratic_pair(b, c);
    vec![(r1, 1), (r2, 1)]
}

/// Roots of `z^3 + a z^2 + b z + c`.
pub fn solve_monic_cubic(a: Complex64, b: Complex64, c: Complex64, sep: f64) -> Vec<RootEntry> {
    let one = Complex64::new(1.0, 0.0);
    let coeffs = [one, a, b, c];
    let scale = root_scale(&coeffs);
    let shift = -a / 3.0;
    // depressed t^3 + p t + q with z = t + shift
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    if scale == 0.0 || (p.norm().sqrt() <= sep * scale && q.norm().cbrt() <= sep * scale) {
        return vec![(shift, 3)];
    }

    // Critical points of the cubic; a double root sits on one of them.
    let (w1, w2) = quadratic_pair(2.0 * a / 3.0, b / 3.0);
    for w in [w1, w2] {
        let r3 = -a - 2.0 * w;
        let gap = (w - r3).norm();
        if gap == 0.0 {
            continue;
        }
        let separation = 2.0 * (horner(&coeffs, w).norm() / gap).sqrt();
        if separation <= sep * scale {
            return vec![(w, 2), (r3, 1)];
        }
    }

    let half_q = q / 2.0;
    let root_disc = (half_q * half_q + p * p * p / 27.0).sqrt();
    let cand_a = -half_q + root_disc;
    let cand_b = -half_q - root_disc;
    let u3 = if cand_a.norm() >= cand_b.norm() { cand_a } else { cand_b };
    let u = u3.powf(1.0 / 3.0);
    let omega = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let mut roots = Vec::with_capacity(3);
    let mut uk = u;
    for _ in 0..3 {
        let t = if uk.norm() == 0.0 { uk } else { uk - p / (3.0 * uk) };
        roots.push(polish(&coeffs, t + shift));
        uk *= omega;
    }
    roots.into_iter().map(|r| (r, 1)).collect()
}

fn polish(coeffs: &[Complex64], mut z: Complex64) -> Complex64 {
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .take(coeffs.len() - 1)
        .enumerate()
        .map(|(i, &c)| c * (coeffs.len() - 1 - i) as f64)
        .collect();
    for _ in 0..3 {
        let f = horner(coeffs, z);
        let d = horner(&deriv, z);
        if d.norm() == 0.0 {
            break;
        }
        let step = f / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
    }
    z
}
