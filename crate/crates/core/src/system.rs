//! Normalized holomorphic polynomial systems `ż = 𝒫(z)` of degree 2 or 3.
//!
//! Every system is stored in the normalized frame `w = s (z - z₁)` where the
//! polynomial becomes monic and has a root at the origin. The scale `s`
//! satisfies `s^(n-1) = a₀`, so for quadratics it is `a₀` itself and for
//! cubics the principal square root of `a₀`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{expand, horner, solve_monic_cubic, solve_monic_quadratic};

pub type Complex = Complex64;

/// Map from user coordinates to normalized ones: `w = scale * (z - shift)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub scale: Complex,
    pub shift: Complex,
}

impl AffineMap {
    pub fn identity() -> Self {
        Self {
            scale: Complex::new(1.0, 0.0),
            shift: Complex::new(0.0, 0.0),
        }
    }

    pub fn to_normalized(&self, z: Complex) -> Complex {
        self.scale * (z - self.shift)
    }

    pub fn to_user(&self, w: Complex) -> Complex {
        w / self.scale + self.shift
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }
}

/// Roots with multiplicities; multiplicities sum to the degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub entries: Vec<(Complex, usize)>,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn max_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.1).max().unwrap_or(0)
    }

    pub fn all_simple(&self) -> bool {
        self.max_multiplicity() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HolomorphicSystem {
    degree: usize,
    /// Normalized roots with repetition; the first is exactly zero and a
    /// multiple root, when present, comes first.
    roots: Vec<Complex>,
    /// Leading coefficient in the user frame.
    leading: Complex,
    /// Roots in the user frame, same order as `roots`.
    user_roots: Vec<Complex>,
    map: AffineMap,
}

fn check_finite(z: Complex) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Separation threshold used when multiplicities have to be recovered from
/// coefficients. Closed-form roots near a double root only carry half the
/// working precision, so the clustering radius is `sqrt(tol_mult)`.
pub fn coefficient_separation(tol_mult: f64) -> f64 {
    tol_mult.sqrt()
}

impl HolomorphicSystem {
    /// Build a system from user-frame coefficients, highest degree first.
    /// Leading zeros are dropped before the degree is checked.
    pub fn from_coefficients(coeffs: &[Complex], tol_mult: f64) -> Result<Self> {
        for &c in coeffs {
            check_finite(c)?;
        }
        let first = coeffs.iter().position(|c| c.norm() != 0.0);
        let Some(first) = first else {
            return Err(Error::ZeroLeadingCoefficient);
        };
        let coeffs = &coeffs[first..];
        let degree = coeffs.len() - 1;
        if degree != 2 && degree != 3 {
            return Err(Error::DegreeUnsupported(degree));
        }
        let leading = coeffs[0];
        let monic: Vec<Complex> = coeffs.iter().map(|&c| c / leading).collect();
        let sep = coefficient_separation(tol_mult);
        let found = if degree == 2 {
            solve_monic_quadratic(monic[1], monic[2], sep)
        } else {
            solve_monic_cubic(monic[1], monic[2], monic[3], sep)
        };
        let roots: Vec<Complex> = found
            .iter()
            .flat_map(|&(r, m)| std::iter::repeat(r).take(m))
            .collect();
        Self::from_roots(leading, &roots, tol_mult)
    }

    /// Build a system `a₀ Π (z - r_k)` from its user-frame roots.
    pub fn from_roots(leading: Complex, roots: &[Complex], tol_mult: f64) -> Result<Self> {
        check_finite(leading)?;
        for &r in roots {
            check_finite(r)?;
        }
        if leading.norm() == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let degree = roots.len();
        if degree != 2 && degree != 3 {
            return Err(Error::DegreeUnsupported(degree));
        }

        let scale = roots.iter().map(|r| r.norm()).fold(0.0, f64::max).max(1.0);
        let radius = tol_mult * scale;
        let mut clusters: Vec<(Complex, Vec<usize>)> = Vec::new();
        for (i, &r) in roots.iter().enumerate() {
            match clusters.iter_mut().find(|(c, _)| (c - r).norm() <= radius) {
                Some(cluster) => cluster.1.push(i),
                None => clusters.push((r, vec![i])),
            }
        }
        // The anchor is the cluster of maximal multiplicity closest to the
        // origin, earliest on ties.
        let anchor = clusters
            .iter()
            .enumerate()
            .min_by(|a, b| {
                b.1 .1
                    .len()
                    .cmp(&a.1 .1.len())
                    .then(a.1 .0.norm().total_cmp(&b.1 .0.norm()))
                    .then(a.0.cmp(&b.0))
            })
            .map(|(i, _)| i)
            .unwrap_or(0);
        let anchor_cluster = clusters.remove(anchor);
        clusters.insert(0, anchor_cluster);

        let shift = clusters[0].0;
        let s = if degree == 2 { leading } else { leading.sqrt() };
        let map = AffineMap { scale: s, shift };

        let mut user_roots = Vec::with_capacity(degree);
        let mut normalized = Vec::with_capacity(degree);
        for (rep, members) in &clusters {
            for _ in members {
                user_roots.push(*rep);
                normalized.push(if *rep == shift {
                    Complex::new(0.0, 0.0)
                } else {
                    map.to_normalized(*rep)
                });
            }
        }
        Ok(Self {
            degree,
            roots: normalized,
            leading,
            user_roots,
            map,
        })
    }

    /// Monic system with the given normalized roots (no clustering beyond
    /// exact equality; the first root must be zero).
    pub fn monic(roots: &[Complex]) -> Result<Self> {
        Self::from_roots(Complex::new(1.0, 0.0), roots, 0.0)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Normalized roots with repetition.
    pub fn normalized_roots(&self) -> &[Complex] {
        &self.roots
    }

    pub fn user_roots(&self) -> &[Complex] {
        &self.user_roots
    }

    pub fn leading(&self) -> Complex {
        self.leading
    }

    pub fn map(&self) -> &AffineMap {
        &self.map
    }

    /// Monic coefficients in the normalized frame, highest degree first.
    pub fn monic_coefficients(&self) -> Vec<Complex> {
        expand(&self.roots)
    }

    /// Coefficients in the user frame, highest degree first.
    pub fn user_coefficients(&self) -> Vec<Complex> {
        expand(&self.user_roots)
            .into_iter()
            .map(|c| c * self.leading)
            .collect()
    }

    /// Distinct normalized roots with multiplicities, in storage order.
    pub fn roots(&self) -> RootSet {
        let mut entries: Vec<(Complex, usize)> = Vec::new();
        for &r in &self.roots {
            match entries.iter_mut().find(|e| e.0 == r) {
                Some(e) => e.1 += 1,
                None => entries.push((r, 1)),
            }
        }
        RootSet { entries }
    }

    /// Largest normalized root modulus.
    pub fn root_radius(&self) -> f64 {
        self.roots.iter().map(|r| r.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.roots
            .iter()
            .fold(Complex::new(1.0, 0.0), |acc, &r| acc * (z - r))
    }

    /// `(Re 𝒫(x+iy), Im 𝒫(x+iy))`.
    pub fn eval_field(&self, x: f64, y: f64) -> (f64, f64) {
        let p = self.eval(Complex::new(x, y));
        (p.re, p.im)
    }

    /// `𝒫'(z₀)` from the product form.
    pub fn eval_derivative(&self, z0: Complex) -> Complex {
        let mut total = Complex::new(0.0, 0.0);
        for k in 0..self.roots.len() {
            let mut term = Complex::new(1.0, 0.0);
            for (j, &r) in self.roots.iter().enumerate() {
                if j != k {
                    term *= z0 - r;
                }
            }
            total += term;
        }
        total
    }

    /// `𝒫'' (z₀)`.
    pub fn eval_second_derivative(&self, z0: Complex) -> Complex {
        let co = self.monic_coefficients();
        let n = co.len() - 1;
        let d2: Vec<Complex> = co
            .iter()
            .take(n - 1)
            .enumerate()
            .map(|(i, &c)| c * ((n - i) * (n - i - 1)) as f64)
            .collect();
        horner(&d2, z0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn normalize_examples() {
        // z^2 - 2z
        let s = HolomorphicSystem::from_coefficients(&[c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 0.0)], 1e-9)
            .unwrap();
        let rs = s.roots();
        assert_eq!(rs.entries.len(), 2);
        assert!(rs.entries.iter().any(|e| e.0 == c(0.0, 0.0)));
        assert!(rs.entries.iter().any(|e| (e.0 - c(2.0, 0.0)).norm() < 1e-15));
        assert!(s.map().is_identity() || s.map().shift == c(0.0, 0.0));

        // z^3
        let s = HolomorphicSystem::from_coefficients(
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            1e-9,
        )
        .unwrap();
        assert_eq!(s.roots().entries, vec![(c(0.0, 0.0), 3)]);

        // 2(z-1)(z-3): w = 2(z-1) gives w(w-4)
        let s = HolomorphicSystem::from_coefficients(&[c(2.0, 0.0), c(-8.0, 0.0), c(6.0, 0.0)], 1e-9)
            .unwrap();
        let rs = s.normalized_roots();
        assert_eq!(rs[0], c(0.0, 0.0));
        assert!((rs[1] - c(4.0, 0.0)).norm() < 1e-12, "{rs:?}");
        assert_eq!(s.map().scale, c(2.0, 0.0));
        assert!((s.map().shift - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn degree_and_leading_errors() {
        let err = HolomorphicSystem::from_coefficients(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], 1e-9);
        assert_eq!(err, Err(Error::DegreeUnsupported(1)));
        let err = HolomorphicSystem::from_coefficients(&[c(0.0, 0.0); 3], 1e-9);
        assert_eq!(err, Err(Error::ZeroLeadingCoefficient));
        let err = HolomorphicSystem::from_roots(c(0.0, 0.0), &[c(0.0, 0.0), c(1.0, 0.0)], 1e-9);
        assert_eq!(err, Err(Error::ZeroLeadingCoefficient));
        let err = HolomorphicSystem::from_roots(c(1.0, 0.0), &[c(0.0, 0.0); 4], 1e-9);
        assert_eq!(err, Err(Error::DegreeUnsupported(4)));
        let err = HolomorphicSystem::from_roots(c(1.0, 0.0), &[c(f64::NAN, 0.0), c(1.0, 0.0)], 1e-9);
        assert_eq!(err, Err(Error::NonFinite));
    }

    #[test]
    fn roots_examples() {
        let s = HolomorphicSystem::monic(&[c(0.0, 0.0), c(0.0, 2.0)]).unwrap();
        assert_eq!(s.roots().entries, vec![(c(0.0, 0.0), 1), (c(0.0, 2.0), 1)]);
        let s = HolomorphicSystem::monic(&[c(0.0, 0.0); 3]).unwrap();
        assert_eq!(s.roots().entries, vec![(c(0.0, 0.0), 3)]);
        let s = HolomorphicSystem::monic(&[c(1.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.roots().entries, vec![(c(0.0, 0.0), 2), (c(1.0, 1.0), 1)]);
    }

    #[test]
    fn multiple_root_moves_to_origin() {
        let s = HolomorphicSystem::from_roots(c(1.0, 0.0), &[c(3.0, 0.0), c(1.0, 1.0), c(1.0, 1.0)], 1e-9)
            .unwrap();
        assert_eq!(s.normalized_roots()[0], c(0.0, 0.0));
        assert_eq!(s.normalized_roots()[1], c(0.0, 0.0));
        assert_eq!(s.normalized_roots()[2], c(2.0, -1.0));
    }

    #[test]
    fn cubic_scale_is_square_root_of_leading() {
        // -(z)(z-1)(z-2) with a0 = -1: w = i z, roots 0, i, 2i
        let s = HolomorphicSystem::from_roots(c(-1.0, 0.0), &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 1e-9)
            .unwrap();
        let w0 = c(0.3, -0.7);
        let z0 = s.map().to_user(w0);
        // ẇ = s ż must equal the monic normalized field
        let lhs = s.map().scale * s.leading() * (z0) * (z0 - 1.0) * (z0 - 2.0);
        assert!((lhs - s.eval(w0)).norm() < 1e-12);
    }

    #[test]
    fn field_and_derivative_examples() {
        let s = HolomorphicSystem::monic(&[c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(s.eval_field(1.0, 0.0), (-1.0, 0.0));
        assert_eq!(s.eval_derivative(c(0.0, 0.0)), c(-2.0, 0.0));

        let sq = HolomorphicSystem::monic(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        let (x, y) = (0.7, -1.3);
        let (p, q) = sq.eval_field(x, y);
        assert!((p - (x * x - y * y)).abs() < 1e-15 && (q - 2.0 * x * y).abs() < 1e-15);

        let cube = HolomorphicSystem::monic(&[c(0.0, 0.0); 3]).unwrap();
        assert_eq!(cube.eval_field(1.0, 1.0), (-2.0, 2.0));
        assert_eq!(cube.eval_derivative(c(0.0, 0.0)), c(0.0, 0.0));

        let s16 = HolomorphicSystem::monic(&[c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]).unwrap();
        assert_eq!(s16.eval_derivative(c(0.0, 0.0)), c(0.0, 4.0));
    }
}
