//! Real polynomials in `(x, y)`, enough to carry rational integrals and the
//! rational exponents of exponential factors.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Sparse polynomial; keys are `(deg_x, deg_y)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "Vec<Term>", into = "Vec<Term>")]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), f64>,
}

/// Serialized monomial `coef * x^i * y^j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub x: u32,
    pub y: u32,
    #[serde(serialize_with = "crate::json::sig17")]
    pub coef: f64,
}

impl From<Vec<Term>> for Poly2 {
    fn from(terms: Vec<Term>) -> Self {
        let mut p = Poly2::zero();
        for t in terms {
            p.add_term(t.x, t.y, t.coef);
        }
        p
    }
}

impl From<Poly2> for Vec<Term> {
    fn from(p: Poly2) -> Self {
        p.ordered_terms()
    }
}

/// Terms in graded order, e.g. `x^2 + y^2 - 2*x`.
impl std::fmt::Display for Poly2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.ordered_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in terms.iter().enumerate() {
            let sign = if t.coef < 0.0 { "-" } else { "+" };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let c = t.coef.abs();
            let mut parts = Vec::new();
            if c != 1.0 || t.x + t.y == 0 {
                parts.push(format!("{c}"));
            }
            for (var, e) in [("x", t.x), ("y", t.y)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    e => parts.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1.0)
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, 1.0)
    }

    pub fn monomial(i: u32, j: u32, c: f64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// `(x - a)^2 + (y - b)^2`.
    pub fn circle(a: f64, b: f64) -> Self {
        let dx = Self::x() - Self::constant(a);
        let dy = Self::y() - Self::constant(b);
        &dx * &dx + &dy * &dy
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: f64) {
        if c == 0.0 {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(0.0);
        *e += c;
        if *e == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> f64 {
        self.terms.get(&(i, j)).copied().unwrap_or(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i + j == 0)
    }

    /// Terms in graded order: total degree descending, then `x` power descending.
    pub fn ordered_terms(&self) -> Vec<Term> {
        let mut out: Vec<Term> = self
            .terms
            .iter()
            .map(|(&(x, y), &coef)| Term { x, y, coef })
            .collect();
        out.sort_by(|a, b| (b.x + b.y).cmp(&(a.x + a.y)).then(b.x.cmp(&a.x)));
        out
    }

    /// Leading coefficient in the graded order.
    pub fn leading_coefficient(&self) -> f64 {
        self.ordered_terms().first().map(|t| t.coef).unwrap_or(0.0)
    }

    pub fn scale(&self, c: f64) -> Self {
        let mut p = Self::zero();
        for (&(i, j), &v) in &self.terms {
            p.add_term(i, j, v * c);
        }
        p
    }

    /// Scaled copy whose leading coefficient is one.
    pub fn normalized(&self) -> Self {
        let lc = self.leading_coefficient();
        if lc == 0.0 {
            self.clone()
        } else {
            self.scale(1.0 / lc)
        }
    }

    /// Drop coefficients below `eps` times the largest one.
    pub fn chop(&self, eps: f64) -> Self {
        let big = self.terms.values().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut p = Self::zero();
        for (&(i, j), &v) in &self.terms {
            if v.abs() > eps * big {
                p.add_term(i, j, v);
            }
        }
        p
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }

    pub fn dx(&self) -> Self {
        let mut p = Self::zero();
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                p.add_term(i - 1, j, c * i as f64);
            }
        }
        p
    }

    pub fn dy(&self) -> Self {
        let mut p = Self::zero();
        for (&(i, j), &c) in &self.terms {
            if j > 0 {
                p.add_term(i, j - 1, c * j as f64);
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(1.0);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest absolute coefficient difference to `other` after both are
    /// normalized; used for structural comparison up to a constant factor.
    pub fn projective_distance(&self, other: &Self) -> f64 {
        let a = self.normalized();
        let b = other.normalized();
        let keys: std::collections::BTreeSet<_> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.into_iter()
            .map(|&(i, j)| (a.coefficient(i, j) - b.coefficient(i, j)).abs())
            .fold(0.0, f64::max)
    }
}

impl<'a> Add<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut p = self.clone();
        for (&(i, j), &c) in &rhs.terms {
            p.add_term(i, j, c);
        }
        p
    }
}

impl Add for Poly2 {
    type Output = Poly2;
    fn add(self, rhs: Poly2) -> Poly2 {
        &self + &rhs
    }
}

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        self.scale(-1.0)
    }
}

impl Sub for Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: Poly2) -> Poly2 {
        &self + &rhs.scale(-1.0)
    }
}

impl<'a> Mul<&'a Poly2> for &'a Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut p = Poly2::zero();
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &rhs.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }
}

impl Mul for Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: Poly2) -> Poly2 {
        &self * &rhs
    }
}

/// Complex-valued polynomial `re + i im` in real variables `(x, y)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexPoly2 {
    pub re: Poly2,
    pub im: Poly2,
}

impl ComplexPoly2 {
    pub fn one() -> Self {
        Self {
            re: Poly2::constant(1.0),
            im: Poly2::zero(),
        }
    }

    /// `z - c` with `z = x + i y`.
    pub fn linear(c_re: f64, c_im: f64) -> Self {
        Self {
            re: Poly2::x() - Poly2::constant(c_re),
            im: Poly2::y() - Poly2::constant(c_im),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}
