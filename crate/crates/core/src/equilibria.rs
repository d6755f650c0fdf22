//! Local classification of finite equilibria from `λ = 𝒫'(z₀)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{Complex, HolomorphicSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
}

/// Direction of rotation; counterclockwise iff `Im λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rotation {
    Ccw,
    Cw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquilibriumKind {
    DicriticalNode {
        stability: Stability,
        marginal: bool,
    },
    Focus {
        stability: Stability,
        rotation: Rotation,
    },
    IsochronousCenter {
        rotation: Rotation,
        omega: f64,
        marginal: bool,
    },
    Degenerate {
        multiplicity: usize,
        elliptic_sectors: usize,
        /// `(p, q)` of the common tangent line `p x + q y = 0`; absent for
        /// roots of multiplicity three.
        tangent_line: Option<(f64, f64)>,
    },
}

impl EquilibriumKind {
    pub fn is_center(&self) -> bool {
        matches!(self, Self::IsochronousCenter { .. })
    }

    pub fn is_node(&self) -> bool {
        matches!(self, Self::DicriticalNode { .. })
    }

    pub fn is_focus(&self) -> bool {
        matches!(self, Self::Focus { .. })
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Self::Degenerate { .. })
    }

    pub fn stability(&self) -> Option<Stability> {
        match self {
            Self::DicriticalNode { stability, .. } | Self::Focus { stability, .. } => {
                Some(*stability)
            }
            _ => None,
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            Self::DicriticalNode { .. } => "node",
            Self::Focus { .. } => "focus",
            Self::IsochronousCenter { .. } => "center",
            Self::Degenerate { .. } => "degenerate",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub location: Complex,
    pub multiplicity: usize,
    pub lambda: Complex,
    pub kind: EquilibriumKind,
}

fn stability_of(re: f64) -> Stability {
    if re < 0.0 {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

fn rotation_of(im: f64) -> Rotation {
    if im > 0.0 {
        Rotation::Ccw
    } else {
        Rotation::Cw
    }
}

/// Kind of a simple equilibrium with eigenvalue `λ`.
pub fn kind_from_lambda(lambda: Complex, tol_class: f64) -> EquilibriumKind {
    let scale = lambda.norm();
    let (alpha, beta) = (lambda.re, lambda.im);
    if beta == 0.0 || beta.abs() <= tol_class * scale {
        EquilibriumKind::DicriticalNode {
            stability: stability_of(alpha),
            marginal: beta != 0.0,
        }
    } else if alpha == 0.0 || alpha.abs() <= tol_class * scale {
        EquilibriumKind::IsochronousCenter {
            rotation: rotation_of(beta),
            omega: beta,
            marginal: alpha != 0.0,
        }
    } else {
        EquilibriumKind::Focus {
            stability: stability_of(alpha),
            rotation: rotation_of(beta),
        }
    }
}

pub fn classify_equilibrium(
    system: &HolomorphicSystem,
    root: (Complex, usize),
    tol_class: f64,
) -> Result<EquilibriumReport> {
    let (location, multiplicity) = root;
    if multiplicity == 1 {
        let lambda = system.eval_derivative(location);
        if lambda.norm() == 0.0 {
            return Err(Error::ZeroLambdaOnSimpleRoot(location));
        }
        return Ok(EquilibriumReport {
            location,
            multiplicity,
            lambda,
            kind: kind_from_lambda(lambda, tol_class),
        });
    }

    // Near a root of multiplicity two, ż ≈ c (z - z₀)^2 and orbits are
    // tangent to the line Im(c (z - z₀)) = 0.
    let tangent_line = if multiplicity == 2 {
        let c = system.eval_second_derivative(location) / 2.0;
        Some((-c.im, -c.re))
    } else {
        None
    };
    Ok(EquilibriumReport {
        location,
        multiplicity,
        lambda: Complex::new(0.0, 0.0),
        kind: EquilibriumKind::Degenerate {
            multiplicity,
            elliptic_sectors: 2 * (multiplicity - 1),
            tangent_line,
        },
    })
}

/// Classify every distinct root of the system, in root order.
pub fn classify_all(system: &HolomorphicSystem, tol_class: f64) -> Result<Vec<EquilibriumReport>> {
    system
        .roots()
        .entries
        .into_iter()
        .map(|e| classify_equilibrium(system, e, tol_class))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyVerdict {
    pub applicable: bool,
    pub passed: bool,
    pub center_count: usize,
    pub node_count: usize,
    /// Sine of the angle spanned by the three equilibria when they are all
    /// centers or all nodes.
    pub collinearity: Option<f64>,
    pub failures: Vec<String>,
}

/// Check the global center/node count rule and collinearity for cubic
/// systems with three simple roots.
pub fn global_consistency(
    reports: &[EquilibriumReport],
    degree: usize,
    tol_geom: f64,
) -> ConsistencyVerdict {
    let center_count = reports.iter().filter(|r| r.kind.is_center()).count();
    let node_count = reports.iter().filter(|r| r.kind.is_node()).count();
    let mut verdict = ConsistencyVerdict {
        applicable: false,
        passed: true,
        center_count,
        node_count,
        collinearity: None,
        failures: Vec::new(),
    };
    if degree != 3 || reports.len() != 3 || reports.iter().any(|r| r.multiplicity != 1) {
        return verdict;
    }
    verdict.applicable = true;
    for (count, what) in [(center_count, "center"), (node_count, "node")] {
        if count == 2 {
            verdict.passed = false;
            verdict
                .failures
                .push(format!("{what} count is 2; expected 0, 1 or 3"));
        }
    }
    if center_count == 3 || node_count == 3 {
        let d1 = reports[1].location - reports[0].location;
        let d2 = reports[2].location - reports[0].location;
        let sine = (d1.conj() * d2).im.abs() / (d1.norm() * d2.norm());
        verdict.collinearity = Some(sine);
        if sine > tol_geom {
            verdict.passed = false;
            verdict
                .failures
                .push(format!("equilibria not collinear (sine {sine:e})"));
        }
    }
    verdict
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn sys(roots: &[Complex]) -> HolomorphicSystem {
        HolomorphicSystem::monic(roots).unwrap()
    }

    #[test]
    fn quadratic_nodes() {
        let s = sys(&[c(0.0, 0.0), c(2.0, 0.0)]);
        let r = classify_all(&s, 1e-10).unwrap();
        assert_eq!(r[0].lambda, c(-2.0, 0.0));
        assert_eq!(
            r[0].kind,
            EquilibriumKind::DicriticalNode { stability: Stability::Stable, marginal: false }
        );
        assert_eq!(
            r[1].kind,
            EquilibriumKind::DicriticalNode { stability: Stability::Unstable, marginal: false }
        );
    }

    #[test]
    fn double_root_cubic_center() {
        let s = sys(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)]);
        let r = classify_all(&s, 1e-10).unwrap();
        assert_eq!(r[1].lambda, c(0.0, 2.0));
        assert_eq!(
            r[1].kind,
            EquilibriumKind::IsochronousCenter { rotation: Rotation::Ccw, omega: 2.0, marginal: false }
        );
        match r[0].kind {
            EquilibriumKind::Degenerate { multiplicity, elliptic_sectors, tangent_line } => {
                assert_eq!((multiplicity, elliptic_sectors), (2, 2));
                // b x + a y = 0 with z₂ = a + bi = 1 + i
                assert_eq!(tangent_line, Some((1.0, 1.0)));
            }
            ref k => panic!("{k:?}"),
        }
    }

    #[test]
    fn tangent_line_matches_b_a_form() {
        let (a, b) = (1.5, -0.25);
        let s = sys(&[c(0.0, 0.0), c(0.0, 0.0), c(a, b)]);
        let r = classify_all(&s, 1e-10).unwrap();
        match r[0].kind {
            EquilibriumKind::Degenerate { tangent_line: Some((p, q)), .. } => {
                assert_eq!((p, q), (b, a));
            }
            ref k => panic!("{k:?}"),
        }
    }

    #[test]
    fn triple_root() {
        let s = sys(&[c(0.0, 0.0); 3]);
        let r = classify_all(&s, 1e-10).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(
            r[0].kind,
            EquilibriumKind::Degenerate { multiplicity: 3, elliptic_sectors: 4, tangent_line: None }
        );
    }

    #[test]
    fn zero_lambda_on_simple_root_is_an_error() {
        let s = sys(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let err = classify_equilibrium(&s, (c(0.0, 0.0), 1), 1e-10);
        assert!(matches!(err, Err(Error::ZeroLambdaOnSimpleRoot(_))));
    }

    #[test]
    fn marginal_center_flag() {
        let k = kind_from_lambda(c(1e-14, 3.0), 1e-10);
        assert_eq!(
            k,
            EquilibriumKind::IsochronousCenter { rotation: Rotation::Ccw, omega: 3.0, marginal: true }
        );
        let k = kind_from_lambda(c(1e-6, 3.0), 1e-10);
        assert!(k.is_focus());
    }

    #[test]
    fn consistency_examples() {
        let s = sys(&[c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]);
        let v = global_consistency(&classify_all(&s, 1e-10).unwrap(), 3, 1e-9);
        assert!(v.applicable && v.passed);
        assert_eq!(v.center_count, 3);
        assert!(v.collinearity.unwrap() <= 1e-15);

        let s = sys(&[c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 1.0)]);
        let r = classify_all(&s, 1e-10).unwrap();
        let lambdas: Vec<Complex> = r.iter().map(|e| e.lambda).collect();
        assert_eq!(lambdas, vec![c(-1.0, -1.0), c(2.0, 1.0), c(1.0, 3.0)]);
        let v = global_consistency(&r, 3, 1e-9);
        assert!(v.passed && v.center_count == 0);

        let s = sys(&[c(0.0, 0.0), c(0.0, 2.0)]);
        let v = global_consistency(&classify_all(&s, 1e-10).unwrap(), 2, 1e-9);
        assert!(!v.applicable && v.passed);
    }

    #[test]
    fn forged_two_center_report_fails() {
        let s = sys(&[c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]);
        let mut r = classify_all(&s, 1e-10).unwrap();
        r[2].kind = EquilibriumKind::Focus { stability: Stability::Stable, rotation: Rotation::Cw };
        let v = global_consistency(&r, 3, 1e-9);
        assert!(!v.passed);
    }
}
