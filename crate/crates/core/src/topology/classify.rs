use serde::{Deserialize, Serialize};

use super::{LimitObject, SeparatrixConfiguration};
use crate::compactify::SeparatrixRole;
use crate::equilibria::{EquilibriumKind, Stability};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TopologicalClass {
    QAntisaddlePair,
    QTwoCenters,
    QDegenerateDipole,
    CTripleDegenerate,
    CDoubleWithCenter,
    CDoubleWithSink,
    CDoubleWithSource,
    CThreeCenters,
    COneCenterSourceSink,
    CNoCenterSharedSink,
    CNoCenterSharedSource,
}

impl TopologicalClass {
    pub const ALL: [TopologicalClass; 11] = [
        Self::QAntisaddlePair,
        Self::QTwoCenters,
        Self::QDegenerateDipole,
        Self::CTripleDegenerate,
        Self::CDoubleWithCenter,
        Self::CDoubleWithSink,
        Self::CDoubleWithSource,
        Self::CThreeCenters,
        Self::COneCenterSourceSink,
        Self::CNoCenterSharedSink,
        Self::CNoCenterSharedSource,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::QAntisaddlePair => "Q_ANTISADDLE_PAIR",
            Self::QTwoCenters => "Q_TWO_CENTERS",
            Self::QDegenerateDipole => "Q_DEGENERATE_DIPOLE",
            Self::CTripleDegenerate => "C_TRIPLE_DEGENERATE",
            Self::CDoubleWithCenter => "C_DOUBLE_WITH_CENTER",
            Self::CDoubleWithSink => "C_DOUBLE_WITH_SINK",
            Self::CDoubleWithSource => "C_DOUBLE_WITH_SOURCE",
            Self::CThreeCenters => "C_THREE_CENTERS",
            Self::COneCenterSourceSink => "C_ONE_CENTER_SOURCE_SINK",
            Self::CNoCenterSharedSink => "C_NO_CENTER_SHARED_SINK",
            Self::CNoCenterSharedSource => "C_NO_CENTER_SHARED_SOURCE",
        }
    }
}

impl std::fmt::Display for TopologicalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for TopologicalClass {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown class {s}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CenterType {
    B1,
    B2,
}

fn inconsistent(msg: impl Into<String>) -> Error {
    Error::ConfigurationInconsistent(msg.into())
}

/// The finite equilibrium that two separatrices of `role` share, if any.
fn shared_limit(config: &SeparatrixConfiguration, role: SeparatrixRole) -> Option<usize> {
    let limits: Vec<usize> = config
        .separatrices
        .iter()
        .filter(|s| s.role == role)
        .filter_map(|s| match s.limit {
            LimitObject::FiniteEquilibrium(k) => Some(k),
            LimitObject::EquatorSaddle(_) => None,
        })
        .collect();
    limits
        .iter()
        .copied()
        .find(|k| limits.iter().filter(|&&m| m == *k).count() >= 2)
}

/// Check the traced limits against the local classification.
fn check_limits(config: &SeparatrixConfiguration) -> Result<()> {
    for s in &config.separatrices {
        if let LimitObject::FiniteEquilibrium(k) = s.limit {
            let kind = &config.equilibria[k].kind;
            let ok = match (kind, s.role) {
                (EquilibriumKind::IsochronousCenter { .. }, _) => false,
                (EquilibriumKind::Degenerate { .. }, _) => true,
                (k, SeparatrixRole::Unstable) => k.stability() == Some(Stability::Stable),
                (k, SeparatrixRole::Stable) => k.stability() == Some(Stability::Unstable),
            };
            if !ok {
                return Err(inconsistent(format!(
                    "separatrix of saddle {} ends at equilibrium {k} ({})",
                    s.saddle,
                    kind.short_name()
                )));
            }
        }
    }
    let has_center = config.equilibria.iter().any(|r| r.kind.is_center());
    let has_connection = config
        .separatrices
        .iter()
        .any(|s| matches!(s.limit, LimitObject::EquatorSaddle(_)));
    if has_center && !has_connection {
        return Err(inconsistent("centers present but no saddle connection traced"));
    }
    Ok(())
}

pub fn classify_portrait(config: &SeparatrixConfiguration) -> Result<TopologicalClass> {
    check_limits(config)?;
    let eq = &config.equilibria;
    let centers = eq.iter().filter(|r| r.kind.is_center()).count();
    let max_mult = eq.iter().map(|r| r.multiplicity).max().unwrap_or(0);
    let class = match config.degree {
        2 => {
            if max_mult == 2 {
                TopologicalClass::QDegenerateDipole
            } else if centers == 2 {
                TopologicalClass::QTwoCenters
            } else if centers == 0 {
                TopologicalClass::QAntisaddlePair
            } else {
                return Err(inconsistent("quadratic system with one center"));
            }
        }
        3 => match max_mult {
            3 => TopologicalClass::CTripleDegenerate,
            2 => {
                let simple = eq
                    .iter()
                    .find(|r| r.multiplicity == 1)
                    .ok_or_else(|| inconsistent("double root without simple root"))?;
                match (&simple.kind, simple.kind.stability()) {
                    (k, _) if k.is_center() => TopologicalClass::CDoubleWithCenter,
                    (_, Some(Stability::Stable)) => TopologicalClass::CDoubleWithSink,
                    (_, Some(Stability::Unstable)) => TopologicalClass::CDoubleWithSource,
                    _ => return Err(inconsistent("unexpected kind of the simple equilibrium")),
                }
            }
            _ => match centers {
                3 => TopologicalClass::CThreeCenters,
                1 => TopologicalClass::COneCenterSourceSink,
                0 => {
                    let sink = shared_limit(config, SeparatrixRole::Unstable);
                    let source = shared_limit(config, SeparatrixRole::Stable);
                    match (sink, source) {
                        (Some(_), None) => TopologicalClass::CNoCenterSharedSink,
                        (None, Some(_)) => TopologicalClass::CNoCenterSharedSource,
                        _ => {
                            return Err(inconsistent(
                                "no single equilibrium is shared by two separatrices",
                            ))
                        }
                    }
                }
                n => return Err(inconsistent(format!("{n} centers among three simple roots"))),
            },
        },
        n => return Err(Error::DegreeUnsupported(n)),
    };
    if class == TopologicalClass::CThreeCenters || class == TopologicalClass::QTwoCenters {
        let all_connected = config
            .separatrices
            .iter()
            .all(|s| matches!(s.limit, LimitObject::EquatorSaddle(_)));
        if !all_connected {
            return Err(inconsistent("every separatrix of an all-center system must be a connection"));
        }
    }
    Ok(class)
}

/// Number of saddle connections bounding the canonical region of a center.
pub fn center_region_type(config: &SeparatrixConfiguration, center_index: usize) -> Result<CenterType> {
    let report = config.equilibria.get(center_index).ok_or(Error::NotACenter(center_index))?;
    if !report.kind.is_center() {
        return Err(Error::NotACenter(center_index));
    }
    let region = config
        .regions
        .iter()
        .find(|r| r.interior_equilibria.contains(&center_index))
        .ok_or_else(|| inconsistent(format!("center {center_index} lies in no region")))?;
    if !region.bounded_by_connections {
        return Err(inconsistent(format!(
            "region of center {center_index} is not bounded by saddle connections"
        )));
    }
    match region.connections.len() {
        1 => Ok(CenterType::B1),
        2 => Ok(CenterType::B2),
        n => Err(inconsistent(format!("center region bounded by {n} connections"))),
    }
}
