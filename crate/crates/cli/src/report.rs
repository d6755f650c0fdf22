//! Analysis pipeline and the versioned JSON report.

use serde::Serialize;

use crportrait::compactify::{EquatorSaddle, SeparatrixRole};
use crportrait::darboux::AbsenceReason;
use crportrait::equilibria::EquilibriumKind;
use crportrait::topology::LimitObject;
use crportrait::{
    build_integral, center_region_type, classify_all, classify_portrait, global_consistency, rational_integral,
    separatrix_configuration, CenterType, Complex, ConsistencyVerdict, DarbouxIntegral, Error, EquilibriumReport,
    HolomorphicSystem, RationalIntegral, RationalOutcome, SeparatrixConfiguration, TopologicalClass, Tolerances,
};

use crate::args::Source;
use crate::literal::format_complex;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct ErrorEcho {
    pub code: &'static str,
    pub message: String,
}

impl From<&Error> for ErrorEcho {
    fn from(e: &Error) -> Self {
        Self { code: e.code(), message: e.to_string() }
    }
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub source: Source,
    pub degree: usize,
    pub leading: String,
    /// User-frame roots, repeated by multiplicity.
    pub roots: Vec<String>,
    /// User-frame coefficients, leading first.
    pub coefficients: Vec<String>,
    /// `w = scale (z - shift)`.
    pub normalization: Normalization,
    pub normalized_roots: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct Normalization {
    pub scale: String,
    pub shift: String,
}

#[derive(Debug, Serialize)]
pub struct EquilibriumEcho {
    pub index: usize,
    pub user_location: String,
    #[serde(flatten)]
    pub report: EquilibriumReport,
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DarbouxEcho {
    Ok {
        #[serde(flatten)]
        integral: DarbouxIntegral,
    },
    Error {
        #[serde(flatten)]
        error: ErrorEcho,
    },
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RationalEcho {
    Found {
        integral: RationalIntegral,
    },
    Absent {
        reason: AbsenceReason,
        #[serde(skip_serializing_if = "Option::is_none")]
        note: Option<&'static str>,
    },
    Undecided {
        frequencies: Vec<f64>,
        n_max: u64,
    },
    Error {
        #[serde(flatten)]
        error: ErrorEcho,
    },
}

pub const CONJECTURE_NOTE: &str =
    "a double root with a focus at the simple root is conjectured to admit no rational integral";

#[derive(Debug, Serialize)]
pub struct SeparatrixEcho {
    pub saddle: usize,
    pub role: SeparatrixRole,
    pub limit: LimitObject,
}

#[derive(Debug, Serialize)]
pub struct RegionEcho {
    pub index: usize,
    pub connections: Vec<(usize, usize)>,
    pub boundary_equilibria: Vec<usize>,
    pub interior_equilibria: Vec<usize>,
    pub bounded_by_connections: bool,
}

#[derive(Debug, Serialize)]
pub struct CenterEcho {
    pub equilibrium: usize,
    #[serde(rename = "type")]
    pub kind: CenterType,
}

#[derive(Debug, Serialize)]
pub struct TopologyEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<TopologicalClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_error: Option<ErrorEcho>,
    pub saddles: Vec<EquatorSaddle>,
    pub separatrices: Vec<SeparatrixEcho>,
    pub regions: Vec<RegionEcho>,
    pub center_types: Vec<CenterEcho>,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub input: InputEcho,
    pub equilibria: Vec<EquilibriumEcho>,
    pub consistency: ConsistencyVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub darboux: Option<DarbouxEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<RationalEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologyEcho>,
    pub timing: Timing,
}

fn literals(zs: impl IntoIterator<Item = Complex>) -> Vec<String> {
    zs.into_iter().map(format_complex).collect()
}

pub fn input_echo(system: &HolomorphicSystem, source: Source) -> InputEcho {
    let map = system.map();
    InputEcho {
        source,
        degree: system.degree(),
        leading: format_complex(system.leading()),
        roots: literals(system.user_roots().iter().copied()),
        coefficients: literals(system.user_coefficients()),
        normalization: Normalization { scale: format_complex(map.scale), shift: format_complex(map.shift) },
        normalized_roots: literals(system.normalized_roots().iter().copied()),
    }
}

pub struct Equilibria {
    pub reports: Vec<EquilibriumReport>,
    pub consistency: ConsistencyVerdict,
}

pub fn equilibria(system: &HolomorphicSystem, tol: &Tolerances) -> Result<Equilibria, Error> {
    let reports = classify_all(system, tol.class)?;
    let consistency = global_consistency(&reports, system.degree(), tol.geom);
    Ok(Equilibria { reports, consistency })
}

pub fn equilibrium_echo(system: &HolomorphicSystem, reports: &[EquilibriumReport]) -> Vec<EquilibriumEcho> {
    reports
        .iter()
        .enumerate()
        .map(|(index, r)| EquilibriumEcho {
            index,
            user_location: format_complex(system.map().to_user(r.location)),
            report: r.clone(),
        })
        .collect()
}

pub fn darboux(system: &HolomorphicSystem) -> DarbouxEcho {
    match build_integral(system) {
        Ok(integral) => DarbouxEcho::Ok { integral },
        Err(e) => DarbouxEcho::Error { error: (&e).into() },
    }
}

pub fn rational(system: &HolomorphicSystem, reports: &[EquilibriumReport], tol: &Tolerances) -> RationalEcho {
    match rational_integral(system, reports, tol) {
        Ok(RationalOutcome::Found { integral }) => RationalEcho::Found { integral },
        Ok(RationalOutcome::Absent { reason }) => RationalEcho::Absent {
            reason,
            note: (reason == AbsenceReason::DoubleRootConjecture).then_some(CONJECTURE_NOTE),
        },
        Err(Error::CommensurabilityUndecided(frequencies, n_max)) => RationalEcho::Undecided { frequencies, n_max },
        Err(e) => RationalEcho::Error { error: (&e).into() },
    }
}

/// Trace the configuration; trace-budget failures propagate, classification
/// failures are reported in place.
pub fn topology(system: &HolomorphicSystem, tol: &Tolerances) -> Result<(SeparatrixConfiguration, TopologyEcho), Error> {
    let config = separatrix_configuration(system, tol)?;
    let (class, class_error) = match classify_portrait(&config) {
        Ok(c) => (Some(c), None),
        Err(e @ Error::TraceBudgetExceeded { .. }) => return Err(e),
        Err(e) => (None, Some((&e).into())),
    };
    let center_types = config
        .equilibria
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r.kind, EquilibriumKind::IsochronousCenter { .. }))
        .filter_map(|(k, _)| center_region_type(&config, k).ok().map(|kind| CenterEcho { equilibrium: k, kind }))
        .collect();
    let echo = TopologyEcho {
        class,
        class_error,
        saddles: config.saddles.clone(),
        separatrices: config
            .separatrices
            .iter()
            .map(|s| SeparatrixEcho { saddle: s.saddle, role: s.role, limit: s.limit })
            .collect(),
        regions: config
            .regions
            .iter()
            .map(|r| RegionEcho {
                index: r.index,
                connections: r.connections.clone(),
                boundary_equilibria: r.boundary_equilibria.clone(),
                interior_equilibria: r.interior_equilibria.clone(),
                bounded_by_connections: r.bounded_by_connections,
            })
            .collect(),
        center_types,
    };
    Ok((config, echo))
}
