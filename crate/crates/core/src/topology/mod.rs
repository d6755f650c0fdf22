//! Separatrix configurations and global portrait classes.

mod classify;
mod period;
mod regions;
pub(crate) mod trace;

pub use classify::{center_region_type, classify_portrait, CenterType, TopologicalClass};
pub use period::{orbit_period, PeriodOutcome};
pub use regions::CanonicalRegion;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::compactify::{ChartPoint, EquatorSaddle, SeparatrixRole};
use crate::equilibria::{classify_all, EquilibriumReport};
use crate::error::Result;
use crate::system::HolomorphicSystem;
use crate::tolerances::Tolerances;
use trace::{Stop, Tracer};

/// α- or ω-limit of a separatrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum LimitObject {
    FiniteEquilibrium(usize),
    EquatorSaddle(usize),
}

/// Serialize a path as disk coordinates, decimated to at most 2000 points.
pub fn disk_polyline<S: Serializer>(path: &[ChartPoint], s: S) -> std::result::Result<S::Ok, S::Error> {
    let pts = decimate(path, 2000);
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        let (x, y) = p.to_disk();
        seq.serialize_element(&[crate::json::number(x), crate::json::number(y)])?;
    }
    seq.end()
}

/// Evenly spaced subset including both end points.
pub fn decimate(path: &[ChartPoint], max: usize) -> Vec<ChartPoint> {
    if path.len() <= max {
        return path.to_vec();
    }
    let last = path.len() - 1;
    (0..max).map(|k| path[k * last / (max - 1)]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Separatrix {
    pub saddle: usize,
    pub role: SeparatrixRole,
    pub limit: LimitObject,
    /// Points in the normalized frame, ordered from the saddle outwards.
    #[serde(serialize_with = "disk_polyline")]
    pub path: Vec<ChartPoint>,
}

impl Separatrix {
    /// Plane coordinates of the path points off the equator.
    pub fn plane_points(&self) -> Vec<(f64, f64)> {
        self.path.iter().filter_map(|p| p.to_plane()).collect()
    }

    pub fn disk_points(&self) -> Vec<(f64, f64)> {
        self.path.iter().map(|p| p.to_disk()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparatrixConfiguration {
    pub degree: usize,
    pub equilibria: Vec<EquilibriumReport>,
    pub saddles: Vec<EquatorSaddle>,
    pub separatrices: Vec<Separatrix>,
    pub regions: Vec<CanonicalRegion>,
}

fn to_normalized(points: Vec<ChartPoint>, scale: f64) -> Vec<ChartPoint> {
    points.into_iter().map(|p| p.scaled(scale)).collect()
}

fn separatrix_from(tracer: &Tracer, saddle: usize) -> Result<Separatrix> {
    let s = tracer.saddles[saddle];
    let dir = match s.role {
        SeparatrixRole::Unstable => 1.0,
        SeparatrixRole::Stable => -1.0,
    };
    let mut points = tracer.seed_path(saddle);
    let start = *points.last().expect("nonempty seed path");
    let out = tracer.run(start, dir, None)?;
    points.extend(out.points.into_iter().skip(1));
    let limit = match out.stop {
        Stop::Landed(k) => LimitObject::FiniteEquilibrium(k),
        Stop::Connection(j) => LimitObject::EquatorSaddle(j),
        Stop::Closed => unreachable!("no winding center given"),
    };
    Ok(Separatrix {
        saddle,
        role: s.role,
        limit,
        path: to_normalized(points, tracer.scale),
    })
}

/// Leading part of a path up to half its length on the disk.
fn first_half(path: &[ChartPoint]) -> &[ChartPoint] {
    let disk: Vec<(f64, f64)> = path.iter().map(|p| p.to_disk()).collect();
    let steps: Vec<f64> = disk.windows(2).map(|w| (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1)).collect();
    let half = 0.5 * steps.iter().sum::<f64>();
    let mut acc = 0.0;
    let end = steps.iter().position(|d| {
        acc += d;
        acc > half
    });
    &path[..=end.unwrap_or(path.len() - 1)]
}

/// A saddle connection is traced once from each end; integration error is
/// smallest near the starting saddle, so each copy keeps its own first half
/// and takes the second half from its partner.
fn stitch_connections(separatrices: Vec<Separatrix>) -> Vec<Separatrix> {
    let partner = |s: &Separatrix| match s.limit {
        LimitObject::EquatorSaddle(m) => separatrices
            .iter()
            .find(|t| t.saddle == m && t.limit == LimitObject::EquatorSaddle(s.saddle)),
        LimitObject::FiniteEquilibrium(_) => None,
    };
    separatrices
        .iter()
        .map(|s| match partner(s) {
            Some(t) => {
                let mut path = first_half(&s.path).to_vec();
                path.extend(first_half(&t.path).iter().rev());
                Separatrix { path, ..s.clone() }
            }
            None => s.clone(),
        })
        .collect()
}

/// Trace the in-disk separatrix of one equator saddle.
pub fn trace_separatrix(
    system: &HolomorphicSystem,
    saddle: &EquatorSaddle,
    tol: &Tolerances,
) -> Result<Separatrix> {
    separatrix_from(&Tracer::new(system, tol), saddle.index)
}

/// Trace every separatrix, find the canonical regions and sample one orbit
/// in each.
pub fn separatrix_configuration(
    system: &HolomorphicSystem,
    tol: &Tolerances,
) -> Result<SeparatrixConfiguration> {
    let equilibria = classify_all(system, tol.class)?;
    let tracer = Tracer::new(system, tol);
    let separatrices = (0..tracer.saddles.len())
        .map(|j| separatrix_from(&tracer, j))
        .collect::<Result<Vec<_>>>()?;
    let separatrices = stitch_connections(separatrices);
    let regions = regions::canonical_regions(&tracer, &equilibria, &separatrices)?;
    Ok(SeparatrixConfiguration {
        degree: system.degree(),
        equilibria,
        saddles: crate::compactify::equator_saddles(system),
        separatrices,
        regions,
    })
}
