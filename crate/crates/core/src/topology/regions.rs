//! Canonical regions as the faces of the planar graph formed by the equator
//! arcs and the separatrices.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use super::trace::{Stop, Tracer};
use super::{disk_polyline, LimitObject, Separatrix};
use crate::compactify::{from_plane, ChartId, ChartPoint, SeparatrixRole};
use crate::equilibria::EquilibriumReport;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalRegion {
    pub index: usize,
    /// Saddle pairs of the saddle connections on the boundary.
    pub connections: Vec<(usize, usize)>,
    /// Finite equilibria on the boundary.
    pub boundary_equilibria: Vec<usize>,
    /// Equilibria strictly inside (centers).
    pub interior_equilibria: Vec<usize>,
    /// Whether the boundary consists of equator arcs and saddle connections only.
    pub bounded_by_connections: bool,
    /// One typical orbit, normalized frame.
    #[serde(serialize_with = "disk_polyline")]
    pub orbit: Vec<ChartPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EdgeKind {
    Arc,
    Separatrix,
    Connection(usize, usize),
}

struct Edge {
    from: usize,
    to: usize,
    kind: EdgeKind,
    /// Departure angles at `from` and at `to`.
    angles: (f64, f64),
    /// Disk polyline from `from` to `to`.
    points: Vec<(f64, f64)>,
}

fn arc_points(a: f64, b: f64) -> Vec<(f64, f64)> {
    let n = 64;
    (0..=n)
        .map(|k| {
            let t = a + (b - a) * k as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect()
}

fn winding_number(poly: &[(f64, f64)], p: (f64, f64)) -> f64 {
    let mut total = 0.0;
    for w in poly.windows(2).chain(std::iter::once(&[poly[poly.len() - 1], poly[0]][..])) {
        let a = (w[0].1 - p.1).atan2(w[0].0 - p.0);
        let b = (w[1].1 - p.1).atan2(w[1].0 - p.0);
        total += (b - a + PI).rem_euclid(TAU) - PI;
    }
    total / TAU
}

pub(crate) fn canonical_regions(
    tracer: &Tracer,
    equilibria: &[EquilibriumReport],
    separatrices: &[Separatrix],
) -> Result<Vec<CanonicalRegion>> {
    let saddles = &tracer.saddles;
    let ns = saddles.len();
    let vertex_of_eq = |k: usize| ns + k;
    let eq_disk: Vec<(f64, f64)> = equilibria
        .iter()
        .map(|r| crate::compactify::to_disk(r.location.re, r.location.im))
        .collect();

    let mut edges: Vec<Edge> = Vec::new();
    for j in 0..ns {
        let a = saddles[j].theta;
        let b = a + TAU / ns as f64;
        edges.push(Edge {
            from: j,
            to: (j + 1) % ns,
            kind: EdgeKind::Arc,
            angles: (a + PI / 2.0, b - PI / 2.0),
            points: arc_points(a, b),
        });
    }
    for s in separatrices {
        let theta = saddles[s.saddle].theta;
        let mut points = s.disk_points();
        match s.limit {
            LimitObject::FiniteEquilibrium(k) => {
                let loc = equilibria[k].location;
                let end = s.path.last().and_then(|p| p.to_plane()).unwrap_or((loc.re, loc.im));
                let arrival = (end.1 - loc.im).atan2(end.0 - loc.re);
                points.push(eq_disk[k]);
                edges.push(Edge {
                    from: s.saddle,
                    to: vertex_of_eq(k),
                    kind: EdgeKind::Separatrix,
                    angles: (theta + PI, arrival),
                    points,
                });
            }
            LimitObject::EquatorSaddle(m) => {
                let partner = &separatrices[m];
                if partner.limit != LimitObject::EquatorSaddle(s.saddle) {
                    return Err(Error::ConfigurationInconsistent(format!(
                        "saddle {} reaches saddle {m}, but not conversely",
                        s.saddle
                    )));
                }
                if s.role == SeparatrixRole::Unstable {
                    edges.push(Edge {
                        from: s.saddle,
                        to: m,
                        kind: EdgeKind::Connection(s.saddle, m),
                        angles: (theta + PI, saddles[m].theta + PI),
                        points,
                    });
                }
            }
        }
    }

    // Rotation system: outgoing half-edges sorted counterclockwise.
    let nv = ns + equilibria.len();
    let half_angle = |h: usize| -> f64 {
        let e = &edges[h / 2];
        let a = if h % 2 == 0 { e.angles.0 } else { e.angles.1 };
        a.rem_euclid(TAU)
    };
    let origin = |h: usize| if h % 2 == 0 { edges[h / 2].from } else { edges[h / 2].to };
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for h in 0..2 * edges.len() {
        rotation[origin(h)].push(h);
    }
    for r in &mut rotation {
        r.sort_by(|&a, &b| half_angle(a).total_cmp(&half_angle(b)).then(a.cmp(&b)));
    }
    let next = |h: usize| -> usize {
        let twin = h ^ 1;
        let r = &rotation[origin(twin)];
        let i = r.iter().position(|&x| x == twin).expect("half-edge in rotation");
        r[(i + r.len() - 1) % r.len()]
    };

    let mut seen = vec![false; 2 * edges.len()];
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for start in 0..2 * edges.len() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            face.push(h);
            h = next(h);
        }
        faces.push(face);
    }
    // The outer face runs along the equator clockwise.
    faces.retain(|f| !f.iter().any(|&h| h % 2 == 1 && edges[h / 2].kind == EdgeKind::Arc));
    // Deterministic order: by the first forward arc.
    faces.sort_by_key(|f| {
        f.iter()
            .filter(|&&h| h % 2 == 0 && edges[h / 2].kind == EdgeKind::Arc)
            .map(|&h| h / 2)
            .min()
            .unwrap_or(usize::MAX)
    });

    let boundary_vertices: Vec<bool> = (0..nv)
        .map(|v| edges.iter().any(|e| e.from == v || e.to == v))
        .collect();
    let mut regions = Vec::with_capacity(faces.len());
    for (index, face) in faces.iter().enumerate() {
        let mut poly: Vec<(f64, f64)> = Vec::new();
        let mut connections = Vec::new();
        let mut boundary_equilibria = Vec::new();
        let mut bounded_by_connections = true;
        for &h in face {
            let e = &edges[h / 2];
            if h % 2 == 0 {
                poly.extend(e.points.iter().copied());
            } else {
                poly.extend(e.points.iter().rev().copied());
            }
            match e.kind {
                EdgeKind::Connection(a, b) => {
                    if !connections.contains(&(a, b)) {
                        connections.push((a, b));
                    }
                }
                EdgeKind::Separatrix => {
                    bounded_by_connections = false;
                    let k = e.to - ns;
                    if !boundary_equilibria.contains(&k) {
                        boundary_equilibria.push(k);
                    }
                }
                EdgeKind::Arc => {}
            }
        }
        boundary_equilibria.sort_unstable();
        let interior_equilibria: Vec<usize> = (0..equilibria.len())
            .filter(|&k| !boundary_vertices[vertex_of_eq(k)])
            .filter(|&k| winding_number(&poly, eq_disk[k]).abs() > 0.5)
            .collect();

        let arc = face
            .iter()
            .filter(|&&h| h % 2 == 0 && edges[h / 2].kind == EdgeKind::Arc)
            .map(|&h| h / 2)
            .min()
            .ok_or_else(|| Error::ConfigurationInconsistent("region without equator arc".into()))?;
        let orbit = typical_orbit(tracer, arc, &interior_equilibria, equilibria)?;
        regions.push(CanonicalRegion {
            index,
            connections,
            boundary_equilibria,
            interior_equilibria,
            bounded_by_connections,
            orbit,
        });
    }
    Ok(regions)
}

/// Orbit through a point near the middle of equator arc `arc`.
fn typical_orbit(
    tracer: &Tracer,
    arc: usize,
    interior: &[usize],
    equilibria: &[EquilibriumReport],
) -> Result<Vec<ChartPoint>> {
    let ns = tracer.saddles.len();
    let phi = tracer.saddles[arc].theta + PI / ns as f64;
    let (x, y) = (20.0 * phi.cos(), 20.0 * phi.sin());
    let start = from_plane(ChartId::for_direction(x, y), x, y)?;
    let center = interior
        .iter()
        .find(|&&k| equilibria[k].kind.is_center())
        .map(|&k| tracer.equilibria[k]);
    let points: Vec<ChartPoint> = match center {
        Some(c) => {
            let out = tracer.run(start, 1.0, Some(c))?;
            debug_assert_eq!(out.stop, Stop::Closed);
            out.points
        }
        None => {
            let back = tracer.run(start, -1.0, None)?;
            let fwd = tracer.run(start, 1.0, None)?;
            back.points.into_iter().rev().chain(fwd.points.into_iter().skip(1)).collect()
        }
    };
    Ok(points.into_iter().map(|p| p.scaled(tracer.scale)).collect())
}
