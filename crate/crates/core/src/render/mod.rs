//! Phase portraits on the Poincaré disk as SVG.
//!
//! Geometry is drawn in the normalized frame. For a leading coefficient off
//! the positive real axis the user-frame picture is this one rotated by
//! `arg(a₀)/(n-1)` (clockwise); the angle is recorded in the document
//! description.

mod contour;

pub use contour::{level_curves, Grid, LevelCurve};

use std::fmt::Write as _;

use crate::compactify::{ChartPoint, SeparatrixRole};
use crate::darboux::RationalIntegral;
use crate::equilibria::{EquilibriumKind, Stability};
use crate::system::HolomorphicSystem;
use crate::topology::{decimate, SeparatrixConfiguration};

pub const CANVAS: f64 = 800.0;
pub const DISK_RADIUS: f64 = 380.0;
const MAX_POINTS: usize = 2000;

const EQUATOR: &str = "#000000";
const SEPARATRIX: &str = "#c0392b";
const ORBIT: &str = "#7f8c8d";
const LEVEL: &str = "#2e86c1";
const GLYPH: &str = "#000000";

/// Level curves to overlay.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSpec {
    pub integral: RationalIntegral,
    pub levels: Vec<f64>,
    pub grid: Grid,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Draw the typical orbit of each canonical region.
    pub orbits: bool,
    /// Arrowheads along orbits and separatrices.
    pub arrows: bool,
    pub levels: Option<LevelSpec>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self { orbits: true, arrows: true, levels: None }
    }
}

/// Real in the fixed 6-decimal format, without negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000".to_string()
    } else {
        s
    }
}

/// Disk point to canvas coordinates. Points are pulled in just far enough
/// that 6-decimal rounding cannot push them outside the disk.
fn canvas((x, y): (f64, f64)) -> (f64, f64) {
    const R_MAX: f64 = 1.0 - 2e-9;
    let r = x.hypot(y);
    let (x, y) = if r > R_MAX { (x * R_MAX / r, y * R_MAX / r) } else { (x, y) };
    (CANVAS / 2.0 + DISK_RADIUS * x, CANVAS / 2.0 - DISK_RADIUS * y)
}

fn polyline(out: &mut String, disk: &[(f64, f64)], attrs: &str) {
    if disk.len() < 2 {
        return;
    }
    let pts: Vec<String> = disk
        .iter()
        .map(|&p| {
            let (x, y) = canvas(p);
            format!("{},{}", num(x), num(y))
        })
        .collect();
    let _ = writeln!(out, r#"<polyline points="{}" {attrs}/>"#, pts.join(" "));
}

/// Small arrowhead pointing along increasing index, placed at the most
/// interior point of the middle half of `disk`.
fn arrow(out: &mut String, disk: &[(f64, f64)], color: &str) {
    if disk.len() < 4 {
        return;
    }
    let (lo, hi) = (disk.len() / 4, 3 * disk.len() / 4);
    let mid = (lo..hi)
        .min_by(|&a, &b| disk[a].0.hypot(disk[a].1).total_cmp(&disk[b].0.hypot(disk[b].1)))
        .unwrap_or(lo);
    if disk[mid].0.hypot(disk[mid].1) > 0.95 {
        return;
    }
    let (ax, ay) = canvas(disk[mid]);
    let (bx, by) = canvas(disk[mid + 1]);
    let (dx, dy) = (bx - ax, by - ay);
    let len = dx.hypot(dy);
    if len == 0.0 {
        return;
    }
    let (ux, uy) = (dx / len, dy / len);
    let size = 7.0;
    let tip = (ax + ux * size, ay + uy * size);
    let left = (ax - uy * size * 0.5, ay + ux * size * 0.5);
    let right = (ax + uy * size * 0.5, ay - ux * size * 0.5);
    let _ = writeln!(
        out,
        r#"<polygon points="{},{} {},{} {},{}" fill="{color}"/>"#,
        num(tip.0),
        num(tip.1),
        num(left.0),
        num(left.1),
        num(right.0),
        num(right.1)
    );
}

fn disk_of(path: &[ChartPoint]) -> Vec<(f64, f64)> {
    decimate(path, MAX_POINTS).iter().map(|p| p.to_disk()).collect()
}

fn glyph(out: &mut String, kind: &EquilibriumKind, (cx, cy): (f64, f64)) {
    let (x, y) = (num(cx), num(cy));
    let fill = |s: Option<Stability>| match s {
        Some(Stability::Stable) => GLYPH,
        _ => "#ffffff",
    };
    let stroke = format!(r#"stroke="{GLYPH}" stroke-width="1.5""#);
    match kind {
        EquilibriumKind::DicriticalNode { stability, .. } => {
            let _ = writeln!(
                out,
                r#"<circle class="node" cx="{x}" cy="{y}" r="5.000000" fill="{}" {stroke}/>"#,
                fill(Some(*stability))
            );
        }
        EquilibriumKind::Focus { stability, .. } => {
            let d = 6.0;
            let _ = writeln!(
                out,
                r#"<polygon class="focus" points="{},{y} {x},{} {},{y} {x},{}" fill="{}" {stroke}/>"#,
                num(cx - d),
                num(cy - d),
                num(cx + d),
                num(cy + d),
                fill(Some(*stability))
            );
        }
        EquilibriumKind::IsochronousCenter { .. } => {
            let _ = writeln!(
                out,
                r#"<circle class="center" cx="{x}" cy="{y}" r="5.000000" fill="none" {stroke}/>"#
            );
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="1.500000" fill="{GLYPH}"/>"#);
        }
        EquilibriumKind::Degenerate { .. } => {
            let d = 4.5;
            let _ = writeln!(
                out,
                r#"<rect class="degenerate" x="{}" y="{}" width="{}" height="{}" fill="{GLYPH}" {stroke}/>"#,
                num(cx - d),
                num(cy - d),
                num(2.0 * d),
                num(2.0 * d)
            );
        }
    }
}

/// SVG document of the separatrix configuration.
pub fn render_portrait(
    system: &HolomorphicSystem,
    config: &SeparatrixConfiguration,
    options: &RenderOptions,
) -> String {
    let n = system.degree();
    let rotation = system.leading().arg() / (n as f64 - 1.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="0 0 {w} {w}">
<desc>Poincare disk, normalized frame; user frame rotated by {} rad</desc>
<rect width="{w}" height="{w}" fill="#ffffff"/>"##,
        num(-rotation),
        w = CANVAS as u32,
    );
    let c = num(CANVAS / 2.0);
    let _ = writeln!(
        out,
        r#"<circle class="equator" cx="{c}" cy="{c}" r="{}" fill="none" stroke="{EQUATOR}" stroke-width="1.5"/>"#,
        num(DISK_RADIUS)
    );

    if let Some(spec) = &options.levels {
        if let Ok(curves) = level_curves(&spec.integral, &spec.levels, &spec.grid) {
            let _ = writeln!(out, r#"<g class="levels" fill="none" stroke="{LEVEL}" stroke-width="0.8">"#);
            for curve in curves {
                for line in &curve.polylines {
                    polyline(&mut out, line, "");
                }
            }
            let _ = writeln!(out, "</g>");
        }
    }

    if options.orbits {
        let _ = writeln!(out, r#"<g class="orbits" fill="none" stroke="{ORBIT}" stroke-width="0.8">"#);
        for region in &config.regions {
            let disk = disk_of(&region.orbit);
            polyline(&mut out, &disk, "");
            if options.arrows {
                arrow(&mut out, &disk, ORBIT);
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, r#"<g class="separatrices" fill="none" stroke="{SEPARATRIX}" stroke-width="2">"#);
    for sep in &config.separatrices {
        let mut disk = disk_of(&sep.path);
        polyline(&mut out, &disk, "");
        if options.arrows {
            // the path runs outwards from the saddle; flip to time order
            if sep.role == SeparatrixRole::Stable {
                disk.reverse();
            }
            arrow(&mut out, &disk, SEPARATRIX);
        }
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g class="saddles" stroke="{GLYPH}" stroke-width="2">"#);
    for s in &config.saddles {
        let (a, b) = (canvas((0.95 * s.theta.cos(), 0.95 * s.theta.sin())), canvas((s.theta.cos(), s.theta.sin())));
        let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(a.0), num(a.1), num(b.0), num(b.1));
    }
    let _ = writeln!(out, "</g>");

    let _ = writeln!(out, r#"<g class="equilibria">"#);
    for r in &config.equilibria {
        glyph(&mut out, &r.kind, canvas(crate::compactify::to_disk(r.location.re, r.location.im)));
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
