mod common;

use common::{c, monic};
use crportrait::compactify::from_disk;
use crportrait::darboux::RationalOutcome;
use crportrait::poly2::Poly2;
use crportrait::{
    build_integral, classify_all, level_curves, rational_integral, render_portrait, separatrix_configuration,
    Error, Grid, LevelSpec, RationalIntegral, RenderOptions, Tolerances,
};

fn found(roots: &[crportrait::Complex]) -> RationalIntegral {
    let s = monic(roots);
    let tol = Tolerances::default();
    let reports = classify_all(&s, tol.class).unwrap();
    match rational_integral(&s, &reports, &tol).unwrap() {
        RationalOutcome::Found { integral } => integral,
        other => panic!("{other:?}"),
    }
}

fn plane_points(curves: &[crportrait::LevelCurve]) -> Vec<(f64, f64)> {
    curves
        .iter()
        .flat_map(|c| c.polylines.iter().flatten())
        .map(|&(x, y)| from_disk(x, y).unwrap())
        .collect()
}

#[test]
fn circle_through_the_pole() {
    let h = RationalIntegral::Quotient { numerator: Poly2::y(), denominator: Poly2::circle(0.0, 0.0) };
    let grid = Grid { resolution: 600, half_width: 2.0 };
    let curves = level_curves(&h, &[1.0], &grid).unwrap();
    let pts = plane_points(&curves);
    assert!(pts.len() > 100);
    let on_circle = |(x, y): (f64, f64)| (x.hypot(y - 0.5) - 0.5).abs();
    let worst = pts.iter().map(|&p| on_circle(p)).fold(0.0, f64::max);
    assert!(worst <= 1e-3, "{worst:e}");
    // every point of the circle is close to the extracted curve
    for k in 0..360 {
        let t = k as f64 * std::f64::consts::TAU / 360.0;
        let q = (0.5 * t.cos(), 0.5 + 0.5 * t.sin());
        let d = pts.iter().map(|p| (p.0 - q.0).hypot(p.1 - q.1)).fold(f64::INFINITY, f64::min);
        assert!(d <= 1e-2, "gap {d} at {q:?}");
    }
}

#[test]
fn bisector_of_two_centers() {
    let s = monic(&[c(0.0, 0.0), c(0.0, 2.0)]);
    let h = found(&[c(0.0, 0.0), c(0.0, 2.0)]);
    let curves = level_curves(&h, &[1.0], &Grid::for_system(&s)).unwrap();
    let pts = plane_points(&curves);
    assert!(!pts.is_empty());
    assert!(pts.iter().all(|p| (p.1 - 1.0).abs() <= 1e-3));
    let span = pts.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max)
        - pts.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    assert!(span > 15.0, "{span}");
}

#[test]
fn three_center_separatrix_level() {
    let roots = [c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)];
    let h = found(&roots);
    let curves = level_curves(&h, &[1.0], &Grid::for_system(&monic(&roots))).unwrap();
    let pts = plane_points(&curves);
    assert!(pts.len() > 100);
    for (x, y) in pts {
        assert!((1.0 - 2.0 * x - 2.0 * y + 2.0 * x * y).abs() <= 1e-6 * (1.0 + x.abs() * y.abs()));
    }
}

#[test]
fn level_fidelity_along_segments() {
    let roots = [c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)];
    let h = found(&roots);
    let levels = [0.25, 0.5, 2.0, 8.0];
    let curves = level_curves(&h, &levels, &Grid::for_system(&monic(&roots))).unwrap();
    for curve in &curves {
        assert!(!curve.polylines.is_empty());
        for line in &curve.polylines {
            for w in line.windows(2) {
                let mid = (0.5 * (w[0].0 + w[1].0), 0.5 * (w[0].1 + w[1].1));
                for p in [w[0], mid] {
                    let (x, y) = from_disk(p.0, p.1).unwrap();
                    let v = h.eval(x, y).unwrap();
                    assert!((v - curve.level).abs() <= 1e-3 * (1.0 + curve.level.abs()), "{v} vs {}", curve.level);
                }
            }
        }
    }
}

#[test]
fn foci_have_no_level_curves() {
    let s = monic(&[c(0.0, 0.0), c(1.0, 2.0)]);
    let h = build_integral(&s).unwrap();
    let err = level_curves(&h, &[1.0], &Grid::for_system(&s)).unwrap_err();
    assert!(matches!(err, Error::NonRationalIntegral));
}

fn svg_for(roots: &[crportrait::Complex], options: &RenderOptions) -> String {
    let s = monic(roots);
    let config = separatrix_configuration(&s, &Tolerances::default()).unwrap();
    render_portrait(&s, &config, options)
}

/// Every coordinate pair in polylines, polygons and lines, in disk units.
fn coordinates(svg: &str) -> Vec<(f64, f64)> {
    let to_disk = |x: f64, y: f64| ((x - 400.0) / 380.0, (400.0 - y) / 380.0);
    let mut out = Vec::new();
    for line in svg.lines() {
        if let Some(rest) = line.split("points=\"").nth(1) {
            for pair in rest.split('"').next().unwrap().split_whitespace() {
                let (x, y) = pair.split_once(',').unwrap();
                out.push(to_disk(x.parse().unwrap(), y.parse().unwrap()));
            }
        }
        if line.starts_with("<line") {
            let attr = |name: &str| -> f64 {
                line.split(&format!("{name}=\"")).nth(1).unwrap().split('"').next().unwrap().parse().unwrap()
            };
            out.push(to_disk(attr("x1"), attr("y1")));
            out.push(to_disk(attr("x2"), attr("y2")));
        }
    }
    out
}

#[test]
fn antisaddle_pair_portrait() {
    let svg = svg_for(&[c(0.0, 0.0), c(2.0, 0.0)], &RenderOptions::default());
    assert_eq!(svg.matches(r#"class="node""#).count(), 2);
    assert_eq!(svg.matches("<line ").count(), 2);
    // separatrices run along the horizontal diameter
    let group = svg.split(r#"class="separatrices""#).nth(1).unwrap().split("</g>").next().unwrap();
    let lines: String = group.lines().filter(|l| l.starts_with("<polyline")).collect();
    for (_, y) in coordinates(&lines).into_iter().filter(|p| p.0.abs() < 0.99) {
        assert!(y.abs() < 1e-5, "{y}");
    }
}

#[test]
fn triple_root_portrait() {
    let svg = svg_for(&[c(0.0, 0.0); 3], &RenderOptions::default());
    assert_eq!(svg.matches(r#"class="degenerate""#).count(), 1);
    let group = svg.split(r#"class="separatrices""#).nth(1).unwrap().split("</g>").next().unwrap();
    assert_eq!(group.matches("<polyline").count(), 4);
}

#[test]
fn rendering_is_deterministic_and_contained() {
    let roots = [c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)];
    let s = monic(&roots);
    let options = RenderOptions {
        levels: Some(LevelSpec { integral: found(&roots), levels: vec![0.5, 1.0, 2.0], grid: Grid::for_system(&s) }),
        ..RenderOptions::default()
    };
    let a = svg_for(&roots, &options);
    let b = svg_for(&roots, &options);
    assert_eq!(a, b);
    for (label, roots, _) in common::reference_systems() {
        let svg = svg_for(&roots, &RenderOptions::default());
        for (x, y) in coordinates(&svg) {
            assert!(x * x + y * y <= 1.0 + 1e-9, "{label}: ({x}, {y})");
        }
    }
    for (x, y) in coordinates(&a) {
        assert!(x * x + y * y <= 1.0 + 1e-9);
    }
}
