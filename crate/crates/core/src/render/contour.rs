//! Marching squares on a rational first integral.

use std::collections::BTreeMap;

use crate::compactify::{from_disk, to_disk};
use crate::darboux::{Factor, FirstIntegral};
use crate::error::{Error, Result};
use crate::poly2::Poly2;
use crate::system::HolomorphicSystem;

/// Square sampling window `[-half_width, half_width]²` of the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    /// Cells per side.
    pub resolution: usize,
    pub half_width: f64,
}

impl Grid {
    pub const DEFAULT_RESOLUTION: usize = 600;

    /// Default window: three times the largest root modulus plus two.
    pub fn for_system(system: &HolomorphicSystem) -> Self {
        Self {
            resolution: Self::DEFAULT_RESOLUTION,
            half_width: 3.0 * system.root_radius() + 2.0,
        }
    }

    fn coord(&self, k: usize) -> f64 {
        -self.half_width + 2.0 * self.half_width * k as f64 / self.resolution as f64
    }
}

/// Level set of one value, as polylines in disk coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelCurve {
    pub level: f64,
    pub polylines: Vec<Vec<(f64, f64)>>,
}

/// Numerator and denominator of `H` in a form that is cheap to evaluate.
enum Split {
    Circles(Vec<((f64, f64), i32)>),
    Polys(Poly2, Poly2),
}

impl Split {
    fn eval(&self, x: f64, y: f64) -> (f64, f64) {
        match self {
            Self::Circles(fs) => fs.iter().fold((1.0, 1.0), |(n, d), &((a, b), m)| {
                let r2 = (x - a).powi(2) + (y - b).powi(2);
                if m >= 0 {
                    (n * r2.powi(m), d)
                } else {
                    (n, d * r2.powi(-m))
                }
            }),
            Self::Polys(n, d) => (n.eval(x, y), d.eval(x, y)),
        }
    }
}

fn split(h: &FirstIntegral<'_>) -> Result<Split> {
    let factors = h.factors();
    if let [Factor::Rational { numerator, denominator }] = factors.as_slice() {
        return Ok(Split::Polys(numerator.clone(), denominator.clone()));
    }
    factors
        .iter()
        .map(|f| match *f {
            Factor::Power { center, exponent } if exponent.fract() == 0.0 && exponent.abs() <= 1024.0 => {
                Ok((center, exponent as i32))
            }
            _ => Err(Error::NonRationalIntegral),
        })
        .collect::<Result<Vec<_>>>()
        .map(Split::Circles)
}

/// Level curves of a rational integral on `grid`, mapped to the disk.
///
/// Crossings are refined by bisection on `N - level·D` and kept only where
/// `|H - level| <= 1e-3 (1 + |level|)`; a rejected crossing breaks the
/// polyline.
pub fn level_curves<'a>(
    h: impl Into<FirstIntegral<'a>>,
    levels: &[f64],
    grid: &Grid,
) -> Result<Vec<LevelCurve>> {
    let split = split(&h.into())?;
    let n = grid.resolution.max(1);
    let coords: Vec<f64> = (0..=n).map(|k| grid.coord(k)).collect();
    let cs = &coords;
    let nd: Vec<(f64, f64)> = (0..=n)
        .flat_map(|j| cs.iter().map(move |&x| (x, cs[j])))
        .map(|(x, y)| split.eval(x, y))
        .collect();
    Ok(levels
        .iter()
        .map(|&level| LevelCurve { level, polylines: march(&split, &coords, &nd, n, level) })
        .collect())
}

fn march(split: &Split, coords: &[f64], nd: &[(f64, f64)], n: usize, level: f64) -> Vec<Vec<(f64, f64)>> {
    let g = |(num, den): (f64, f64)| num - level * den;
    let at = |i: usize, j: usize| g(nd[j * (n + 1) + i]);
    let tol = 1e-3 * (1.0 + level.abs());

    // crossing on edge id: horizontal 2·(j(n+1)+i), vertical +1
    let mut points: BTreeMap<usize, Option<(f64, f64)>> = BTreeMap::new();
    let mut crossing = |id: usize, a: (f64, f64), b: (f64, f64), ga: f64| -> usize {
        points.entry(id).or_insert_with(|| {
            let (mut lo, mut hi, mut glo) = (a, b, ga);
            for _ in 0..52 {
                let mid = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
                let gm = g(split.eval(mid.0, mid.1));
                if (gm > 0.0) == (glo > 0.0) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            let p = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
            let (num, den) = split.eval(p.0, p.1);
            ((num / den - level).abs() <= tol).then_some(p)
        });
        id
    };

    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for j in 0..n {
        for i in 0..n {
            let v = [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)];
            if v.iter().any(|x| !x.is_finite()) {
                continue;
            }
            let corner = [
                (coords[i], coords[j]),
                (coords[i + 1], coords[j]),
                (coords[i + 1], coords[j + 1]),
                (coords[i], coords[j + 1]),
            ];
            let edge_ids = [
                2 * (j * (n + 1) + i),
                2 * (j * (n + 1) + i + 1) + 1,
                2 * ((j + 1) * (n + 1) + i),
                2 * (j * (n + 1) + i) + 1,
            ];
            let mut cut = Vec::with_capacity(4);
            for e in 0..4 {
                let (a, b) = (e, (e + 1) % 4);
                if (v[a] > 0.0) != (v[b] > 0.0) {
                    cut.push(crossing(edge_ids[e], corner[a], corner[b], v[a]));
                }
            }
            let pairs: Vec<(usize, usize)> = match cut.len() {
                2 => vec![(cut[0], cut[1])],
                4 => {
                    // saddle cell: resolve with the center value
                    let center = 0.25 * v.iter().sum::<f64>();
                    if (center > 0.0) == (v[0] > 0.0) {
                        vec![(cut[0], cut[1]), (cut[2], cut[3])]
                    } else {
                        vec![(cut[0], cut[3]), (cut[1], cut[2])]
                    }
                }
                _ => vec![],
            };
            for (a, b) in pairs {
                adjacency.entry(a).or_default().push(b);
                adjacency.entry(b).or_default().push(a);
            }
        }
    }

    let valid = |id: &usize| matches!(points.get(id), Some(Some(_)));
    let mut used: BTreeMap<usize, bool> = adjacency.keys().map(|&k| (k, false)).collect();
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let degree = |id: usize| adjacency[&id].iter().filter(|m| valid(m)).count();
    // open chains first, then closed loops
    let starts: Vec<usize> = adjacency
        .keys()
        .copied()
        .filter(|&k| valid(&k) && degree(k) != 2)
        .chain(adjacency.keys().copied().filter(|&k| valid(&k)))
        .collect();
    for s in starts {
        if used[&s] {
            continue;
        }
        let mut chain = vec![s];
        used.insert(s, true);
        let mut cur = s;
        while let Some(&next) = adjacency[&cur].iter().find(|m| valid(m) && !used[*m]) {
            used.insert(next, true);
            chain.push(next);
            cur = next;
        }
        if chain.len() > 2 && adjacency[&cur].contains(&s) {
            chain.push(s);
        }
        if chain.len() >= 2 {
            chains.push(chain);
        }
    }
    let level_fn = |p: (f64, f64)| g(split.eval(p.0, p.1));
    let misfit = |p: (f64, f64)| {
        let (num, den) = split.eval(p.0, p.1);
        (num / den - level).abs()
    };
    chains
        .into_iter()
        .map(|c| {
            let plane: Vec<(f64, f64)> = c.into_iter().map(|id| points[&id].expect("valid crossing")).collect();
            let mut out = vec![plane[0]];
            for w in plane.windows(2) {
                refine(&level_fn, &misfit, 0.25 * tol, w[0], w[1], 8, &mut out);
            }
            out.into_iter().map(|(x, y)| to_disk(x, y)).collect()
        })
        .collect()
}

/// Append the chord `a → b` to `out`, inserting level-set points until
/// chord midpoints are within `tol`.
fn refine(
    g: &impl Fn((f64, f64)) -> f64,
    misfit: &impl Fn((f64, f64)) -> f64,
    tol: f64,
    a: (f64, f64),
    b: (f64, f64),
    depth: u32,
    out: &mut Vec<(f64, f64)>,
) {
    // segments are drawn straight on the disk, so judge the disk midpoint
    let (da, db) = (to_disk(a.0, a.1), to_disk(b.0, b.1));
    let mid = from_disk(0.5 * (da.0 + db.0), 0.5 * (da.1 + db.1)).unwrap_or(a);
    if depth == 0 || misfit(mid) <= tol {
        out.push(b);
        return;
    }
    // search along the chord normal for a sign change, then bisect
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let normal = (-dy, dx);
    let g0 = g(mid);
    let found = [0.125, 0.25, 0.5, 1.0].iter().find_map(|&t| {
        [t, -t].iter().find_map(|&s| {
            let q = (mid.0 + s * normal.0, mid.1 + s * normal.1);
            ((g(q) > 0.0) != (g0 > 0.0)).then_some(q)
        })
    });
    let Some(far) = found else {
        out.push(b);
        return;
    };
    let (mut lo, mut hi) = (mid, far);
    for _ in 0..52 {
        let m = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
        if (g(m) > 0.0) == (g0 > 0.0) {
            lo = m;
        } else {
            hi = m;
        }
    }
    let p = (0.5 * (lo.0 + hi.0), 0.5 * (lo.1 + hi.1));
    if misfit(p) > tol {
        out.push(b);
        return;
    }
    refine(g, misfit, tol, a, p, depth - 1, out);
    refine(g, misfit, tol, p, b, depth - 1, out);
}
