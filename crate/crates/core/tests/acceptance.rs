//! Acceptance suite: one pass/fail line per criterion, with runtime.

use std::f64::consts::{FRAC_PI_4, TAU};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crportrait::darboux::{log_value, residue_sum, BranchTracker, CircleFactor, Factor, FirstIntegral};
use crportrait::ode::Dopri5;
use crportrait::poly2::Poly2;
use crportrait::{
    build_integral, center_region_type, classify_all, classify_portrait, global_consistency, integral_residual,
    orbit_period, rational_integral, separatrix_configuration, CenterType, Complex, DarbouxIntegral,
    EquilibriumKind, HolomorphicSystem, PeriodOutcome, RationalIntegral, RationalOutcome, Rotation, Stability,
    Tolerances,
};

const SEED: u64 = 0x5eed_c0de;

type Check = std::result::Result<String, String>;

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn monic(roots: &[Complex]) -> HolomorphicSystem {
    HolomorphicSystem::monic(roots).expect("valid roots")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Uniform in `[-3, 3]` but away from zero.
fn nonzero(rng: &mut ChaCha8Rng) -> f64 {
    let m = rng.gen_range(0.05..3.0);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> Complex {
    c(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

fn found(system: &HolomorphicSystem, tol: &Tolerances) -> Option<RationalIntegral> {
    let reports = classify_all(system, tol.class).ok()?;
    match rational_integral(system, &reports, tol) {
        Ok(RationalOutcome::Found { integral }) => Some(integral),
        _ => None,
    }
}

// ---- criterion 1 ---------------------------------------------------------

fn stab(re: f64) -> Stability {
    if re < 0.0 {
        Stability::Stable
    } else {
        Stability::Unstable
    }
}

fn rot(im: f64) -> Rotation {
    if im > 0.0 {
        Rotation::Ccw
    } else {
        Rotation::Cw
    }
}

/// Kind of the equilibrium at `z` in the report list.
fn kind_at(system: &HolomorphicSystem, tol: &Tolerances, z: Complex) -> std::result::Result<EquilibriumKind, String> {
    let reports = classify_all(system, tol.class).map_err(|e| e.to_string())?;
    reports
        .into_iter()
        .find(|r| r.location == z)
        .map(|r| r.kind)
        .ok_or_else(|| format!("no equilibrium at {z}"))
}

fn quadratic_case(a: f64, b: f64, tol: &Tolerances) -> std::result::Result<(), String> {
    let z2 = c(a, b);
    let s = monic(&[c(0.0, 0.0), z2]);
    let k0 = kind_at(&s, tol, c(0.0, 0.0))?;
    let k2 = kind_at(&s, tol, z2)?;
    // λ = -z₂ at the origin and z₂ at z₂
    let ok = match (b == 0.0, a == 0.0) {
        (true, _) => {
            matches!(k0, EquilibriumKind::DicriticalNode { stability, .. } if stability == stab(-a))
                && matches!(k2, EquilibriumKind::DicriticalNode { stability, .. } if stability == stab(a))
        }
        (false, true) => {
            matches!(k0, EquilibriumKind::IsochronousCenter { rotation, .. } if rotation == rot(-b))
                && matches!(k2, EquilibriumKind::IsochronousCenter { rotation, .. } if rotation == rot(b))
        }
        (false, false) => {
            matches!(k0, EquilibriumKind::Focus { stability, rotation } if stability == stab(-a) && rotation == rot(-b))
                && matches!(k2, EquilibriumKind::Focus { stability, rotation } if stability == stab(a) && rotation == rot(b))
        }
    };
    ensure(ok, || format!("z2 = {z2}: {k0:?} / {k2:?}"))
}

fn cubic_double_case(a: f64, b: f64, tol: &Tolerances) -> std::result::Result<(), String> {
    let z2 = c(a, b);
    let s = monic(&[c(0.0, 0.0), c(0.0, 0.0), z2]);
    let k = kind_at(&s, tol, z2)?;
    let d = kind_at(&s, tol, c(0.0, 0.0))?;
    let ok = if a == 0.0 || b == 0.0 {
        matches!(k, EquilibriumKind::DicriticalNode { stability, .. } if stability == stab(a * a - b * b))
    } else if a * a == b * b {
        k.is_center()
    } else {
        matches!(k, EquilibriumKind::Focus { stability, .. } if stability == stab(a * a - b * b))
    };
    let ok = ok && matches!(d, EquilibriumKind::Degenerate { multiplicity: 2, elliptic_sectors: 2, .. });
    ensure(ok, || format!("z2 = {z2}: {k:?}, origin {d:?}"))
}

fn criterion_1() -> Check {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut count = 0;
    for _ in 0..200 {
        quadratic_case(nonzero(&mut rng), 0.0, &tol)?;
        quadratic_case(0.0, nonzero(&mut rng), &tol)?;
        quadratic_case(nonzero(&mut rng), nonzero(&mut rng), &tol)?;
        let x = nonzero(&mut rng);
        if rng.gen_bool(0.5) {
            cubic_double_case(x, 0.0, &tol)?;
        } else {
            cubic_double_case(0.0, x, &tol)?;
        }
        let a = nonzero(&mut rng);
        cubic_double_case(a, if rng.gen_bool(0.5) { a } else { -a }, &tol)?;
        let (a, b) = loop {
            let (a, b) = (nonzero(&mut rng), nonzero(&mut rng));
            if (a.abs() - b.abs()).abs() > 1e-3 {
                break (a, b);
            }
        };
        cubic_double_case(a, b, &tol)?;
        count += 6;
    }
    Ok(format!("{count} instances over 6 cases"))
}

// ---- criterion 2 ---------------------------------------------------------

fn poly(terms: &[(u32, u32, f64)]) -> Poly2 {
    let mut p = Poly2::zero();
    for &(i, j, k) in terms {
        p.add_term(i, j, k);
    }
    p
}

fn circles(f: &[((f64, f64), i64)]) -> RationalIntegral {
    RationalIntegral::CircleProduct {
        factors: f.iter().map(|&(center, exponent)| CircleFactor { center, exponent }).collect(),
    }
}

/// Systems and the integrals they must emit, in the normalized frame.
fn known_integrals() -> Vec<(&'static str, HolomorphicSystem, RationalIntegral)> {
    let o = c(0.0, 0.0);
    vec![
        (
            "z^2",
            monic(&[o, o]),
            RationalIntegral::Quotient { numerator: poly(&[(0, 1, 1.0)]), denominator: poly(&[(2, 0, 1.0), (0, 2, 1.0)]) },
        ),
        (
            "z^3",
            monic(&[o, o, o]),
            RationalIntegral::Quotient {
                numerator: poly(&[(1, 1, 1.0)]),
                denominator: poly(&[(4, 0, 1.0), (2, 2, 2.0), (0, 4, 1.0)]),
            },
        ),
        (
            "z(z-2)",
            monic(&[o, c(2.0, 0.0)]),
            RationalIntegral::Quotient {
                numerator: poly(&[(0, 1, 1.0)]),
                denominator: poly(&[(2, 0, 1.0), (0, 2, 1.0), (1, 0, -2.0)]),
            },
        ),
        ("z(z-2i)", monic(&[o, c(0.0, 2.0)]), circles(&[((0.0, 0.0), 1), ((0.0, 2.0), -1)])),
        (
            "z(z-1-i)(z-2-2i)",
            monic(&[o, c(1.0, 1.0), c(2.0, 2.0)]),
            circles(&[((0.0, 0.0), 1), ((1.0, 1.0), -2), ((2.0, 2.0), 1)]),
        ),
    ]
}

fn criterion_2() -> Check {
    let tol = Tolerances::default();
    for (name, system, want) in known_integrals() {
        let got = found(&system, &tol).ok_or_else(|| format!("{name}: no rational integral"))?;
        ensure(got == want, || format!("{name}: got {got:?}, want {want:?}"))?;
    }
    Ok("5 integrals match exactly".into())
}

// ---- criterion 3 ---------------------------------------------------------

enum Owned {
    Rational(RationalIntegral),
    Darboux(DarbouxIntegral),
}

impl Owned {
    fn view(&self) -> FirstIntegral<'_> {
        match self {
            Owned::Rational(r) => r.into(),
            Owned::Darboux(d) => d.into(),
        }
    }
}

fn nearest_root(system: &HolomorphicSystem, z: Complex) -> f64 {
    system.roots().entries.iter().map(|e| (e.0 - z).norm()).fold(f64::INFINITY, f64::min)
}

fn value(factors: &[Factor], x: f64, y: f64, tracker: &BranchTracker) -> Option<f64> {
    let (log, sign) = log_value(factors, x, y, Some(tracker.angles())).ok()?;
    Some(sign * log.exp()).filter(|v| v.is_finite())
}

const ORBIT_LENGTH: f64 = 10.0;

/// Largest relative drift of `H` along an arc-length orbit of length 10,
/// stopped early when it reaches an equilibrium or escapes.
fn orbit_drift(system: &HolomorphicSystem, factors: &[Factor], start: Complex) -> Option<(f64, f64)> {
    let f = |y: [f64; 2]| {
        let (p, q) = system.eval_field(y[0], y[1]);
        let n = p.hypot(q);
        [p / n, q / n]
    };
    let mut tracker = BranchTracker::new(factors, start.re, start.im);
    let h0 = value(factors, start.re, start.im, &tracker)?;
    if !(1e-8..1e8).contains(&h0.abs()) {
        return None;
    }
    let mut solver = Dopri5::new(1e-12, 1e-14, 1e-3, 0.1);
    let (mut y, mut s, mut worst) = ([start.re, start.im], 0.0, 0.0_f64);
    let mut fy = f(y);
    while s < ORBIT_LENGTH {
        let d = nearest_root(system, c(y[0], y[1]));
        if d < 0.02 || y[0].hypot(y[1]) > 1e4 {
            break;
        }
        solver.h_max = (0.2 * d).min(0.1).min(ORBIT_LENGTH - s);
        let step = solver.step(&f, y, fy)?;
        s += step.h;
        y = step.y1;
        fy = step.f1;
        tracker.advance(y[0], y[1]);
        let h = value(factors, y[0], y[1], &tracker)?;
        worst = worst.max((h - h0).abs() / h0.abs());
    }
    Some((worst, s))
}

fn criterion_3() -> Check {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut cases: Vec<(String, HolomorphicSystem, Owned)> = known_integrals()
        .into_iter()
        .map(|(name, s, _)| {
            let h = found(&s, &tol).expect("rational integral");
            (name.to_string(), s, Owned::Rational(h))
        })
        .collect();
    for (name, roots) in [
        ("z(z-1-2i)", vec![c(0.0, 0.0), c(1.0, 2.0)]),
        ("z^2(z-1-i)", vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 1.0)]),
    ] {
        let s = monic(&roots);
        let h = build_integral(&s).map_err(|e| format!("{name}: {e}"))?;
        cases.push((name.into(), s, Owned::Darboux(h)));
    }

    let (mut worst_drift, mut worst_res, mut total_length) = (0.0_f64, 0.0_f64, 0.0);
    for (name, system, h) in &cases {
        let factors = h.view().factors();
        let r = system.root_radius() + 2.0;
        let mut orbits = 0;
        while orbits < 20 {
            let z = point(&mut rng, r);
            if nearest_root(system, z) < 0.3 {
                continue;
            }
            if let Some((d, len)) = orbit_drift(system, &factors, z) {
                total_length += len;
                ensure(d <= 1e-6, || format!("{name}: drift {d:e} from {z}"))?;
                worst_drift = worst_drift.max(d);
                orbits += 1;
            }
        }
        let mut points = 0;
        while points < 1000 {
            let z = point(&mut rng, r);
            if nearest_root(system, z) < 1e-3 {
                continue;
            }
            let Ok(res) = integral_residual(h.view(), system, z.re, z.im) else {
                continue;
            };
            ensure(res.relative <= 1e-10, || format!("{name}: residual {:e} at {z}", res.relative))?;
            worst_res = worst_res.max(res.relative);
            points += 1;
        }
    }
    Ok(format!(
        "{} integrals; mean orbit length {:.2}, max drift {worst_drift:.1e}, max residual {worst_res:.1e}",
        cases.len(),
        total_length / (20.0 * cases.len() as f64)
    ))
}

// ---- criterion 4 ---------------------------------------------------------

fn min_separation(roots: &[Complex]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..roots.len() {
        for j in 0..i {
            m = m.min((roots[i] - roots[j]).norm());
        }
    }
    m
}

/// Three collinear roots along `e^{iφ}`; with `integer` spacing the
/// eigenvalue ratios are rational.
fn collinear(rng: &mut ChaCha8Rng, phi: f64, integer: bool) -> Vec<Complex> {
    loop {
        let p = point(rng, 2.0);
        let d = Complex::from_polar(if integer { rng.gen_range(0.2..1.0) } else { 1.0 }, phi);
        let roots: Vec<Complex> = (0..3)
            .map(|_| {
                let t = if integer { f64::from(rng.gen_range(-4i32..=4)) } else { rng.gen_range(-3.0..3.0) };
                p + d * t
            })
            .collect();
        if min_separation(&roots) > 0.1 {
            return roots;
        }
    }
}

fn criterion_4() -> Check {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let mut worst = 0.0_f64;
    for _ in 0..500 {
        let roots: Vec<Complex> = loop {
            let r: Vec<Complex> = (0..3).map(|_| point(&mut rng, 3.0)).collect();
            if min_separation(&r) > 0.05 {
                break r;
            }
        };
        let leading = Complex::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..TAU));
        let s = HolomorphicSystem::from_roots(leading, &roots, 1e-9).map_err(|e| e.to_string())?;
        let scale: f64 = s.roots().entries.iter().map(|e| 1.0 / s.eval_derivative(e.0).norm()).sum();
        let rel = residue_sum(&s).norm() / scale;
        ensure(rel <= 1e-9, || format!("residue sum {rel:e} for roots {roots:?}"))?;
        worst = worst.max(rel);
    }

    // collinear roots along a diagonal give three centers, along an axis three nodes
    let mut emitted = 0;
    for k in 0..200 {
        let phi = if k % 2 == 0 { FRAC_PI_4 * [1.0, 3.0, 5.0, 7.0][k % 4] } else { [0.0, 1.5707963267948966][k % 4 / 2] };
        let s = monic(&collinear(&mut rng, phi, true));
        if let Some(RationalIntegral::CircleProduct { factors }) = found(&s, &tol) {
            if factors.len() == 3 {
                let sum: i64 = factors.iter().map(|f| f.exponent).sum();
                ensure(sum == 0, || format!("exponent sum {sum} for {factors:?}"))?;
                emitted += 1;
            }
        }
    }
    ensure(emitted > 0, || "no three-circle integral emitted".into())?;
    Ok(format!("500 cubics, max relative residue sum {worst:.1e}; {emitted} three-circle integrals with zero exponent sum"))
}

// ---- criterion 5 ---------------------------------------------------------

fn criterion_5() -> Check {
    let tol = Tolerances::default();
    let s = monic(&[c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]);
    let h = found(&s, &tol).ok_or("no rational integral")?;
    let config = separatrix_configuration(&s, &tol).map_err(|e| e.to_string())?;
    let (mut curve, mut level, mut n) = (0.0_f64, 0.0_f64, 0);
    for sep in &config.separatrices {
        for (x, y) in sep.plane_points() {
            curve = curve.max((1.0 - 2.0 * x - 2.0 * y + 2.0 * x * y).abs());
            level = level.max((h.eval(x, y).map_err(|e| e.to_string())? - 1.0).abs());
            n += 1;
        }
    }
    ensure(curve <= 1e-5, || format!("curve residual {curve:e}"))?;
    ensure(level <= 1e-5, || format!("level residual {level:e}"))?;
    let mut types = Vec::new();
    for (k, at) in [c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)].into_iter().enumerate() {
        ensure(config.equilibria[k].location == at, || format!("equilibrium {k} at {}", config.equilibria[k].location))?;
        types.push(center_region_type(&config, k).map_err(|e| e.to_string())?);
    }
    ensure(types == [CenterType::B1, CenterType::B2, CenterType::B1], || format!("center types {types:?}"))?;
    Ok(format!("{n} points; curve residual {curve:.1e}, level residual {level:.1e}; types {types:?}"))
}

// ---- criterion 6 ---------------------------------------------------------

/// Class of `z²(z - z₂)` from the sign of `a² - b²`, `z₂ = a + bi`.
fn double_root_oracle(z2: Complex) -> &'static str {
    let (a, b) = (z2.re, z2.im);
    if a != 0.0 && b != 0.0 && a * a == b * b {
        "C_DOUBLE_WITH_CENTER"
    } else if a * a - b * b > 0.0 {
        "C_DOUBLE_WITH_SOURCE"
    } else {
        "C_DOUBLE_WITH_SINK"
    }
}

fn criterion_6() -> Check {
    let tol = Tolerances::default();
    let o = c(0.0, 0.0);
    let mut systems: Vec<(&str, Vec<Complex>, &str)> = vec![
        ("z(z-2)", vec![o, c(2.0, 0.0)], "Q_ANTISADDLE_PAIR"),
        ("z(z-1-2i)", vec![o, c(1.0, 2.0)], "Q_ANTISADDLE_PAIR"),
        ("z(z-2i)", vec![o, c(0.0, 2.0)], "Q_TWO_CENTERS"),
        ("z^2", vec![o, o], "Q_DEGENERATE_DIPOLE"),
        ("z^3", vec![o, o, o], "C_TRIPLE_DEGENERATE"),
    ];
    for (label, z2) in [
        ("z^2(z-1.5i)", c(0.0, 1.5)),
        ("z^2(z-1-2i)", c(1.0, 2.0)),
        ("z^2(z-1-i)", c(1.0, 1.0)),
        ("z^2(z-1.5-i)", c(1.5, 1.0)),
        ("z^2(z-1.5)", c(1.5, 0.0)),
    ] {
        systems.push((label, vec![o, o, z2], double_root_oracle(z2)));
    }
    systems.extend([
        ("z(z-1-i)(z-2-2i)", vec![o, c(1.0, 1.0), c(2.0, 2.0)], "C_THREE_CENTERS"),
        ("z(z+1)(z+i)", vec![o, c(-1.0, 0.0), c(0.0, -1.0)], "C_ONE_CENTER_SOURCE_SINK"),
        ("z(z+1)(z-1-i)", vec![o, c(-1.0, 0.0), c(1.0, 1.0)], "C_NO_CENTER_SHARED_SINK"),
        ("z(z-i)(z+1+i)", vec![o, c(0.0, 1.0), c(-1.0, -1.0)], "C_NO_CENTER_SHARED_SOURCE"),
    ]);
    for (label, roots, want) in &systems {
        let config = separatrix_configuration(&monic(roots), &tol).map_err(|e| format!("{label}: {e}"))?;
        let got = classify_portrait(&config).map_err(|e| format!("{label}: {e}"))?;
        ensure(got.name() == *want, || format!("{label}: got {got}, want {want}"))?;
    }
    let node = double_root_oracle(c(0.0, 1.5));
    Ok(format!(
        "{} systems; z^2(z-1.5i) has a stable node at 1.5i (lambda = -2.25), class {node}",
        systems.len()
    ))
}

// ---- criterion 7 ---------------------------------------------------------

fn criterion_7() -> Check {
    let tol = Tolerances::default();
    let o = c(0.0, 0.0);
    let cases = [
        ("z(z-2i)", vec![o, c(0.0, 2.0)], o, c(1.0, 0.0), [0.2, 0.5, 0.8]),
        ("z(z-2i)", vec![o, c(0.0, 2.0)], c(0.0, 2.0), c(1.0, 0.0), [0.2, 0.5, 0.8]),
        ("z^2(z-1-i)", vec![o, o, c(1.0, 1.0)], c(1.0, 1.0), c(1.0, 1.0) / 2f64.sqrt(), [0.1, 0.3, 0.5]),
    ];
    let mut worst = 0.0_f64;
    let mut n = 0;
    for (name, roots, center, dir, radii) in cases {
        let s = monic(&roots);
        let want = TAU / s.eval_derivative(center).im.abs();
        let reports = classify_all(&s, tol.class).map_err(|e| e.to_string())?;
        let index = reports.iter().position(|r| r.location == center).ok_or("center not found")?;
        for r in radii {
            let z = center + dir * r;
            match orbit_period(&s, (z.re, z.im), &tol).map_err(|e| e.to_string())? {
                PeriodOutcome::Periodic { period, center: k } if k == index => {
                    let rel = (period - want).abs() / want;
                    ensure(rel <= 1e-4, || format!("{name}: period {period} at radius {r}, want {want}"))?;
                    worst = worst.max(rel);
                    n += 1;
                }
                other => return Err(format!("{name}: {other:?} at radius {r}")),
            }
        }
    }
    Ok(format!("{n} orbits around 3 centers; max relative period error {worst:.1e}"))
}

// ---- criterion 8 ---------------------------------------------------------

/// Random roots from a mix of generic and special families.
fn sweep_system(rng: &mut ChaCha8Rng, k: usize) -> HolomorphicSystem {
    let o = c(0.0, 0.0);
    let (leading, roots) = match k % 10 {
        0..=3 => (Complex::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..TAU)), (0..3).map(|_| point(rng, 3.0)).collect()),
        4 | 5 => (Complex::from_polar(rng.gen_range(0.2..3.0), rng.gen_range(0.0..TAU)), (0..2).map(|_| point(rng, 3.0)).collect()),
        6 => (c(1.0, 0.0), collinear(rng, FRAC_PI_4 * [1.0, 3.0][k % 20 / 10], k % 40 < 20)),
        // λ = i t at the origin
        7 => (c(1.0, 0.0), vec![o, c(nonzero(rng), 0.0), c(0.0, nonzero(rng))]),
        8 => (c(1.0, 0.0), vec![o, o, point(rng, 3.0)]),
        _ => {
            let a = nonzero(rng);
            (c(1.0, 0.0), vec![o, o, c(a, if rng.gen_bool(0.5) { a } else { -a })])
        }
    };
    HolomorphicSystem::from_roots(leading, &roots, 1e-9).expect("valid roots")
}

fn criterion_8() -> Check {
    let tol = Tolerances::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut center_counts = [0usize; 4];
    let mut worst_sine = 0.0_f64;
    for k in 0..1000 {
        let s = sweep_system(&mut rng, k);
        let n = s.degree();
        let label = || format!("system {k}: leading {}, roots {:?}", s.leading(), s.user_roots());
        let config = separatrix_configuration(&s, &tol).map_err(|e| format!("{}: {e}", label()))?;
        ensure(config.saddles.len() == 2 * (n - 1), || format!("{}: {} saddles", label(), config.saddles.len()))?;
        ensure(config.separatrices.len() == 2 * (n - 1), || {
            format!("{}: {} separatrices", label(), config.separatrices.len())
        })?;
        if n == 3 {
            let centers = config.equilibria.iter().filter(|r| r.kind.is_center()).count();
            ensure(matches!(centers, 0 | 1 | 3), || format!("{}: {centers} centers", label()))?;
            center_counts[centers] += 1;
            if centers == 3 {
                let verdict = global_consistency(&config.equilibria, 3, tol.geom);
                let sine = verdict.collinearity.ok_or_else(|| format!("{}: no collinearity", label()))?;
                ensure(sine <= 1e-9, || format!("{}: collinearity {sine:e}", label()))?;
                worst_sine = worst_sine.max(sine);
            }
        }
    }
    Ok(format!(
        "1000 systems; cubic center counts 0/1/3: {}/{}/{}; max collinearity {worst_sine:.1e}",
        center_counts[0], center_counts[1], center_counts[3]
    ))
}

// ---- driver --------------------------------------------------------------

fn main() {
    let criteria: [(&str, Option<Duration>, fn() -> Check); 8] = [
        ("C1 equilibrium case tables", Some(Duration::from_secs(1)), criterion_1),
        ("C2 integrals reproduced exactly", None, criterion_2),
        ("C3 conservation", Some(Duration::from_secs(30)), criterion_3),
        ("C4 residue identity", None, criterion_4),
        ("C5 separatrix geometry of three centers", Some(Duration::from_secs(10)), criterion_5),
        ("C6 reference classification", Some(Duration::from_secs(120)), criterion_6),
        ("C7 isochrony", None, criterion_7),
        ("C8 structural counts", Some(Duration::from_secs(60)), criterion_8),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let over = limit.is_some_and(|l| elapsed > l);
        let limit_text = limit.map(|l| format!(", limit {} s", l.as_secs())).unwrap_or_default();
        let (mark, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over time; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if mark == "FAIL" {
            failed += 1;
        }
        println!("{mark} {name} ({:.3} s{limit_text}): {detail}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
