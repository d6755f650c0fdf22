//! Plain-text rendering of reports.

use std::fmt::Write as _;

use crportrait::darboux::{CircleFactor, Factor};
use crportrait::equilibria::{EquilibriumKind, Rotation, Stability};
use crportrait::{DarbouxIntegral, RationalIntegral};

use crate::literal::format_complex;
use crate::report::{DarbouxEcho, EquilibriumEcho, RationalEcho, Report, TopologyEcho};

fn shifted(var: &str, a: f64) -> String {
    if a == 0.0 {
        var.to_string()
    } else if a > 0.0 {
        format!("({var} - {a})")
    } else {
        format!("({var} + {})", -a)
    }
}

fn circle((a, b): (f64, f64)) -> String {
    format!("({}^2 + {}^2)", shifted("x", a), shifted("y", b))
}

fn factor(f: &Factor) -> String {
    match f {
        Factor::Power { center, exponent } => format!("{}^{exponent}", circle(*center)),
        Factor::Angle { center, coefficient } => {
            format!("exp({coefficient} * atan2({}, {}))", shifted("y", center.1), shifted("x", center.0))
        }
        Factor::Exp { numerator, denominator } => format!("exp(({numerator}) / ({denominator}))"),
        Factor::Rational { numerator, denominator } => format!("({numerator}) / ({denominator})"),
    }
}

pub fn darboux_formula(h: &DarbouxIntegral) -> String {
    h.factors.iter().map(factor).collect::<Vec<_>>().join(" * ")
}

pub fn rational_formula(h: &RationalIntegral) -> String {
    match h {
        RationalIntegral::CircleProduct { factors } => factors
            .iter()
            .map(|f: &CircleFactor| format!("{}^{}", circle(f.center), f.exponent))
            .collect::<Vec<_>>()
            .join(" * "),
        RationalIntegral::Quotient { numerator, denominator } => format!("({numerator}) / ({denominator})"),
    }
}

fn kind(k: &EquilibriumKind) -> String {
    let stab = |s: &Stability| match s {
        Stability::Stable => "stable",
        Stability::Unstable => "unstable",
    };
    let rot = |r: &Rotation| match r {
        Rotation::Ccw => "counterclockwise",
        Rotation::Cw => "clockwise",
    };
    match k {
        EquilibriumKind::DicriticalNode { stability, marginal } => {
            format!("dicritical node, {}{}", stab(stability), if *marginal { " (marginal)" } else { "" })
        }
        EquilibriumKind::Focus { stability, rotation } => format!("focus, {}, {}", stab(stability), rot(rotation)),
        EquilibriumKind::IsochronousCenter { rotation, omega, marginal } => format!(
            "isochronous center, {}, period {}{}",
            rot(rotation),
            std::f64::consts::TAU / omega.abs(),
            if *marginal { " (marginal)" } else { "" }
        ),
        EquilibriumKind::Degenerate { multiplicity, elliptic_sectors, tangent_line } => {
            let mut s = format!("degenerate, multiplicity {multiplicity}, {elliptic_sectors} elliptic sectors");
            if let Some((p, q)) = tangent_line {
                let _ = write!(s, ", tangent {p} x + {q} y = 0");
            }
            s
        }
    }
}

fn equilibria(out: &mut String, eqs: &[EquilibriumEcho]) {
    out.push_str("equilibria:\n");
    for e in eqs {
        let _ = writeln!(
            out,
            "  [{}] z = {} (w = {})  multiplicity {}  lambda = {}  {}",
            e.index,
            e.user_location,
            format_complex(e.report.location),
            e.report.multiplicity,
            format_complex(e.report.lambda),
            kind(&e.report.kind)
        );
    }
}

fn topology(out: &mut String, t: &TopologyEcho) {
    match (&t.class, &t.class_error) {
        (Some(c), _) => {
            let _ = writeln!(out, "class: {c}");
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "class: unresolved ({}: {})", e.code, e.message);
        }
        (None, None) => {}
    }
    for c in &t.center_types {
        let _ = writeln!(out, "  center [{}] is of type {:?}", c.equilibrium, c.kind);
    }
}

fn integrals(out: &mut String, d: &Option<DarbouxEcho>, r: &Option<RationalEcho>) {
    match d {
        Some(DarbouxEcho::Ok { integral }) => {
            let _ = writeln!(out, "darboux integral (normalized frame):\n  H = {}", darboux_formula(integral));
        }
        Some(DarbouxEcho::Error { error }) => {
            let _ = writeln!(out, "darboux integral: {} ({})", error.code, error.message);
        }
        None => {}
    }
    match r {
        Some(RationalEcho::Found { integral }) => {
            let _ = writeln!(out, "rational integral:\n  H = {}", rational_formula(integral));
            if let RationalIntegral::CircleProduct { factors } = integral {
                let m: Vec<String> = factors.iter().map(|f| f.exponent.to_string()).collect();
                let _ = writeln!(out, "  exponents ({})", m.join(", "));
            }
        }
        Some(RationalEcho::Absent { reason, note }) => {
            let _ = writeln!(out, "rational integral: absent ({reason:?})");
            if let Some(n) = note {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        Some(RationalEcho::Undecided { frequencies, n_max }) => {
            let _ = writeln!(
                out,
                "rational integral: undecided; frequencies {frequencies:?} have no integer ratio with denominator <= {n_max}"
            );
        }
        Some(RationalEcho::Error { error }) => {
            let _ = writeln!(out, "rational integral: {} ({})", error.code, error.message);
        }
        None => {}
    }
}

pub fn render(report: &Report) -> String {
    let mut out = String::new();
    let i = &report.input;
    let _ = writeln!(
        out,
        "degree {}, leading {}, roots {}",
        i.degree,
        i.leading,
        i.roots.join("; ")
    );
    let _ = writeln!(
        out,
        "normalized frame: w = ({}) (z - ({}))",
        i.normalization.scale, i.normalization.shift
    );
    equilibria(&mut out, &report.equilibria);
    if !report.consistency.passed {
        let _ = writeln!(out, "consistency: FAILED ({})", report.consistency.failures.join("; "));
    }
    integrals(&mut out, &report.darboux, &report.rational);
    if let Some(t) = &report.topology {
        topology(&mut out, t);
    }
    out
}
