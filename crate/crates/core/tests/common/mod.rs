#![allow(dead_code)]

use crportrait::{Complex, HolomorphicSystem};

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn monic(roots: &[Complex]) -> HolomorphicSystem {
    HolomorphicSystem::monic(roots).expect("valid roots")
}

/// Reference systems, one per portrait family: (label, normalized roots,
/// expected class name).
pub fn reference_systems() -> Vec<(&'static str, Vec<Complex>, &'static str)> {
    let o = c(0.0, 0.0);
    vec![
        ("z(z-2)", vec![o, c(2.0, 0.0)], "Q_ANTISADDLE_PAIR"),
        ("z(z-1-2i)", vec![o, c(1.0, 2.0)], "Q_ANTISADDLE_PAIR"),
        ("z(z-2i)", vec![o, c(0.0, 2.0)], "Q_TWO_CENTERS"),
        ("z^2", vec![o, o], "Q_DEGENERATE_DIPOLE"),
        ("z^3", vec![o, o, o], "C_TRIPLE_DEGENERATE"),
        // z₂² = -9/4: the simple equilibrium is a stable node
        ("z^2(z-1.5i)", vec![o, o, c(0.0, 1.5)], "C_DOUBLE_WITH_SINK"),
        ("z^2(z-1-2i)", vec![o, o, c(1.0, 2.0)], "C_DOUBLE_WITH_SINK"),
        ("z^2(z-1-i)", vec![o, o, c(1.0, 1.0)], "C_DOUBLE_WITH_CENTER"),
        ("z^2(z-1.5-i)", vec![o, o, c(1.5, 1.0)], "C_DOUBLE_WITH_SOURCE"),
        ("z^2(z-1.5)", vec![o, o, c(1.5, 0.0)], "C_DOUBLE_WITH_SOURCE"),
        ("z(z-1-i)(z-2-2i)", vec![o, c(1.0, 1.0), c(2.0, 2.0)], "C_THREE_CENTERS"),
        ("z(z+1)(z+i)", vec![o, c(-1.0, 0.0), c(0.0, -1.0)], "C_ONE_CENTER_SOURCE_SINK"),
        ("z(z+1)(z-1-i)", vec![o, c(-1.0, 0.0), c(1.0, 1.0)], "C_NO_CENTER_SHARED_SINK"),
        ("z(z-i)(z+1+i)", vec![o, c(0.0, 1.0), c(-1.0, -1.0)], "C_NO_CENTER_SHARED_SOURCE"),
    ]
}
