//! Benchmark fixtures.

use crportrait::{Complex, HolomorphicSystem};

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Named systems covering each portrait family.
pub fn systems() -> Vec<(&'static str, HolomorphicSystem)> {
    let o = c(0.0, 0.0);
    [
        ("two_nodes", vec![o, c(2.0, 0.0)]),
        ("two_foci", vec![o, c(1.0, 2.0)]),
        ("triple", vec![o, o, o]),
        ("double_focus", vec![o, o, c(1.5, 1.0)]),
        ("three_centers", vec![o, c(1.0, 1.0), c(2.0, 2.0)]),
        ("shared_sink", vec![o, c(-1.0, 0.0), c(1.0, 1.0)]),
    ]
    .into_iter()
    .map(|(name, roots)| (name, HolomorphicSystem::monic(&roots).expect("fixture roots")))
    .collect()
}

/// The three-center system, which has a rational integral.
pub fn three_centers() -> HolomorphicSystem {
    HolomorphicSystem::monic(&[c(0.0, 0.0), c(1.0, 1.0), c(2.0, 2.0)]).expect("fixture roots")
}
