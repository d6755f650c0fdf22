mod common;

use common::{monic, reference_systems};
use crportrait::topology::{classify_portrait, separatrix_configuration};
use crportrait::Tolerances;

#[test]
fn reference_systems_classify() {
    let tol = Tolerances::default();
    for (label, roots, want) in reference_systems() {
        let s = monic(&roots);
        let t0 = std::time::Instant::now();
        let config = separatrix_configuration(&s, &tol).unwrap_or_else(|e| panic!("{label}: {e}"));
        let class = classify_portrait(&config).unwrap_or_else(|e| panic!("{label}: {e}"));
        println!("{label}: {class} in {:?}", t0.elapsed());
        for sep in &config.separatrices {
            println!("  saddle {} {:?} -> {:?} ({} pts)", sep.saddle, sep.role, sep.limit, sep.path.len());
        }
        for r in &config.regions {
            println!("  region {} conn {:?} bdry {:?} int {:?} orbit {}", r.index, r.connections, r.boundary_equilibria, r.interior_equilibria, r.orbit.len());
        }
        assert_eq!(class.name(), want, "{label}");
    }
}
