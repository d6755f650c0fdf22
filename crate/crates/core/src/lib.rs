//! Qualitative analysis of holomorphic planar systems `ż = 𝒫(z)` of degree
//! two and three: equilibria, Darboux and rational first integrals, Poincaré
//! compactification, separatrix configurations and phase portraits.

pub mod compactify;
pub mod darboux;
pub mod equilibria;
pub mod error;
pub mod json;
pub mod ode;
pub mod poly2;
pub mod render;
pub mod roots;
pub mod system;
pub mod tolerances;
pub mod topology;

pub use darboux::{
    build_integral, build_invariants, eval_integral, integral_residual, rational_integral,
    solve_exponents, DarbouxIntegral, Factor, Invariant, InvariantForm, RationalIntegral,
    RationalOutcome,
};
pub use equilibria::{
    classify_all, classify_equilibrium, global_consistency, ConsistencyVerdict, EquilibriumKind,
    EquilibriumReport, Rotation, Stability,
};
pub use error::{Error, Result};
pub use render::{level_curves, render_portrait, Grid, LevelCurve, LevelSpec, RenderOptions};
pub use system::{AffineMap, Complex, HolomorphicSystem, RootSet};
pub use tolerances::Tolerances;
pub use topology::{
    center_region_type, classify_portrait, orbit_period, separatrix_configuration, trace_separatrix,
    CenterType, PeriodOutcome, SeparatrixConfiguration, TopologicalClass,
};
