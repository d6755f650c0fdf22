/// Numerical knobs shared by the analysis pipeline.
///
/// Every threshold used by root clustering, classification and separatrix
/// tracing lives here so that the CLI can override them in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Root clustering radius, relative to the root magnitude scale.
    pub mult: f64,
    /// `|Re λ| <= class * |λ|` is treated as a center (and symmetrically for nodes).
    pub class: f64,
    /// Collinearity tolerance (sine of the angle) for three centers or nodes.
    pub geom: f64,
    /// Seed distance from an equator saddle, in chart units.
    pub seed: f64,
    /// Landing radius around finite equilibria, in the tracing frame.
    pub land: f64,
    /// Budget in rescaled time for one trace.
    pub t_max: f64,
    /// Step budget for one trace.
    pub max_steps: usize,
    /// Relative tolerance of the adaptive integrator.
    pub rtol: f64,
    /// Angular window (radians) for saddle-connection detection.
    pub connection_window: f64,
    /// Chart validity bound on `v`.
    pub v_max: f64,
    /// Denominator bound for commensurability detection.
    pub n_max: u64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            mult: 1e-9,
            class: 1e-10,
            geom: 1e-9,
            seed: 1e-6,
            land: 1e-4,
            t_max: 1e3,
            max_steps: 2_000_000,
            rtol: 1e-10,
            connection_window: 1e-3,
            v_max: 0.5,
            n_max: 64,
        }
    }
}
