use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported degree {0}: only quadratic and cubic systems are handled")]
    DegreeUnsupported(usize),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("simple root at {} has zero derivative (multiplicity clustering is inconsistent)", fmt_c(.0))]
    ZeroLambdaOnSimpleRoot(Complex64),
    #[error("cofactor system has no nontrivial solution")]
    NoNontrivialSolution,
    #[error("frequencies {0:?} admit no integer ratio with denominator <= {1}")]
    CommensurabilityUndecided(Vec<f64>, u64),
    #[error("point ({x}, {y}) lies on the singular set of the integral")]
    SingularPoint { x: f64, y: f64 },
    #[error("point lies outside the open unit disk")]
    OutsideDisk,
    #[error("chart coordinate v = {0} outside the chart validity range")]
    ChartDomainExceeded(f64),
    #[error("trace budget exceeded after {steps} steps (t = {time})")]
    TraceBudgetExceeded { steps: usize, time: f64 },
    #[error("separatrix configuration matches no portrait class: {0}")]
    ConfigurationInconsistent(String),
    #[error("equilibrium {0} is not a center")]
    NotACenter(usize),
    #[error("level curves need a branch-free rational integral")]
    NonRationalIntegral,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Self::DegreeUnsupported(_) => "DegreeUnsupported",
            Self::ZeroLeadingCoefficient => "ZeroLeadingCoefficient",
            Self::NonFinite => "NonFinite",
            Self::ZeroLambdaOnSimpleRoot(_) => "ZeroLambdaOnSimpleRoot",
            Self::NoNontrivialSolution => "NoNontrivialSolution",
            Self::CommensurabilityUndecided(..) => "CommensurabilityUndecided",
            Self::SingularPoint { .. } => "SingularPoint",
            Self::OutsideDisk => "OutsideDisk",
            Self::ChartDomainExceeded(_) => "ChartDomainExceeded",
            Self::TraceBudgetExceeded { .. } => "TraceBudgetExceeded",
            Self::ConfigurationInconsistent(_) => "ConfigurationInconsistent",
            Self::NotACenter(_) => "NotACenter",
            Self::NonRationalIntegral => "NonRationalIntegral",
        }
    }

    /// Whether the error is caused by the input rather than the analysis.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Self::DegreeUnsupported(_) | Self::ZeroLeadingCoefficient | Self::NonFinite)
    }
}

fn fmt_c(z: &Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

pub type Result<T> = std::result::Result<T, Error>;
