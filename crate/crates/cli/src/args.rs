use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use crportrait::{Complex, HolomorphicSystem, Tolerances};

use crate::literal::{parse_complex, parse_list};
use crate::Failure;

#[derive(Debug, Parser)]
#[command(name = "crportrait", version, about = "Phase portraits of holomorphic planar systems ż = P(z)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the equilibria and the global portrait.
    Classify {
        #[command(flatten)]
        common: Common,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Darboux and rational first integrals.
    Integral {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
    },
    /// Render the phase portrait on the Poincaré disk.
    Portrait {
        #[command(flatten)]
        common: Common,
        /// Output SVG file.
        #[arg(long)]
        out: PathBuf,
        /// Omit the typical orbits of the canonical regions.
        #[arg(long)]
        no_orbits: bool,
        /// Omit arrowheads.
        #[arg(long)]
        no_arrows: bool,
        /// Levels of the rational integral to draw, e.g. "0.5; 1; 2".
        #[arg(long, allow_hyphen_values = true)]
        levels: Option<String>,
        /// Contour grid cells per side.
        #[arg(long, default_value_t = 600)]
        grid: usize,
    },
    /// Full analysis report.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        json: bool,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Self::Classify { common, .. }
            | Self::Integral { common, .. }
            | Self::Portrait { common, .. }
            | Self::Report { common, .. } => common,
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    #[command(flatten)]
    pub input: Input,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Roots, e.g. "0; 1+1i; 2+2i".
    #[arg(long, allow_hyphen_values = true)]
    pub roots: Option<String>,
    /// Coefficients from the leading one down, e.g. "1; 0; -2".
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Leading coefficient for --roots input.
    #[arg(long, default_value = "1", env = "CRC_LEADING", allow_hyphen_values = true)]
    pub leading: String,
    #[arg(long = "tol-mult", env = "CRC_TOL_MULT")]
    pub mult: Option<f64>,
    #[arg(long = "tol-class", env = "CRC_TOL_CLASS")]
    pub class: Option<f64>,
    #[arg(long = "tol-geom", env = "CRC_TOL_GEOM")]
    pub geom: Option<f64>,
    #[arg(long = "tol-seed", env = "CRC_TOL_SEED")]
    pub seed: Option<f64>,
    #[arg(long = "tol-land", env = "CRC_TOL_LAND")]
    pub land: Option<f64>,
    #[arg(long = "tol-t-max", env = "CRC_TOL_T_MAX")]
    pub t_max: Option<f64>,
    #[arg(long = "tol-max-steps", env = "CRC_TOL_MAX_STEPS")]
    pub max_steps: Option<usize>,
    #[arg(long = "tol-rtol", env = "CRC_TOL_RTOL")]
    pub rtol: Option<f64>,
    #[arg(long = "tol-connection-window", env = "CRC_TOL_CONNECTION_WINDOW")]
    pub connection_window: Option<f64>,
    #[arg(long = "tol-v-max", env = "CRC_TOL_V_MAX")]
    pub v_max: Option<f64>,
    #[arg(long = "tol-n-max", env = "CRC_TOL_N_MAX")]
    pub n_max: Option<u64>,
}

impl TolArgs {
    pub fn tolerances(&self) -> Result<Tolerances, Failure> {
        let mut t = Tolerances::default();
        let positive = |name: &str, v: Option<f64>, slot: &mut f64| -> Result<(), Failure> {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Failure::usage(format!("--tol-{name} must be a positive number")));
                }
                *slot = v;
            }
            Ok(())
        };
        positive("mult", self.mult, &mut t.mult)?;
        positive("class", self.class, &mut t.class)?;
        positive("geom", self.geom, &mut t.geom)?;
        positive("seed", self.seed, &mut t.seed)?;
        positive("land", self.land, &mut t.land)?;
        positive("t-max", self.t_max, &mut t.t_max)?;
        positive("rtol", self.rtol, &mut t.rtol)?;
        positive("connection-window", self.connection_window, &mut t.connection_window)?;
        positive("v-max", self.v_max, &mut t.v_max)?;
        if let Some(n) = self.max_steps {
            t.max_steps = n;
        }
        if let Some(n) = self.n_max {
            if n == 0 {
                return Err(Failure::usage("--tol-n-max must be positive"));
            }
            t.n_max = n;
        }
        Ok(t)
    }
}

/// How the system was given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Roots,
    Coefficients,
}

impl Common {
    pub fn system(&self, tol: &Tolerances) -> Result<(HolomorphicSystem, Source), Failure> {
        let list = |text: &str| parse_list(text).map_err(Failure::usage);
        match (&self.input.roots, &self.input.coeffs) {
            (Some(roots), None) => {
                let leading: Complex = parse_complex(&self.tol.leading).map_err(Failure::usage)?;
                let system = HolomorphicSystem::from_roots(leading, &list(roots)?, tol.mult)?;
                Ok((system, Source::Roots))
            }
            (None, Some(coeffs)) => Ok((HolomorphicSystem::from_coefficients(&list(coeffs)?, tol.mult)?, Source::Coefficients)),
            _ => Err(Failure::usage("give exactly one of --roots and --coeffs")),
        }
    }
}
