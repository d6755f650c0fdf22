mod args;
mod literal;
mod report;
mod text;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use crportrait::{render_portrait, Error, Grid, LevelSpec, RenderOptions};

use args::{Cli, Command};
use report::{Report, Timing, SCHEMA};

/// Error with its exit code.
#[derive(Debug)]
pub struct Failure {
    code: &'static str,
    message: String,
    exit: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: "InvalidInput", message: message.into(), exit: 2 }
    }

    fn io(e: std::io::Error) -> Self {
        Self { code: "Io", message: e.to_string(), exit: 1 }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = if e.is_input_error() {
            2
        } else if matches!(e, Error::TraceBudgetExceeded { .. }) {
            3
        } else {
            1
        };
        Self { code: e.code(), message: e.to_string(), exit }
    }
}

fn emit(text: &str) -> Result<(), Failure> {
    std::io::stdout().write_all(text.as_bytes()).map_err(Failure::io)
}

fn json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

fn run(cli: Cli) -> Result<(), Failure> {
    let start = Instant::now();
    let common = cli.command.common();
    let tol = common.tol.tolerances()?;
    let (system, source) = common.system(&tol)?;
    let eq = report::equilibria(&system, &tol)?;
    let mut report = Report {
        schema: SCHEMA,
        input: report::input_echo(&system, source),
        equilibria: report::equilibrium_echo(&system, &eq.reports),
        consistency: eq.consistency,
        darboux: None,
        rational: None,
        topology: None,
        timing: Timing { total_ms: 0.0 },
    };
    let elapsed = |start: Instant| start.elapsed().as_secs_f64() * 1e3;

    match &cli.command {
        Command::Classify { json: as_json, .. } => {
            report.topology = Some(report::topology(&system, &tol)?.1);
            report.timing.total_ms = elapsed(start);
            emit(&if *as_json { json(&report) } else { text::render(&report) })
        }
        Command::Integral { json: as_json, .. } => {
            report.darboux = Some(report::darboux(&system));
            report.rational = Some(report::rational(&system, &eq.reports, &tol));
            report.timing.total_ms = elapsed(start);
            emit(&if *as_json { json(&report) } else { text::render(&report) })
        }
        Command::Report { json: as_json, .. } => {
            report.darboux = Some(report::darboux(&system));
            report.rational = Some(report::rational(&system, &eq.reports, &tol));
            report.topology = Some(report::topology(&system, &tol)?.1);
            report.timing.total_ms = elapsed(start);
            emit(&if *as_json { json(&report) } else { text::render(&report) })
        }
        Command::Portrait { out, no_orbits, no_arrows, levels, grid, .. } => {
            let (config, _) = report::topology(&system, &tol)?;
            let levels = match levels {
                None => None,
                Some(text) => {
                    let values = text
                        .split(';')
                        .map(|v| v.trim().parse::<f64>().ok().filter(|x| x.is_finite()))
                        .collect::<Option<Vec<f64>>>()
                        .ok_or_else(|| Failure::usage(format!("invalid level list {text:?}")))?;
                    match report::rational(&system, &eq.reports, &tol) {
                        report::RationalEcho::Found { integral } => Some(LevelSpec {
                            integral,
                            levels: values,
                            grid: Grid { resolution: (*grid).max(2), ..Grid::for_system(&system) },
                        }),
                        _ => return Err(Error::NonRationalIntegral.into()),
                    }
                }
            };
            let options = RenderOptions { orbits: !no_orbits, arrows: !no_arrows, levels };
            let svg = render_portrait(&system, &config, &options);
            std::fs::write(out, svg).map_err(Failure::io)?;
            emit(&format!("wrote {}\n", out.display()))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if e.use_stderr() {
                let message = e.kind().as_str().unwrap_or("invalid arguments");
                eprintln!("{}", serde_json::json!({ "error": { "code": "InvalidInput", "message": message } }));
            }
            return ExitCode::from(code.clamp(0, 255) as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let line = serde_json::json!({ "error": { "code": f.code, "message": f.message } });
            eprintln!("{line}");
            ExitCode::from(f.exit)
        }
    }
}
