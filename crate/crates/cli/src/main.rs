use std::path::PathBuf;
use std::process::ExitCode;

use arcfit_cli::output::{flatten, OutputDocument};
use arcfit_cli::{
    cmd_bench, cmd_error, cmd_fit, cmd_poly, cmd_probe, parse_angle, CliError, CommandOutput,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "arcfit",
    version,
    about = "Optimal G^k Bézier approximants of circular arcs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
struct AngleArg {
    /// Half-angle: radians (0.5, pi/4, 3*pi/8) or degrees with --degrees.
    #[arg(long, allow_hyphen_values = true)]
    half_angle: String,
    /// Read --half-angle as degrees.
    #[arg(long)]
    degrees: bool,
}

impl AngleArg {
    fn radians(&self) -> Result<f64, CliError> {
        parse_angle(&self.half_angle, self.degrees)
    }
}

#[derive(Debug, Clone, Args)]
struct CaseArgs {
    #[arg(value_name = "DEGREE")]
    degree_pos: Option<usize>,
    #[arg(value_name = "SMOOTHNESS")]
    smoothness_pos: Option<usize>,
    #[arg(long, conflicts_with = "degree_pos")]
    degree: Option<usize>,
    #[arg(long, conflicts_with = "smoothness_pos")]
    smoothness: Option<usize>,
}

impl CaseArgs {
    fn get(&self) -> Result<(usize, usize), CliError> {
        let n = self.degree.or(self.degree_pos);
        let k = self.smoothness.or(self.smoothness_pos);
        match (n, k) {
            (Some(n), Some(k)) => Ok((n, k)),
            _ => Err(CliError::Parse(
                "both degree and smoothness are required".into(),
            )),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit the optimal approximant of a case to an arc.
    Fit {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        angle: AngleArg,
        /// Write an SVG plot of the fit to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Constrained minimax polynomial (1 - t²)^(k+1) q(t).
    Poly {
        #[command(flatten)]
        case: CaseArgs,
    },
    /// Reproduce a comparison table.
    Bench {
        table: String,
        #[command(flatten)]
        angle: AngleArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Brute-force grid check of the fitter's optimum.
    Probe {
        #[command(flatten)]
        case: CaseArgs,
        #[command(flatten)]
        angle: AngleArg,
        #[arg(long, default_value_t = 101)]
        resolution: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Error metrics of a curve read from a JSON file.
    Error {
        file: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Fit { .. } => "fit",
            Command::Poly { .. } => "poly",
            Command::Bench { .. } => "bench",
            Command::Probe { .. } => "probe",
            Command::Error { .. } => "error",
        }
    }

    /// Arguments as given, for error documents where parsing may have failed.
    fn inputs(&self) -> Value {
        let case = |c: &CaseArgs| (c.degree.or(c.degree_pos), c.smoothness.or(c.smoothness_pos));
        match self {
            Command::Fit {
                case: c,
                angle,
                svg,
                samples,
            } => {
                let (n, k) = case(c);
                json!({ "degree": n, "smoothness": k, "half_angle": angle.half_angle, "degrees": angle.degrees,
                        "svg": svg, "samples": samples })
            }
            Command::Poly { case: c } => {
                let (n, k) = case(c);
                json!({ "degree": n, "smoothness": k })
            }
            Command::Bench {
                table,
                angle,
                samples,
            } => {
                json!({ "table": table, "half_angle": angle.half_angle, "degrees": angle.degrees, "samples": samples })
            }
            Command::Probe {
                case: c,
                angle,
                resolution,
                seed,
            } => {
                let (n, k) = case(c);
                json!({ "degree": n, "smoothness": k, "half_angle": angle.half_angle, "degrees": angle.degrees,
                        "resolution": resolution, "seed": seed })
            }
            Command::Error { file, svg, samples } => {
                json!({ "file": file, "svg": svg, "samples": samples })
            }
        }
    }

    fn svg_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Fit { svg, .. } | Command::Error { svg, .. } => svg.as_ref(),
            _ => None,
        }
    }

    fn run(&self) -> Result<CommandOutput, CliError> {
        match self {
            Command::Fit {
                case,
                angle,
                svg,
                samples,
            } => {
                let (n, k) = case.get()?;
                cmd_fit(n, k, angle.radians()?, *samples, svg.is_some())
            }
            Command::Poly { case } => {
                let (n, k) = case.get()?;
                cmd_poly(n, k)
            }
            Command::Bench {
                table,
                angle,
                samples,
            } => cmd_bench(table, angle.radians()?, *samples),
            Command::Probe {
                case,
                angle,
                resolution,
                seed,
            } => {
                let (n, k) = case.get()?;
                cmd_probe(n, k, angle.radians()?, *resolution, *seed)
            }
            Command::Error { file, svg, samples } => cmd_error(file, *samples, svg.is_some()),
        }
    }
}

fn render(doc: &OutputDocument, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => doc.to_json(),
        Format::Csv => flatten(&serde_json::to_value(doc)?).to_csv(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let outcome = cli.command.run().and_then(|out| {
        if let (Some(path), Some(svg)) = (cli.command.svg_path(), &out.svg) {
            std::fs::write(path, svg)?;
        }
        render(&out.document, cli.format)
    });
    match outcome {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            let doc = OutputDocument::error(name, cli.command.inputs(), &e.to_string());
            if let Ok(text) = render(&doc, cli.format) {
                println!("{text}");
            }
            eprintln!("arcfit {name}: {e}");
            ExitCode::FAILURE
        }
    }
}
