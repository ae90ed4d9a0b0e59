use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arcsupport::fuzz::{run_campaign, summarize, to_csv, DeltaPolicy, FuzzConfig};
use arcsupport::{
    build_arc, build_profile, melkman_hull, ArcFile, Error, Hull, PolygonalArc, SupportProfile,
    Tolerances,
};
use clap::{Parser, Subcommand, ValueEnum};

mod output;
mod render;

use output::{analyze_report, analyze_text, find_pair_json, DeltaArg, ModeArg};
use render::{render_svg, RenderSpec};

#[derive(Parser)]
#[command(
    name = "arcsupport",
    version,
    about = "Support-line pairs of simple polygonal arcs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hull corners and the support profile of an arc.
    Analyze {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find the pair of support lines at angle gap DELTA.
    FindPair {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        delta: DeltaArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Mountain)]
        mode: ModeArg,
        /// Read DELTA and print angles in degrees.
        #[arg(long)]
        degrees: bool,
    },
    /// Draw the arc, its hull and the support-line pair as SVG.
    Render {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        delta: DeltaArg,
        #[arg(long, value_enum, default_value_t = ModeArg::Mountain)]
        mode: ModeArg,
        #[arg(long)]
        degrees: bool,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 600)]
        size: u32,
        #[arg(long)]
        no_labels: bool,
    },
    /// Run the randomized campaign over both scans and write a CSV report.
    Fuzz {
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Policy::SafeRange)]
        policy: Policy,
        #[arg(long, default_value_t = 4)]
        min_vertices: usize,
        #[arg(long, default_value_t = 12)]
        max_vertices: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Policy {
    SafeRange,
    FullRange,
}

enum Failure {
    Core(Error),
    Input(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn report(&self) -> ExitCode {
        match self {
            Failure::Core(e) => {
                eprintln!("{e}");
                ExitCode::from(match e {
                    Error::InvalidDelta(_) => 3,
                    Error::GenerationExhausted { .. } => 5,
                    _ => 2,
                })
            }
            Failure::Input(msg) => {
                eprintln!("MalformedInput: {msg}");
                ExitCode::from(2)
            }
            Failure::Io(path, e) => {
                eprintln!("IoError: {}: {e}", path.display());
                ExitCode::from(4)
            }
        }
    }
}

struct Loaded {
    arc: PolygonalArc,
    hull: Hull,
    profile: SupportProfile,
}

fn load(path: &Path) -> Result<Loaded, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_owned(), e))?;
    let file: ArcFile = serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let arc = build_arc(&file.points(), &Tolerances::default())?;
    let hull = melkman_hull(&arc, arc.tolerances())?;
    let profile = build_profile(&hull)?;
    Ok(Loaded { arc, hull, profile })
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Io(path.to_owned(), e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze { input, json } => {
            let l = load(&input)?;
            if json {
                let report = analyze_report(&l.arc, &l.hull, &l.profile);
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print!("{}", analyze_text(&l.arc, &l.hull, &l.profile));
            }
        }
        Command::FindPair {
            input,
            delta,
            mode,
            degrees,
        } => {
            let l = load(&input)?;
            let value = find_pair_json(&l.arc, &l.profile, delta, mode, degrees)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("result serializes")
            );
        }
        Command::Render {
            input,
            delta,
            mode,
            degrees,
            output,
            size,
            no_labels,
        } => {
            let l = load(&input)?;
            let spec = RenderSpec {
                width: size,
                height: size,
                labels: !no_labels,
                ..RenderSpec::default()
            };
            let svg = render_svg(
                &l.arc,
                &l.hull,
                &l.profile,
                delta.radians(degrees),
                mode,
                &spec,
            )?;
            write(&output, &svg)?;
        }
        Command::Fuzz {
            trials,
            seed,
            policy,
            min_vertices,
            max_vertices,
            output,
        } => {
            let config = FuzzConfig {
                trials,
                seed,
                vertex_range: (min_vertices, max_vertices),
                delta_policy: match policy {
                    Policy::SafeRange => DeltaPolicy::SafeRange,
                    Policy::FullRange => DeltaPolicy::FullRange,
                },
                ..FuzzConfig::default()
            };
            if !config.is_valid() {
                return Err(Failure::Input(
                    "need 3 <= min-vertices <= max-vertices".into(),
                ));
            }
            let rows = run_campaign(&config)?;
            write(&output, &to_csv(&rows))?;
            println!("{}", summarize(&rows));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.report(),
    }
}
