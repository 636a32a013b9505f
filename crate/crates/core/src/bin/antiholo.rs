use std::path::PathBuf;
use std::process::ExitCode;

use antiholo::jobs::{run, Job, JobSpec, ModelSpec};
use antiholo::render::{Palette, RenderConfig, RenderMode};
use antiholo::verify::Suite;
use antiholo::Error;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Parser)]
#[command(
    name = "antiholo",
    version,
    about = "Schwarz reflections, correspondences and their external models"
)]
struct Cli {
    /// Run a JSON job file instead of a subcommand.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Print the job as JSON and exit without running it.
    #[arg(long)]
    dump_spec: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Tiles,
    Lifted,
    Julia,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Parabolic,
    Blaschke,
}

#[derive(Subcommand)]
enum Command {
    /// Render tiles of a scene or the Julia set of an external model.
    Render {
        #[arg(long)]
        scene: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "tiles")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "parabolic")]
        model: Family,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, num_args = 2, allow_negative_numbers = true, default_values_t = [0.0, 0.0])]
        center: Vec<f64>,
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        #[arg(long, num_args = 2, default_values_t = [512, 512])]
        resolution: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        max_iter: u32,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        gray: bool,
        /// Output stem; `.ppm`, `.png` and `.json` are written next to it.
        #[arg(long, default_value = "render")]
        out: PathBuf,
    },
    /// Cusp type of a scene's singular point or of an explicit germ.
    ClassifyCusp {
        #[arg(long)]
        scene: Option<PathBuf>,
        /// Germ coefficients as `re,im` pairs starting at the linear term.
        #[arg(long, num_args = 1.., allow_hyphen_values = true, value_parser = parse_pair)]
        germ: Option<Vec<[f64; 2]>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded batch checks.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        scene: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grand-orbit invariance of the partition along short words.
    OrbitCheck {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        start: [f64; 2],
        #[arg(long, default_value_t = 3)]
        word_len: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Markov partition of the anti-Farey boundary map.
    Markov {
        #[arg(long)]
        d: usize,
        /// CSV of the pieces.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Écalle heights for `B_d`.
    Ecalle {
        #[arg(long)]
        d: usize,
        #[arg(long = "point", allow_hyphen_values = true, value_parser = parse_pair, default_values = ["0,0"])]
        points: Vec<[f64; 2]>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The correspondence's tuple map at a single value.
    TupleCheck {
        #[arg(long)]
        scene: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_pair)]
        value: [f64; 2],
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected re,im, got {s:?}"))?;
    let re = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let im = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    Ok([re, im])
}

fn job(cmd: Command) -> Job {
    match cmd {
        Command::Render {
            scene,
            mode,
            model,
            d,
            center,
            width,
            resolution,
            max_iter,
            threads,
            gray,
            out,
        } => {
            let mode = match mode {
                Mode::Tiles => RenderMode::SchwarzTiles,
                Mode::Lifted => RenderMode::LiftedPartition,
                Mode::Julia => RenderMode::AntiRationalJulia,
            };
            let mut config = RenderConfig::new(
                mode,
                Complex64::new(center[0], center[1]),
                width,
                resolution[0],
                resolution[1],
            );
            config.max_iter = max_iter;
            config.threads = threads;
            if gray {
                config.palette = Palette::Gray;
            }
            let model = (mode == RenderMode::AntiRationalJulia).then_some(match model {
                Family::Parabolic => ModelSpec::Parabolic { d },
                Family::Blaschke => ModelSpec::Blaschke { d },
            });
            Job::Render {
                scene,
                model,
                config,
                out,
            }
        }
        Command::ClassifyCusp { scene, germ, out } => Job::ClassifyCusp { scene, germ, out },
        Command::Verify {
            suite,
            scene,
            d,
            samples,
            seed,
            tol,
            max_iter,
            out,
        } => Job::Verify {
            suite,
            scene,
            d,
            samples,
            seed,
            tol,
            max_iter,
            out,
        },
        Command::OrbitCheck {
            scene,
            start,
            word_len,
            tol,
            out,
        } => Job::OrbitCheck {
            scene,
            start,
            word_len,
            tol,
            out,
        },
        Command::Markov { d, out } => Job::Markov { d, out },
        Command::Ecalle { d, points, out } => Job::Ecalle { d, points, out },
        Command::TupleCheck { scene, value, tol, out } => Job::TupleCheck { scene, value, tol, out },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let spec = match (cli.spec, cli.command) {
        (Some(_), Some(_)) => Err(Error::InvalidConfig(
            "--spec cannot be combined with a subcommand".into(),
        )),
        (Some(path), None) => JobSpec::load(&path),
        (None, Some(cmd)) => Ok(JobSpec::new(job(cmd))),
        (None, None) => Err(Error::InvalidConfig("a subcommand or --spec is required".into())),
    };
    let result = spec.and_then(|spec| {
        if cli.dump_spec {
            println!("{}", spec.to_json()?);
            return Ok(0);
        }
        let summary = run(&spec)?;
        println!("{}", serde_json::to_string_pretty(&summary)?);
        Ok(summary.exit_code())
    });
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
