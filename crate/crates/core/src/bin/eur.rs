use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use eur::applications::{capacity_curves, witness_threshold, Schedule};
use eur::channels::Noise;
use eur::errata::errata_report;
use eur::sweep::{emit_csv, format_value, load_config, preset, run_all, run_sweep, Grid, SweepRow};
use eur::{BellDiagonalCoeffs, Error, Result};

#[derive(Parser)]
#[command(name = "eur", version, about = "Entropic uncertainty of noisy Bell-diagonal states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a key = value config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a figure preset (fig1 .. fig6, with panel suffixes).
    Preset {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Noise level where U = S(X|B) + S(Z|B) crosses 1.
    Witness {
        #[arg(long)]
        channel: Noise,
        #[arg(long, allow_hyphen_values = true)]
        c1: f64,
        #[arg(long, allow_hyphen_values = true)]
        c2: f64,
        #[arg(long, allow_hyphen_values = true)]
        c3: f64,
        /// Weak-measurement strength.
        #[arg(long, default_value_t = 0.0)]
        s: f64,
    },
    /// Channel capacity curve; with --lambda the AD grid runs over t ∈ [0, 1].
    Capacity {
        #[arg(long)]
        channel: Noise,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        c1: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        c2: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = -1.0)]
        c3: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the closed-form expressions with the numerical pipeline.
    Errata {
        #[arg(long)]
        channel: Noise,
        #[arg(long, allow_hyphen_values = true, default_value_t = -0.5)]
        c1: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.4)]
        c2: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.8)]
        c3: f64,
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
}

fn write_rows(rows: &[SweepRow], out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
            emit_csv(rows, &mut BufWriter::new(file), path)
        }
        None => emit_csv(rows, &mut io::stdout().lock(), Path::new("<stdout>")),
    }
}

fn write_text(text: &str, out: Option<&Path>) -> Result<()> {
    let dest = out.unwrap_or(Path::new("<stdout>"));
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|source| Error::Io {
        path: dest.to_path_buf(),
        source,
    })
}

fn unit_grid(points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(Error::Config(vec![format!("points = {points} must be at least 2")]));
    }
    Ok(Grid::unit(points).values())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sweep { config, out } => {
            let cfg = load_config(&config)?;
            write_rows(&run_sweep(&cfg)?, out.as_deref())
        }
        Command::Preset { name, out } => write_rows(&run_all(&preset(&name)?)?, out.as_deref()),
        Command::Witness { channel, c1, c2, c3, s } => {
            let coeffs = BellDiagonalCoeffs::new(c1, c2, c3).map_err(|e| Error::Config(vec![e.to_string()]))?;
            let t = witness_threshold(channel, &coeffs, s)?;
            write_text(&format!("{t}\n"), None)
        }
        Command::Capacity {
            channel,
            lambda,
            c1,
            c2,
            c3,
            points,
            out,
        } => {
            let coeffs = BellDiagonalCoeffs::new(c1, c2, c3).map_err(|e| Error::Config(vec![e.to_string()]))?;
            let grid = unit_grid(points)?;
            let timed = lambda.is_some();
            let schedule = match lambda {
                Some(rate) => Schedule::Time { rate, times: grid },
                None => Schedule::Parameter(grid),
            };
            let param = channel.param_name();
            let mut text = if timed { format!("t,{param},capacity\n") } else { format!("{param},capacity\n") };
            for p in capacity_curves(channel, &coeffs, &schedule)? {
                if timed {
                    text.push_str(&format_value(p.x));
                    text.push(',');
                }
                text.push_str(&format!("{},{}\n", format_value(p.param), format_value(p.capacity)));
            }
            write_text(&text, out.as_deref())
        }
        Command::Errata { channel, c1, c2, c3, points } => {
            let coeffs = BellDiagonalCoeffs::new(c1, c2, c3).map_err(|e| Error::Config(vec![e.to_string()]))?;
            let report = errata_report(&coeffs, channel, &unit_grid(points)?)?;
            write_text(&report.to_string(), None)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("eur: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::OutOfRange { .. } | Error::UnphysicalCoeffs { .. } => 2,
                Error::Io { .. } => 4,
                _ => 3,
            })
        }
    }
}
