use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use slopekit::root_datum::{CustomDatum, PRESET_NAMES};
use slopekit::{Error, Result, Weight};
use slopekit_cli::{error_document, exit_code, render, run, Command, FlavorName, Format, JobConfig, Rat};

const MODULE: &str = "cli";

#[derive(Parser, Debug)]
#[command(name = "slopekit", version, about = "Exact Weyl-group, Cousin-complex and slope-bound computations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Root datum preset.
    #[arg(long, global = true, help = format!("Root datum preset: {}", PRESET_NAMES.join(", ")))]
    preset: Option<String>,
    /// JSON file describing a custom root datum.
    #[arg(long, global = true, value_name = "FILE")]
    custom: Option<PathBuf>,
    /// Levi as comma separated 0-based simple-root indices; `none` for the torus.
    #[arg(long, global = true, allow_hyphen_values = true)]
    levi: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with = "format")]
    json: bool,
    /// Seed for sampled property sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Print the job configuration as JSON instead of running it.
    #[arg(long, global = true)]
    print_config: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Weyl group summary, one element, or the Kostant representatives.
    Weyl {
        #[arg(long)]
        list_kostant: bool,
        #[arg(long)]
        element: Option<String>,
    },
    /// Formal characters and Weyl dimensions.
    #[command(subcommand)]
    Char(CharCmd),
    /// Small-slope conditions, slope bounds and Hecke tables.
    #[command(subcommand)]
    Slopes(SlopesCmd),
    /// Cousin complexes and Borel-Weil-Bott data.
    #[command(subcommand)]
    Cousin(CousinCmd),
    /// Newton polygons and slope dimensions.
    #[command(subcommand)]
    Newton(NewtonCmd),
    /// Runs the property suites.
    Check {
        /// Suite name; repeat for several. Defaults to every suite.
        #[arg(long = "suite")]
        suites: Vec<String>,
        /// Root system; repeat for several. Defaults to `--preset` or the standard list.
        #[arg(long = "system")]
        systems: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i64>,
        /// Check this many seeded slopes instead of the full grid.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Runs a job described by a JSON configuration file.
    Run {
        #[arg(long, value_name = "FILE")]
        config: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum CharCmd {
    Verma {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        depth: u32,
    },
    Weyl {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[arg(long)]
        depth: u32,
    },
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
}

#[derive(Subcommand, Debug)]
enum SlopesCmd {
    /// Evaluates one small-slope condition at `--lambda`.
    Cond {
        /// ss or sss.
        #[arg(long)]
        kind: String,
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Slope bounds of the standard Hecke operators over the Kostant set.
    Table {
        /// ss or sss.
        #[arg(long)]
        variant: String,
    },
    Bound {
        #[arg(long)]
        w: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        /// conjectural or proven_pair.
        #[arg(long, default_value = "conjectural")]
        variant: String,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
    },
    /// The sets C(kappa), W(kappa) and the range of lengths.
    Sets {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum FlavorArg {
    Nu,
    #[value(name = "M", alias = "m")]
    M,
    #[value(name = "Mw", alias = "mw")]
    Mw,
    B,
    W,
}

#[derive(Subcommand, Debug)]
enum CousinCmd {
    Flag {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long)]
        depth: u32,
    },
    Bwb {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
    Ranges {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
    Shape {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        sign: String,
    },
    Amplitude {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
}

#[derive(Subcommand, Debug)]
enum NewtonCmd {
    Poly {
        #[arg(long)]
        p: u64,
        /// Coefficients by increasing degree.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    Slopedim {
        #[arg(long)]
        p: u64,
        /// JSON rows, inline or as `@file.json`.
        #[arg(long)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

fn weight(s: &str) -> Result<Weight> {
    Weight::parse(s)
}

fn opt_weight(s: &Option<String>) -> Result<Option<Weight>> {
    s.as_deref().map(weight).transpose()
}

/// Parses a unit-variant name through its serde spelling.
fn named<T: DeserializeOwned>(what: &str, s: &str) -> Result<T> {
    let name = match s.trim() {
        "+" | "plus" => "+".to_string(),
        "-" | "minus" => "-".to_string(),
        other => other.replace('-', "_"),
    };
    serde_json::from_value(serde_json::Value::String(name))
        .map_err(|_| Error::config(MODULE, "args", format!("bad {what} {s:?}")))
}

fn read_file(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::config(MODULE, "read", format!("{}: {e}", path.display())))
}

fn parse_json<T: DeserializeOwned>(what: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::config(MODULE, "parse", format!("bad {what}: {e}")))
}

fn levi(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() || s == "none" {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| Error::config(MODULE, "args", format!("bad levi index {x:?}"))))
        .collect()
}

fn command(cmd: Cmd) -> Result<Command> {
    Ok(match cmd {
        Cmd::Weyl { list_kostant, element } => Command::Weyl { list_kostant, element },
        Cmd::Char(c) => match c {
            CharCmd::Verma { weight: w, depth } => Command::CharVerma { weight: weight(&w)?, depth },
            CharCmd::Weyl { weight: w, depth } => Command::CharWeyl { weight: weight(&w)?, depth },
            CharCmd::Dim { weight: w } => Command::CharDim { weight: weight(&w)? },
        },
        Cmd::Slopes(c) => match c {
            SlopesCmd::Cond { kind, flavor, sign, kappa, nu, w, lambda } => Command::SlopesCond {
                kind: named("kind", &kind)?,
                flavor: match flavor {
                    FlavorArg::Nu => FlavorName::Nu,
                    FlavorArg::M => FlavorName::M,
                    FlavorArg::Mw => FlavorName::Mw,
                    FlavorArg::B => FlavorName::B,
                    FlavorArg::W => FlavorName::W,
                },
                sign: named("sign", &sign)?,
                kappa: opt_weight(&kappa)?,
                nu: opt_weight(&nu)?,
                w,
                lambda: weight(&lambda)?,
            },
            SlopesCmd::Table { variant } => Command::SlopesTable { variant: named("variant", &variant)? },
            SlopesCmd::Bound { w, kappa, variant, sign } => Command::SlopesBound {
                w,
                kappa: weight(&kappa)?,
                variant: named("variant", &variant)?,
                sign: named("sign", &sign)?,
            },
            SlopesCmd::Sets { kappa } => Command::SlopesSets { kappa: weight(&kappa)? },
        },
        Cmd::Cousin(c) => match c {
            CousinCmd::Flag { kappa, depth } => Command::CousinFlag { kappa: weight(&kappa)?, depth },
            CousinCmd::Bwb { kappa } => Command::CousinBwb { kappa: weight(&kappa)? },
            CousinCmd::Ranges { kappa } => Command::CousinRanges { kappa: weight(&kappa)? },
            CousinCmd::Shape { kappa, sign } => {
                Command::CousinShape { kappa: weight(&kappa)?, sign: named("sign", &sign)? }
            }
            CousinCmd::Amplitude { kappa } => Command::CousinAmplitude { kappa: weight(&kappa)? },
        },
        Cmd::Newton(c) => match c {
            NewtonCmd::Poly { p, coeffs, h } => Command::NewtonPoly {
                p,
                coeffs: coeffs.split(',').map(|x| x.parse().expect("infallible")).collect(),
                h: h.map(|x| x.parse().expect("infallible")),
            },
            NewtonCmd::Slopedim { p, matrix, h } => {
                let text = match matrix.strip_prefix('@') {
                    Some(path) => read_file(&PathBuf::from(path))?,
                    None => matrix,
                };
                let matrix: Vec<Vec<Rat>> = parse_json("matrix", &text)?;
                Command::NewtonSlopedim { p, matrix, h: h.parse().expect("infallible") }
            }
        },
        Cmd::Check { suites, systems, lo, hi, sample } => Command::Check { suites, systems, lo, hi, sample },
        Cmd::Run { .. } => unreachable!("handled by the caller"),
    })
}

fn job(cli: Cli) -> Result<JobConfig> {
    let c = cli.common;
    let format = if c.json { Some(Format::Json) } else { c.format };
    let mut cfg = match cli.cmd {
        Cmd::Run { config } => parse_json::<JobConfig>("config", &read_file(&config)?)?,
        cmd => JobConfig {
            preset: None,
            custom: None,
            levi: None,
            format: None,
            seed: None,
            command: command(cmd)?,
        },
    };
    if c.preset.is_some() {
        cfg.preset = c.preset;
    }
    if let Some(path) = &c.custom {
        cfg.custom = Some(parse_json::<CustomDatum>("custom datum", &read_file(path)?)?);
    }
    if let Some(l) = &c.levi {
        cfg.levi = Some(levi(l)?);
    }
    if format.is_some() {
        cfg.format = format;
    }
    if c.seed.is_some() {
        cfg.seed = c.seed;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let print_config = cli.common.print_config;
    let outcome = job(cli).and_then(|cfg| {
        if print_config {
            let text = serde_json::to_string_pretty(&cfg).expect("config serializes");
            return Ok((format!("{text}\n"), true));
        }
        let report = run(&cfg)?;
        Ok((render(&report, cfg.format())?, report.ok))
    });
    match outcome {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string_pretty(&error_document(&e)).expect("error serializes"));
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
