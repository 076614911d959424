use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod error;
mod exec;
mod report;

use config::{Mode, RunConfig};
use error::CliError;

/// Density of pseudo-Anosov elements in balls of a surface mapping class group.
///
/// The worker count is read from MCGDENSITY_WORKERS.
#[derive(Parser)]
#[command(name = "mcgdensity", version)]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

/// Settings shared by all subcommands; flags override the config file.
#[derive(Args, Default)]
struct Overrides {
    /// TOML (or .json) run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    genus: Option<usize>,
    /// `humphries` or a surface fixture file.
    #[arg(long, global = true)]
    alphabet: Option<String>,
    #[arg(long, global = true)]
    radius: Option<usize>,
    #[arg(long, global = true)]
    ball_cap: Option<usize>,
    #[arg(long, global = true)]
    k_a: Option<u64>,
    #[arg(long, global = true)]
    k_b: Option<u64>,
    #[arg(long, global = true)]
    pair_search: Option<usize>,
    #[arg(long, global = true)]
    iter_cap: Option<usize>,
    #[arg(long, global = true)]
    epsilon: Option<f64>,
    #[arg(long, global = true)]
    window: Option<usize>,
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    fathi_depth: Option<usize>,
    /// Report JSON path (stdout when absent).
    #[arg(long, global = true)]
    report: Option<String>,
    #[arg(long, global = true)]
    csv: Option<String>,
    #[arg(long, global = true)]
    certificates_dir: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangulated surface.
    Surface,
    /// Print the twist curve table in normal coordinates.
    Curves,
    /// Classify a word such as "T1^3 T2^-1".
    Classify {
        word: String,
        /// Write a certificate file when the verdict is certified.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Enumerate the ball of the configured radius.
    Ball,
    /// List the exceptional elements of the ball.
    Exceptionals,
    /// Build the multiplier set.
    Multipliers,
    /// Whole-group density run.
    Density,
    /// Density run over a subgroup.
    SubgroupDensity {
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Comma-separated generator words, e.g. "T6,T7".
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Re-check a certificate file.
    VerifyCertificate { path: PathBuf },
    /// Turn a report into plot series.
    EmitPlotData {
        #[arg(value_name = "REPORT")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Overrides {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $($field:ident).+),* $(,)?) => {
                $(if let Some(v) = &self.$flag { c.$($field).+ = v.clone().into(); })*
            };
        }
        set!(
            seed => seed, genus => genus, alphabet => alphabet, radius => radius, ball_cap => ball_cap,
            k_a => k_a, k_b => k_b, pair_search => pair_search, iter_cap => classifier.iter_cap,
            epsilon => classifier.epsilon, window => classifier.window, tolerance => classifier.tolerance,
            fathi_depth => classifier.fathi_depth, report => outputs.report, csv => outputs.csv,
            certificates_dir => outputs.certificates_dir,
        );
        Ok(c)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut config = cli.overrides.resolve()?;
    if let Command::SubgroupDensity { mode, generators, a, b } = &cli.command {
        let s = &mut config.subgroup;
        s.mode = mode.unwrap_or(s.mode);
        if let Some(g) = generators {
            s.generators = g.iter().map(|w| w.trim().to_string()).collect();
        }
        s.a = a.clone().unwrap_or(s.a.clone());
        s.b = b.clone().unwrap_or(s.b.clone());
    }
    config.validate()?;
    match cli.command {
        Command::Surface => commands::surface(&config),
        Command::Curves => commands::curves(&config),
        Command::Classify { word, certificate } => commands::classify(&config, &word, certificate.as_deref()),
        Command::Ball => commands::ball(&config),
        Command::Exceptionals => commands::exceptionals(&config),
        Command::Multipliers => commands::multipliers(&config),
        Command::Density => commands::density(&config),
        Command::SubgroupDensity { .. } => commands::subgroup_density(&config),
        Command::VerifyCertificate { path } => commands::verify_certificate(&path),
        Command::EmitPlotData { input, out } => commands::emit_plot_data(&input, out.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mcgdensity: {e}");
            e.exit_code()
        }
    }
}
