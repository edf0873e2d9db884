use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permorb_cli::{run, run_characters, run_probe, Config, Format, ProbeRequest, RunReport, Suite, VoaSpec};

/// Exact checks for S₂ tensor-square orbifolds of vertex operator algebras.
#[derive(Parser, Debug)]
#[command(name = "permorb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// TOML config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Directory for the product cache.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (0 = automatic).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Stabilization window.
    #[arg(long, global = true)]
    window: Option<u32>,
    /// Weight cutoff: the probe cutoff for `probe`, the character cutoff for
    /// `characters`, both for `verify`.
    #[arg(long, global = true)]
    cutoff: Option<u32>,
    /// Heisenberg rank.
    #[arg(long, global = true)]
    rank: Option<u32>,
    /// Lattice parameter; repeatable.
    #[arg(long, global = true)]
    k: Vec<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites (all when none are named).
    Verify {
        #[arg(value_enum)]
        suites: Vec<Suite>,
        #[arg(long = "suite", value_enum)]
        suite_flags: Vec<Suite>,
    },
    /// Stabilization probe for `D(x, y)` in the orbifold.
    Probe {
        #[arg(long, value_enum, default_value = "heisenberg")]
        voa: VoaKind,
        /// Central charge for the Virasoro algebra, e.g. `1/2`.
        #[arg(long)]
        central_charge: Option<String>,
        /// `vacuum`, `gen`, `genK`, `omega`, or a monomial like `0(-2) 0(-1)`.
        #[arg(long, default_value = "omega")]
        x: String,
        #[arg(long, default_value = "omega")]
        y: String,
    },
    /// Graded-dimension check of the lattice square decomposition.
    Characters,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VoaKind {
    Heisenberg,
    Virasoro,
}

enum Cutoff {
    Probe,
    Characters,
    Both,
}

fn config(common: &Common, which: Cutoff) -> anyhow::Result<Config> {
    let mut c = match &common.config {
        Some(p) => Config::from_toml(p)?,
        None => Config::default(),
    };
    if let Some(f) = common.format {
        c.format = f;
    }
    if let Some(d) = &common.cache_dir {
        c.cache_dir = Some(d.clone());
    }
    if let Some(j) = common.jobs {
        c.jobs = j;
    }
    if let Some(w) = common.window {
        c.window = w;
    }
    if let Some(r) = common.rank {
        c.rank = r;
    }
    if !common.k.is_empty() {
        c.k = common.k.clone();
    }
    if let Some(n) = common.cutoff {
        match which {
            Cutoff::Probe => c.probe_cutoff = n,
            Cutoff::Characters => c.char_cutoff = n,
            Cutoff::Both => {
                c.probe_cutoff = n;
                c.char_cutoff = n;
            }
        }
    }
    c.validate()?;
    Ok(c)
}

fn emit(report: &RunReport) -> ExitCode {
    print!("{}", report.render(report.config.format));
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { suites, suite_flags } => config(&cli.common, Cutoff::Both).map(|mut c| {
            let named: Vec<Suite> = suites.into_iter().chain(suite_flags).collect();
            if !named.is_empty() {
                c.suites = named;
            }
            run(&c)
        }),
        Command::Probe { voa, central_charge, x, y } => config(&cli.common, Cutoff::Probe).and_then(|c| {
            let voa = match voa {
                VoaKind::Heisenberg => VoaSpec::Heisenberg { rank: c.rank },
                VoaKind::Virasoro => VoaSpec::Virasoro {
                    central_charge: central_charge
                        .ok_or_else(|| anyhow::anyhow!("--central-charge is required for the Virasoro probe"))?,
                },
            };
            Ok(run_probe(&ProbeRequest { voa, x, y }, &c)?)
        }),
        Command::Characters => config(&cli.common, Cutoff::Characters).map(|c| run_characters(&c)),
    };
    match result {
        Ok(report) => emit(&report),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
