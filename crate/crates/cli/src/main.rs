//! Batch front end: scenario files in, deterministic report artifacts out.
//!
//! Exit status contract: 0 — every mathematical check passed; 1 — a
//! mathematical check failed (an identity or bound did not hold); 2 — input
//! error (bad flags, unreadable file, invalid scenario, or a precondition
//! violation such as a hypersurface containing the map's image).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};

use padic_nevanlinna::rat::{parse_rat, Rat};
use padic_nevanlinna::report::{
    run_defect, run_fmt_check, run_polygon, run_sharpness, run_smt_report, ReportBundle,
};
use padic_nevanlinna::scenario::{parse_scenario, Scenario};

#[derive(Parser)]
#[command(
    name = "padic-nevanlinna",
    version,
    about = "Exact non-archimedean Nevanlinna functions, defect bounds, and tight configurations over Q with the p-adic absolute value"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify m + N = d*T + O(1) as an exact identity on a scenario
    FmtCheck {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Evaluate the improved bound (n-1 + max_i M/deg D_i)*T and its margin
    SmtReport {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Compute exact defects m'/(d*T') for every hypersurface
    Defect {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Newton polygons, disk zero counts, and counting functions
    Polygon {
        scenario: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generate the tight configuration for (n, d, p) and verify equality
    Sharpness {
        /// Dimension of the target projective space
        #[arg(long)]
        n: usize,
        /// Common degree of the hypersurfaces
        #[arg(long)]
        d: u32,
        /// The prime
        #[arg(long)]
        p: u64,
        /// Sample grid, comma-separated exact fractions (default "0,1,2,3")
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CommonArgs {
    /// Directory for report.txt, plfunctions.json, plot.tsv
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Override the scenario's s-grid (comma-separated exact fractions)
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Override the scenario's multiplier M
    #[arg(long)]
    multiplier: Option<u32>,
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch() -> anyhow::Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::FmtCheck { scenario, common } => {
            run_scenario_command(&scenario, common, run_fmt_check)
        }
        Command::SmtReport { scenario, common } => {
            run_scenario_command(&scenario, common, run_smt_report)
        }
        Command::Defect { scenario, common } => run_scenario_command(&scenario, common, run_defect),
        Command::Polygon { scenario, common } => {
            run_scenario_command(&scenario, common, run_polygon)
        }
        Command::Sharpness {
            n,
            d,
            p,
            grid,
            out_dir,
        } => {
            let grid = match grid {
                Some(text) => parse_grid(&text)?,
                None => default_grid(),
            };
            let run = run_sharpness(n, d, p, grid)?;
            emit(
                &run.bundle,
                out_dir.as_deref(),
                Some(("scenario.toml", &run.scenario_toml)),
            )?;
            Ok(run.bundle.passed)
        }
    }
}

fn run_scenario_command(
    path: &Path,
    common: CommonArgs,
    runner: impl Fn(&Scenario) -> padic_nevanlinna::Result<ReportBundle>,
) -> anyhow::Result<bool> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read scenario file {}", path.display()))?;
    let mut scenario = parse_scenario(&text)?;
    if let Some(grid) = &common.grid {
        scenario.s_grid = parse_grid(grid)?;
    }
    if let Some(multiplier) = common.multiplier {
        if multiplier < 1 {
            bail!("multiplier must be a positive integer");
        }
        scenario.multiplier = multiplier;
    }
    let out_dir = common
        .out_dir
        .or_else(|| scenario.output_dir.clone().map(PathBuf::from));
    let bundle = runner(&scenario)?;
    emit(&bundle, out_dir.as_deref(), None)?;
    Ok(bundle.passed)
}

fn emit(
    bundle: &ReportBundle,
    out_dir: Option<&Path>,
    extra: Option<(&str, &str)>,
) -> anyhow::Result<()> {
    print!("{}", bundle.report);
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        fs::write(dir.join("report.txt"), &bundle.report)?;
        fs::write(dir.join("plfunctions.json"), &bundle.dump)?;
        fs::write(dir.join("plot.tsv"), &bundle.plot)?;
        if let Some((name, content)) = extra {
            fs::write(dir.join(name), content)?;
        }
    }
    Ok(())
}

fn parse_grid(text: &str) -> anyhow::Result<Vec<Rat>> {
    let mut grid = Vec::new();
    for part in text.split(',') {
        grid.push(parse_rat(part).with_context(|| format!("bad grid entry {part:?}"))?);
    }
    if grid.is_empty() {
        bail!("grid must contain at least one point");
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        bail!("grid must be strictly increasing");
    }
    Ok(grid)
}

fn default_grid() -> Vec<Rat> {
    (0..4).map(|k| Rat::from_integer(k.into())).collect()
}
