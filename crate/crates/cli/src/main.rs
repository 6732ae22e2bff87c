use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jetmoment_cli::{exit, run, tau_table, write_report, write_tau_table, Format, RunConfig, Suite, TableCochain, TolOverride};

#[derive(Parser)]
#[command(name = "jetmoment", version, about = "Verify invariant forms, moment maps and the obstruction cocycle on mapping spaces over the circle")]
struct Cli {
    #[command(flatten)]
    common: Common,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args)]
struct Common {
    /// Samples per period (even, at least 8 x modes)
    #[arg(long, global = true, default_value_t = jetmoment::DEFAULT_RESOLUTION)]
    resolution: usize,

    /// Fourier truncation M for the cohomology suite
    #[arg(long, global = true, default_value_t = 4)]
    modes: usize,

    /// Functional-derivative step on section spaces
    #[arg(long, global = true, default_value_t = jetmoment::DEFAULT_EPS)]
    eps: f64,

    /// Finite-difference step on jet charts
    #[arg(long, global = true, default_value_t = jetmoment::jetforms::DEFAULT_ETA)]
    eta: f64,

    /// Suite to run; repeat for several (default: all)
    #[arg(long = "suite", global = true, value_enum)]
    suites: Vec<SuiteArg>,

    /// Seed for random probes
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Output directory
    #[arg(long, global = true, env = "JETMOMENT_OUT", default_value = "jetmoment-out")]
    out: PathBuf,

    /// Report format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Tree)]
    format: FormatArg,

    /// Tolerance override, e.g. `--tol curves.f1=1e-5`
    #[arg(long = "tol", global = true, value_name = "ID=VALUE")]
    tolerances: Vec<TolOverride>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites (default)
    Run,
    /// Emit the cochain matrix, its (c_n, s_n) column and a plot
    TauTable {
        #[arg(long, value_enum, default_value_t = CochainArg::Tau)]
        cochain: CochainArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Spectral,
    Jetforms,
    Circlemaps,
    Curves,
    Cohomology,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Tree,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CochainArg {
    Tau,
    Coboundary,
}

impl Common {
    fn into_config(self) -> RunConfig {
        let suites = if self.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            self.suites
                .into_iter()
                .map(|s| match s {
                    SuiteArg::Spectral => Suite::Spectral,
                    SuiteArg::Jetforms => Suite::Jetforms,
                    SuiteArg::Circlemaps => Suite::Circlemaps,
                    SuiteArg::Curves => Suite::Curves,
                    SuiteArg::Cohomology => Suite::Cohomology,
                })
                .collect()
        };
        let format = match self.format {
            FormatArg::Tree => Format::Tree,
            FormatArg::Csv => Format::Csv,
        };
        RunConfig {
            resolution: self.resolution,
            modes: self.modes,
            eps: self.eps,
            eta: self.eta,
            suites,
            seed: self.seed,
            out: self.out,
            format,
            ..RunConfig::default()
        }
        .with_overrides(&self.tolerances)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = cli.common.into_config();
    if let Err(e) = config.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(exit::CONFIG_ERROR);
    }
    match cli.command.unwrap_or(Command::Run) {
        Command::Run => {
            let report = run(&config);
            for e in &report.entries {
                let mark = if e.pass { "ok  " } else { "FAIL" };
                println!("{mark} {:<32} {:>11.3e} <= {:.1e}  {}", e.id, e.residual, e.tolerance, e.anchor);
            }
            if let Some(c) = &report.cohomology {
                println!(
                    "coboundary residual at M = {}: {:.6} (lambda0 = {:.6}, verdict: {})",
                    c.modes,
                    c.coboundary_residual,
                    c.lambda0,
                    c.verdict.as_deref().unwrap_or("none below two modes")
                );
            }
            match write_report(&report, &config.out, config.format) {
                Ok(paths) => paths.iter().for_each(|p| println!("wrote {}", p.display())),
                Err(e) => {
                    eprintln!("error: cannot write report: {e}");
                    return ExitCode::from(exit::CONFIG_ERROR);
                }
            }
            ExitCode::from(if report.pass { exit::PASS } else { exit::SUITE_FAILURE })
        }
        Command::TauTable { cochain } => {
            let which = match cochain {
                CochainArg::Tau => TableCochain::Tau,
                CochainArg::Coboundary => TableCochain::Coboundary,
            };
            let table = match tau_table(&config, which) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(exit::CONFIG_ERROR);
                }
            };
            for row in &table.diagonal {
                println!("n = {}  {:.12}  expected {:.12}", row.n, row.value, row.expected);
            }
            match write_tau_table(&table, &config.out) {
                Ok(paths) => paths.iter().for_each(|p| println!("wrote {}", p.display())),
                Err(e) => {
                    eprintln!("error: cannot write table: {e}");
                    return ExitCode::from(exit::CONFIG_ERROR);
                }
            }
            ExitCode::from(exit::PASS)
        }
    }
}
