use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tjc_cli::commands;
use tjc_cli::config::{OptionBag, SweepConfig};
use tjc_cli::verify::{print_report, run_verify, VerifyOptions};
use tjc_cli::CliError;

/// Entanglement dynamics of two two-level atoms in single-mode thermal
/// light: dataset sweeps, time averages, postselection probabilities and
/// numerical self-verification.
#[derive(Parser)]
#[command(name = "tjc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by the dataset commands. Angles accept a trailing `pi`
/// (e.g. `0.75pi`); grids are `start:stop:steps` with steps counting
/// points. Values from `--config` (a flat key=value file) are overridden
/// by flags given on the command line.
#[derive(Args, Clone)]
struct CommonArgs {
    /// Input family: phi (sin b |01> + cos b |10>) or psi (sin b |00> + cos b |11>)
    #[arg(long)]
    family: Option<String>,
    /// Single mixing angle in radians
    #[arg(long)]
    beta: Option<String>,
    /// Mixing-angle grid start:stop:steps
    #[arg(long)]
    beta_grid: Option<String>,
    /// Single dimensionless time gt
    #[arg(long)]
    gt: Option<String>,
    /// Time grid start:stop:steps in gt
    #[arg(long)]
    gt_grid: Option<String>,
    /// Mean photon number of the thermal field (exclusive with --kappa)
    #[arg(long)]
    nbar: Option<String>,
    /// hbar*Omega / 2kT (exclusive with --nbar)
    #[arg(long)]
    kappa: Option<String>,
    /// Photon-number truncation tolerance
    #[arg(long)]
    epsilon_tail: Option<String>,
    /// Free-evolution phase rate Omega/g carried by the psi coherence
    #[arg(long)]
    omega_over_g: Option<String>,
    /// Output format: csv or json
    #[arg(long)]
    format: Option<String>,
    /// Output path; "-" or omitted writes to stdout
    #[arg(long, short)]
    output: Option<String>,
    /// Flat key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Worker threads for grid evaluation (output is order-stable)
    #[arg(long)]
    threads: Option<String>,
    /// Averaging window in gt (average command; enables numeric averaging)
    #[arg(long)]
    window: Option<String>,
    /// Sample count for numeric averaging
    #[arg(long)]
    samples: Option<String>,
}

impl CommonArgs {
    fn resolve(&self, require_field: bool) -> Result<SweepConfig, CliError> {
        let mut bag = OptionBag::from_file(self.config.as_deref())?;
        bag.set_cli("family", self.family.clone());
        bag.set_cli("beta", self.beta.clone());
        bag.set_cli("beta_grid", self.beta_grid.clone());
        bag.set_cli("gt", self.gt.clone());
        bag.set_cli("gt_grid", self.gt_grid.clone());
        bag.set_cli("nbar", self.nbar.clone());
        bag.set_cli("kappa", self.kappa.clone());
        bag.set_cli("epsilon_tail", self.epsilon_tail.clone());
        bag.set_cli("omega_over_g", self.omega_over_g.clone());
        bag.set_cli("format", self.format.clone());
        bag.set_cli("output", self.output.clone());
        bag.set_cli("threads", self.threads.clone());
        bag.set_cli("window", self.window.clone());
        bag.set_cli("samples", self.samples.clone());
        SweepConfig::resolve(&bag, require_field)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entanglement measures and matrix elements over a beta x gt grid
    Surface(CommonArgs),
    /// Time series at a single mixing angle
    Evolve(CommonArgs),
    /// EOF of time-averaged mixtures vs the input EOF
    Average(CommonArgs),
    /// Postselection probability p1 over a beta x gt grid (psi family)
    Postselect(CommonArgs),
    /// h2 through series, Abel-Plana integral and hot asymptote
    Asymptotics(CommonArgs),
    /// Run the numerical cross-check battery; exits 2 on any failure
    Verify {
        /// Photon-number truncation tolerance
        #[arg(long)]
        epsilon_tail: Option<f64>,
        /// Evaluate m± with arctan to demonstrate the t=0 regression guard
        #[arg(long)]
        debug_m_arctan: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Surface(args) => commands::cmd_surface(&args.resolve(true)?),
        Command::Evolve(args) => commands::cmd_evolve(&args.resolve(true)?),
        Command::Average(args) => commands::cmd_average(&args.resolve(false)?),
        Command::Postselect(args) => commands::cmd_postselect(&args.resolve(true)?),
        Command::Asymptotics(args) => commands::cmd_asymptotics(&args.resolve(true)?),
        Command::Verify {
            epsilon_tail,
            debug_m_arctan,
        } => {
            let opts = VerifyOptions {
                epsilon_tail: epsilon_tail.unwrap_or(tjc_core::DEFAULT_EPSILON_TAIL),
                debug_m_arctan,
            };
            let report = run_verify(&opts)?;
            let mut stdout = std::io::stdout().lock();
            print_report(&report, &mut stdout)?;
            if report.all_pass() {
                Ok(())
            } else {
                let failing: Vec<&str> = report
                    .checks
                    .iter()
                    .filter(|c| !c.pass)
                    .map(|c| c.name)
                    .collect();
                Err(CliError::Numerical(format!(
                    "verification failed: {}",
                    failing.join(", ")
                )))
            }
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(1);
                }
            }
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}
