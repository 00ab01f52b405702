//! Command-line definition and dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use entmoments_core::moments::Normalization;

use crate::commands::distributions::{self, CircleKind, CircleRequest, SphereKind, SphereRequest};
use crate::commands::figures::{self, Sweep};
use crate::commands::rabi::{self, ModelArgs, MomentsRequest, SolverArgs, SpectrumRequest};
use crate::commands::selftest;
use crate::error::{as_schema, CliError, CliResult};
use crate::output::{emit, render_table, Format, Report};

/// Entanglement moments of pure bipartite states and Rabi-model eigenstates.
///
/// CSV output always starts with a header row; floats carry 17 significant
/// digits. Column sets:
///   moments, cpn, sphere        n,C2
///   circle (file)               n,C2[,C2_bruteforce]
///   circle --builtin, fig2      distribution,s,n,C2[,C2_bruteforce]
///   fig3                        distribution,n,C2
///   rabi-spectrum               parity,index,xi,energy,residual[,oracle_energy,abs_diff][,closed_form]
///   rabi-moments, fig4, fig5    g,level,parity,energy,n,C2[,oracle_C2]
///   --dist-out                  g,theta,density
#[derive(Debug, Parser)]
#[command(name = "entmoments", version, verbatim_doc_comment)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
    /// Output file (stdout if omitted or "-").
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// File for the θ-distribution dump of Rabi commands.
    #[arg(long, global = true)]
    pub dist_out: Option<PathBuf>,
    /// Worker threads for sweeps (results do not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Moments of a weighted state set straight from the definition.
    Moments {
        /// State-set JSON ("-" for stdin).
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Normalization convention: cpn or circle.
        #[arg(long, default_value = "cpn")]
        normalization: String,
    },
    /// Moments of a distribution on the great circle.
    Circle {
        /// Circle JSON with "atoms" or "fourier".
        input: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "input")]
        builtin: Option<CircleKind>,
        /// Spreading parameter of the built-ins (repeatable).
        #[arg(long, default_values_t = [1.0])]
        s: Vec<f64>,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Fourier modes kept for the heat kernel.
        #[arg(long, default_value_t = 64)]
        k_max: usize,
        /// Add the double-integral reference column.
        #[arg(long)]
        oracle: bool,
    },
    /// Moments of a distribution on the Bloch sphere.
    Sphere {
        /// Sphere JSON with unit-vector atoms.
        input: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with = "input")]
        builtin: Option<SphereKind>,
        /// North-pole weight of the two-pole distribution.
        #[arg(long, default_value_t = 0.5)]
        pole_weight: f64,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Emit harmonic occupancies instead of moments.
        #[arg(long)]
        occupancy: bool,
    },
    /// Moments of a weighted state set through ℂP^{N−1} harmonics.
    Cpn {
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Highest harmonic degree [default: n-max].
        #[arg(long)]
        k_max: Option<usize>,
        /// Emit harmonic occupancies instead of moments.
        #[arg(long)]
        occupancy: bool,
    },
    /// Rabi-model eigenvalues from the zeros of the G-function.
    RabiSpectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Lowest levels per parity (ignored with --xi-min/--xi-max).
        #[arg(long, default_value_t = 8)]
        levels: usize,
        #[arg(long, requires = "xi_max", allow_hyphen_values = true)]
        xi_min: Option<f64>,
        #[arg(long, requires = "xi_min", allow_hyphen_values = true)]
        xi_max: Option<f64>,
        /// Compare with truncated Fock-space diagonalization.
        #[arg(long)]
        oracle: bool,
    },
    /// Moment curve of one Rabi eigenstate measured in the position basis.
    RabiMoments {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        solver: SolverArgs,
        /// Level index (0 = ground state), over both parities unless --parity is given.
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Restrict the level index to one parity (+ or -).
        #[arg(long, allow_hyphen_values = true)]
        parity: Option<String>,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Histogram bins for the θ distribution.
        #[arg(long, default_value_t = 180)]
        bins: usize,
        /// Add moments computed from diagonalization eigenvectors.
        #[arg(long)]
        oracle: bool,
    },
    /// Circle distributions ρ₁ and ρ₂ over s.
    Fig2 {
        #[arg(long, default_value_t = 5.0)]
        s_max: f64,
        #[arg(long, default_value_t = 51)]
        points: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, default_value_t = 64)]
        k_max: usize,
    },
    /// Uniform, equator and two-pole distributions on the Bloch sphere.
    Fig3 {
        #[arg(long, default_value_t = 32)]
        n_max: usize,
        #[arg(long, default_value_t = 0.5)]
        pole_weight: f64,
    },
    /// Rabi ground state over the coupling.
    Fig4 {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Sixth excited Rabi state over the coupling.
    Fig5 {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Quick consistency checks; exits with code 3 if any fails.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Sweep options; unset values take the figure's defaults.
#[derive(Debug, Clone, Copy, clap::Args)]
pub struct SweepArgs {
    /// Level index over both parities [fig4: 0, fig5: 6].
    #[arg(long)]
    pub level: Option<usize>,
    /// Qubit splitting Δ.
    #[arg(long, default_value_t = 0.3)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Largest coupling [fig4: 2, fig5: 1.5].
    #[arg(long)]
    pub g_max: Option<f64>,
    /// Number of couplings [fig4: 81, fig5: 61].
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 180)]
    pub bins: usize,
}

impl SweepArgs {
    fn resolve(&self, level: usize, g_max: f64, points: usize) -> Sweep {
        Sweep {
            level: self.level.unwrap_or(level),
            delta: self.delta,
            omega: self.omega,
            g_max: self.g_max.unwrap_or(g_max),
            points: self.points.unwrap_or(points),
            n_max: self.n_max,
            bins: self.bins,
        }
    }
}

/// Runs the selected command and returns its report.
pub fn execute(command: &Command) -> CliResult<Report> {
    match command {
        Command::Moments { input, n_max, normalization } => {
            let space: Normalization = normalization.parse().map_err(as_schema)?;
            distributions::moments(input, *n_max, space)
        }
        Command::Circle { input, builtin, s, n_max, k_max, oracle } => distributions::circle(&CircleRequest {
            input: input.as_deref(),
            builtin: *builtin,
            s,
            n_max: *n_max,
            k_max: *k_max,
            oracle: *oracle,
        }),
        Command::Sphere { input, builtin, pole_weight, n_max, occupancy } => distributions::sphere(&SphereRequest {
            input: input.as_deref(),
            builtin: *builtin,
            pole_weight: *pole_weight,
            n_max: *n_max,
            occupancy: *occupancy,
        }),
        Command::Cpn { input, n_max, k_max, occupancy } => distributions::cpn(input, *n_max, *k_max, *occupancy),
        Command::RabiSpectrum { model, solver, levels, xi_min, xi_max, oracle } => rabi::spectrum(&SpectrumRequest {
            model: *model,
            solver: *solver,
            levels: *levels,
            xi_range: xi_min.zip(*xi_max),
            oracle: *oracle,
        }),
        Command::RabiMoments { model, solver, level, parity, n_max, bins, oracle } => {
            let parity = parity.as_deref().map(rabi::parse_parity).transpose()?;
            rabi::moments(&MomentsRequest {
                model: *model,
                solver: *solver,
                level: *level,
                parity,
                n_max: *n_max,
                bins: *bins,
                oracle: *oracle,
            })
        }
        Command::Fig2 { s_max, points, n_max, k_max } => figures::fig2(*s_max, *points, *n_max, *k_max),
        Command::Fig3 { n_max, pole_weight } => figures::fig3(*n_max, *pole_weight),
        Command::Fig4 { sweep, solver } => figures::rabi_sweep(&sweep.resolve(0, 2.0, 81), &solver.config()?),
        Command::Fig5 { sweep, solver } => figures::rabi_sweep(&sweep.resolve(6, 1.5, 61), &solver.config()?),
        Command::Selftest { seed } => selftest::selftest(*seed),
    }
}

/// Parses nothing; runs `cli` and writes its outputs. Returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    match run_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_inner(cli: &Cli) -> CliResult<i32> {
    let report = match cli.threads {
        Some(0) => return Err(CliError::schema("cli::threads", "--threads must be positive")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::schema("cli::threads", e.to_string()))?
            .install(|| execute(&cli.command))?,
        None => execute(&cli.command)?,
    };
    emit(&report.render(cli.format)?, cli.out.as_deref())?;
    if let (Some(path), Some(side)) = (&cli.dist_out, &report.side) {
        emit(&render_table(side, cli.format)?, Some(path))?;
    }
    for line in &report.notes {
        eprintln!("{line}");
    }
    if matches!(cli.command, Command::Selftest { .. }) && !selftest::all_passed(&report) {
        return Ok(3);
    }
    Ok(0)
}
