//! Argument definitions and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use moshinsky2d::oracle::{verify_all, VerifyConfig, VerifyLevel};
use moshinsky2d::{
    asymptotic_eta, asymptotic_k_eta, build_occupancy_table_with_limit, collective_occupancy,
    derive_params, participation_collective, participation_fragment, participation_total,
    OccupancyTable, SystemParams, DEFAULT_TABLE_LIMIT,
};

use crate::config::inject_config;
use crate::error::{CliError, CliResult, EXIT_OK};
use crate::figure::{figure_table, FigureOverrides, Panel};
use crate::grid::ValueSpec;
use crate::output::{Format, Table};
use crate::sweep::{run_sweep, sweep_table, Observable, SweepSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "moshinsky2d", version, about = "Natural orbitals and occupancies of the 2D Moshinsky model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Point {
    /// Number of bosons (≥ 2).
    #[arg(long)]
    pub n: u64,
    /// Interaction strength, > -1/(2N).
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format; defaults to csv, or table for verify.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Omit `# ` metadata lines (and the JSON meta object contents).
    #[arg(long)]
    pub no_meta: bool,
    /// Worker threads; 0 uses every available core.
    #[arg(long, env = "MOSHINSKY2D_JOBS")]
    pub jobs: Option<usize>,
    /// File of `key = value` lines supplying defaults for any flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form parameter set.
    Params {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Natural-orbital occupancies, largest first, with the analytic tail.
    Occupancies {
        #[command(flatten)]
        point: Point,
        /// Smallest table whose tail mass is at most this (default 1e-10).
        #[arg(long)]
        tail_eps: Option<f64>,
        /// Explicit radial cutoff; requires --l-max.
        #[arg(long)]
        n_max: Option<u64>,
        /// Explicit angular cutoff; requires --n-max.
        #[arg(long)]
        l_max: Option<u64>,
        /// Hard limit on the number of table entries.
        #[arg(long, default_value_t = DEFAULT_TABLE_LIMIT)]
        max_entries: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Collective occupancies per angular momentum.
    Collective {
        #[command(flatten)]
        point: Point,
        #[arg(long, default_value_t = 5)]
        l_max: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Participation measures.
    Participation {
        #[command(flatten)]
        point: Point,
        #[command(flatten)]
        common: Common,
    },
    /// Data behind one figure panel.
    Figure {
        #[arg(value_enum)]
        panel: Panel,
        /// Particle number for single-N panels.
        #[arg(long)]
        n: Option<u64>,
        /// Particle numbers for multi-N panels.
        #[arg(long)]
        n_values: Option<ValueSpec>,
        #[arg(long)]
        n_min: Option<u64>,
        #[arg(long)]
        n_max: Option<u64>,
        /// Interaction strength for single-lambda panels.
        #[arg(long, allow_negative_numbers = true)]
        lambda: Option<f64>,
        /// Interaction strengths for multi-lambda panels.
        #[arg(long, allow_hyphen_values = true)]
        lambda_values: Option<ValueSpec>,
        /// Lower end of the lambda axis; a value ≤ 0 selects linear spacing.
        #[arg(long, allow_negative_numbers = true)]
        lambda_min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        lambda_max: Option<f64>,
        /// Points on the swept axis.
        #[arg(long)]
        points: Option<usize>,
        /// Highest angular momentum reported.
        #[arg(long)]
        l_max: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Every observable over an (N, lambda) product grid.
    Sweep {
        /// List `a,b,c` or range `log:lo:hi:k` / `lin:lo:hi:k`.
        #[arg(long = "n-values", visible_alias = "n")]
        n_values: ValueSpec,
        #[arg(long = "lambda-values", visible_alias = "lambda", allow_hyphen_values = true)]
        lambda_values: ValueSpec,
        /// Highest angular momentum in the eta columns.
        #[arg(long = "l-max", default_value_t = 5)]
        l_max: u64,
        /// Comma-separated subset of eta,k_eta,k_total,kappa,lambda_nl,condensate.
        #[arg(long, default_value = "eta,k_eta,k_total,kappa,lambda_nl,condensate")]
        observables: String,
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check every closed form against the quadrature oracle.
    Verify {
        #[command(flatten)]
        point: Point,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        /// Gauss–Legendre nodes of the Nyström grid.
        #[arg(long, default_value_t = 200)]
        nodes: usize,
        #[arg(long, hide = true, default_value_t = 1.0)]
        inject_t_scale: f64,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Params { common, .. }
            | Command::Occupancies { common, .. }
            | Command::Collective { common, .. }
            | Command::Participation { common, .. }
            | Command::Figure { common, .. }
            | Command::Sweep { common, .. }
            | Command::Verify { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Params { .. } => "params",
            Command::Occupancies { .. } => "occupancies",
            Command::Collective { .. } => "collective",
            Command::Participation { .. } => "participation",
            Command::Figure { .. } => "figure",
            Command::Sweep { .. } => "sweep",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match inject_config(&Cli::command(), args) {
        Ok(a) => a,
        Err(e) => return report(&e),
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}

fn execute(cmd: &Command) -> CliResult<()> {
    let common = cmd.common();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = common.jobs.filter(|&j| j > 0) {
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    let default_format = if matches!(cmd, Command::Verify { .. }) { Format::Table } else { Format::Csv };
    let format = common.format.unwrap_or(default_format);

    let (mut table, verdict) = pool.install(|| build(cmd))?;
    table.meta.insert(0, ("command".into(), cmd.name().into()));
    table.meta.insert(0, ("generator".into(), format!("moshinsky2d {VERSION}")));
    emit(&table.render(format, !common.no_meta), common.out.as_ref())?;
    verdict
}

/// The rendered table and the command outcome; a failed verification still
/// produces its report.
fn build(cmd: &Command) -> CliResult<(Table, CliResult<()>)> {
    let table = match cmd {
        Command::Params { point, .. } => params_table(system(point)?)?,
        Command::Occupancies { point, tail_eps, n_max, l_max, max_entries, .. } => {
            occupancies_table(system(point)?, *tail_eps, *n_max, *l_max, *max_entries)?
        }
        Command::Collective { point, l_max, .. } => collective_table(system(point)?, *l_max)?,
        Command::Participation { point, .. } => participation_table(system(point)?)?,
        Command::Figure {
            panel,
            n,
            n_values,
            n_min,
            n_max,
            lambda,
            lambda_values,
            lambda_min,
            lambda_max,
            points,
            l_max,
            ..
        } => {
            let o = FigureOverrides {
                n: *n,
                n_values: n_values.as_ref().map(ValueSpec::integers).transpose()?,
                n_min: *n_min,
                n_max: *n_max,
                lambda: *lambda,
                lambda_values: lambda_values.as_ref().map(ValueSpec::reals).transpose()?,
                lambda_min: *lambda_min,
                lambda_max: *lambda_max,
                points: *points,
                l_max: *l_max,
            };
            let t = figure_table(*panel, &o)?;
            if o.lambda.is_some_and(|l| l < 0.0)
                || o.lambda_min.is_some_and(|l| l < 0.0)
                || o.lambda_values.as_ref().is_some_and(|v| v.iter().any(|&l| l < 0.0))
            {
                warn_extrapolated();
            }
            t
        }
        Command::Sweep { n_values, lambda_values, l_max, observables, .. } => {
            let spec = SweepSpec {
                n_values: n_values.integers()?,
                lambda_values: lambda_values.reals()?,
                l_max_report: *l_max,
                observables: Observable::parse_set(observables)?,
            };
            let rows = run_sweep(&spec)?;
            if spec.lambda_values.iter().any(|&l| l < 0.0) {
                warn_extrapolated();
            }
            let mut t = sweep_table(&spec, &rows);
            t.meta("n_values", n_values.0.as_str());
            t.meta("lambda_values", lambda_values.0.as_str());
            t.meta("l_max", l_max);
            let names: Vec<_> = spec.observables.iter().map(|o| o.name()).collect();
            t.meta("observables", names.join(","));
            t
        }
        Command::Verify { point, level, nodes, inject_t_scale, .. } => {
            let p = system(point)?;
            let config = VerifyConfig {
                level: match level {
                    Level::Quick => VerifyLevel::Quick,
                    Level::Full => VerifyLevel::Full,
                },
                nodes: *nodes,
                t_scale: *inject_t_scale,
                ..VerifyConfig::default()
            };
            let report = verify_all(p, &config)?;
            let mut t = Table::new(["check", "deviation", "threshold", "passed"]);
            point_meta(&mut t, p);
            t.meta("level", format!("{level:?}").to_lowercase());
            t.meta("nodes", nodes);
            if *inject_t_scale != 1.0 {
                t.meta("t_scale", inject_t_scale);
            }
            for c in &report.checks {
                t.push(vec![c.name.as_str().into(), c.deviation.into(), c.threshold.into(), c.passed.into()]);
            }
            let passed = report.all_passed();
            t.trailer = Some(("all_passed".into(), passed.into()));
            let verdict = if passed {
                Ok(())
            } else {
                let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                Err(CliError::VerificationFailed(failed.join(", ")))
            };
            return Ok((t, verdict));
        }
    };
    Ok((table, Ok(())))
}

fn system(point: &Point) -> CliResult<SystemParams> {
    let p = SystemParams::new(point.n, point.lambda)?;
    if p.is_extrapolated() {
        warn_extrapolated();
    }
    Ok(p)
}

fn warn_extrapolated() {
    eprintln!("warning: lambda < 0 lies outside the charted repulsive range (extrapolated)");
}

fn point_meta(t: &mut Table, p: SystemParams) {
    t.meta("N", p.n_particles);
    t.meta("lambda", p.lambda);
    if p.is_extrapolated() {
        t.meta("extrapolated", true);
    }
}

fn params_table(p: SystemParams) -> CliResult<Table> {
    let d = derive_params(p)?;
    let mut t = Table::new(["N", "lambda", "omega", "gamma", "A", "B", "C", "t", "z2", "s", "extrapolated"]);
    point_meta(&mut t, p);
    t.push(vec![
        p.n_particles.into(),
        p.lambda.into(),
        d.omega.into(),
        d.gamma.into(),
        d.a_norm.into(),
        d.b_coef.into(),
        d.c_coef.into(),
        d.t.into(),
        d.z2.into(),
        d.s.into(),
        p.is_extrapolated().into(),
    ]);
    Ok(t)
}

fn occupancies_table(
    p: SystemParams,
    tail_eps: Option<f64>,
    n_max: Option<u64>,
    l_max: Option<u64>,
    limit: usize,
) -> CliResult<Table> {
    let d = derive_params(p)?;
    let table = match (tail_eps, n_max, l_max) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => {
            return Err(CliError::usage("--tail-eps conflicts with --n-max/--l-max; give one truncation mode"))
        }
        (None, Some(n), Some(l)) => OccupancyTable::with_cutoffs(&d, n, l, limit)?,
        (None, Some(_), None) | (None, None, Some(_)) => {
            return Err(CliError::usage("--n-max and --l-max must be given together"))
        }
        (eps, None, None) => {
            let eps = eps.unwrap_or(1e-10);
            if !(eps > 0.0 && eps < 1.0) {
                return Err(CliError::usage(format!("--tail-eps must lie in (0, 1) (got {eps})")));
            }
            build_occupancy_table_with_limit(&d, eps, limit)?
        }
    };
    let mut t = Table::new(["n", "l", "lambda"]);
    point_meta(&mut t, p);
    match tail_eps {
        Some(eps) => t.meta("tail_eps", eps),
        None if n_max.is_none() => t.meta("tail_eps", 1e-10),
        None => {}
    }
    t.meta("n_max", table.n_max);
    t.meta("l_max", table.l_max);
    for e in table.sorted_by_occupancy() {
        t.push(vec![e.n.into(), e.l.into(), e.occupancy.into()]);
    }
    t.trailer = Some(("tail_mass".into(), table.tail_mass.into()));
    Ok(t)
}

fn collective_table(p: SystemParams, l_max: u64) -> CliResult<Table> {
    let d = derive_params(p)?;
    let mut t = Table::new(["l", "eta", "particles", "eta_asym"]);
    point_meta(&mut t, p);
    for l in 0..=l_max as i64 {
        let eta = collective_occupancy(&d, l);
        t.push(vec![
            l.into(),
            eta.into(),
            (p.n_particles as f64 * eta).into(),
            asymptotic_eta(p, l).unwrap_or(f64::NAN).into(),
        ]);
    }
    Ok(t)
}

fn participation_table(p: SystemParams) -> CliResult<Table> {
    let d = derive_params(p)?;
    let k = participation_total(&d);
    let k_eta = participation_collective(&d);
    let kappa = participation_fragment(&d);
    let mut t = Table::new(["N", "lambda", "t", "k_total", "k_eta", "kappa", "k_eta_asym", "identity_residual"]);
    point_meta(&mut t, p);
    t.push(vec![
        p.n_particles.into(),
        p.lambda.into(),
        d.t.into(),
        k.into(),
        k_eta.into(),
        kappa.into(),
        asymptotic_k_eta(p).unwrap_or(f64::NAN).into(),
        ((k - kappa * k_eta) / k).into(),
    ]);
    Ok(t)
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(CliError::Io { path: "<stdout>".into(), source: e })
                }
                _ => Ok(()),
            }
        }
    }
}
