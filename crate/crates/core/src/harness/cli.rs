//! `kpace` command line.
//!
//! Exit codes: 0 on success, 1 on configuration or usage errors, 2 when the
//! integrator diverges.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::config::{ExperimentKind, ExperimentSpec};
use super::csv::{bounds_table, trajectory_table, verdict_table, Table};
use super::protocol::ProtocolRegistry;
use crate::analysis::{check_locking_condition, check_sync_condition, check_trapping_condition, BoundRegistry};
use crate::dynamics::integrate;
use crate::error::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "kpace", version, about = "Kuramoto networks with a pacemaker")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON experiment config; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Overrides the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Suppress informational messages on stderr.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate one trajectory (run 0 of the config) and emit it as CSV.
    Simulate,
    /// Rate bounds for the config's first run.
    Bounds {
        /// Only these bounds (alpha1..alpha4); all when omitted.
        #[arg(long = "bound")]
        bounds: Vec<String>,
        /// Use this epsilon instead of max |xi(0)|.
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Time-to-sync or time-to-lock sweep over multipliers.
    Sweep,
    /// Final relative phase against pacemaker strength.
    Trap,
    /// Sufficient-condition verdicts only.
    Check {
        #[arg(long)]
        epsilon: Option<f64>,
    },
}

struct Context {
    spec: ExperimentSpec,
    out: Option<PathBuf>,
    quiet: bool,
}

impl Context {
    fn emit(&self, table: &Table, pretty: bool) -> Result<()> {
        match &self.out {
            Some(path) => {
                table.write_csv(path)?;
                if !self.quiet {
                    eprintln!("wrote {} rows to {}", table.rows.len(), path.display());
                }
            }
            None => {
                let text = if pretty { table.to_pretty() } else { table.to_csv() };
                std::io::stdout().write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }

    fn info(&self, msg: &str) {
        if !self.quiet {
            eprintln!("{msg}");
        }
    }
}

fn load(cli: &Cli) -> Result<ExperimentSpec> {
    let mut spec = match &cli.config {
        Some(path) => ExperimentSpec::from_path(path)?,
        None => ExperimentSpec::default(),
    };
    if let Some(seed) = cli.seed {
        spec.seed = seed;
    }
    Ok(spec)
}

fn epsilon_arg(spec: &mut ExperimentSpec, epsilon: Option<f64>) -> Result<()> {
    if let Some(e) = epsilon {
        spec.epsilon_override = Some(e);
        spec.validate()?;
    }
    Ok(())
}

fn simulate(ctx: &Context) -> Result<()> {
    let spec = &ctx.spec;
    let inputs = spec.run_inputs(0)?;
    let params = spec.params(spec.resolve_graph()?, inputs.w)?;
    let traj = integrate(&params, &inputs.xi0, &spec.integrator)?;
    if let Some(r) = traj.r_samples.last() {
        ctx.info(&format!("{} samples, final r = {r:.6}", traj.len()));
    }
    ctx.emit(&trajectory_table(&traj), false)
}

fn bounds(ctx: &Context, selected: &[String]) -> Result<()> {
    let spec = &ctx.spec;
    let inputs = spec.run_inputs(0)?;
    let epsilon = spec.epsilon_for(&inputs.xi0);
    let params = spec.params(spec.resolve_graph()?, inputs.w)?;
    let registry = BoundRegistry::builtin();
    let mut rows = registry.assess(&params, epsilon)?;
    if !selected.is_empty() {
        for name in selected {
            registry.get(name)?;
        }
        rows.retain(|(kind, _)| selected.iter().any(|s| s == kind.name()));
    }
    ctx.emit(&bounds_table(epsilon, &rows), true)
}

fn check(ctx: &Context) -> Result<()> {
    let spec = &ctx.spec;
    let inputs = spec.run_inputs(0)?;
    let epsilon = spec.epsilon_for(&inputs.xi0);
    let params = spec.params(spec.resolve_graph()?, inputs.w)?;
    let mut verdicts = vec![("synchronization", Some(check_sync_condition(&params, epsilon)?))];
    let locking = if epsilon < std::f64::consts::FRAC_PI_2 {
        Some(check_locking_condition(&params, epsilon)?)
    } else {
        None
    };
    verdicts.push(("phase_locking", locking));
    if let Some(delta) = spec.delta {
        verdicts.push(("phase_trapping", Some(check_trapping_condition(&params, epsilon, delta)?)));
    }
    ctx.emit(&verdict_table(epsilon, &verdicts), true)
}

fn sweep(ctx: &Context) -> Result<()> {
    if ctx.spec.kind == ExperimentKind::Trapping {
        return Err(Error::config("kind", "`sweep` needs sync_sweep or locking_sweep; use `trap`"));
    }
    let protocol = ProtocolRegistry::builtin();
    let protocol = protocol.get(ctx.spec.kind.name())?;
    ctx.info(&format!(
        "{}: {} multipliers x {} runs",
        protocol.name(),
        ctx.spec.multipliers.len(),
        ctx.spec.runs
    ));
    ctx.emit(&protocol.run(&ctx.spec)?, false)
}

fn trap(ctx: &Context) -> Result<()> {
    let table = ProtocolRegistry::builtin().get(ExperimentKind::Trapping.name())?.run(&ctx.spec)?;
    ctx.emit(&table, false)
}

fn run(cli: Cli) -> Result<()> {
    let mut spec = load(&cli)?;
    match &cli.command {
        Command::Bounds { epsilon, .. } | Command::Check { epsilon } => epsilon_arg(&mut spec, *epsilon)?,
        _ => {}
    }
    let ctx = Context {
        spec,
        out: cli.out.clone(),
        quiet: cli.quiet,
    };
    match &cli.command {
        Command::Simulate => simulate(&ctx),
        Command::Bounds { bounds: sel, .. } => bounds(&ctx, sel),
        Command::Sweep => sweep(&ctx),
        Command::Trap => trap(&ctx),
        Command::Check { .. } => check(&ctx),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}
