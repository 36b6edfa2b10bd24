//! Command-line front end for the two-probe successive-measurement
//! numerics. Scenario parameters come from an optional JSON config file
//! plus flag overrides (flags win); output is deterministic CSV or JSON.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical-accuracy failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twoprobe::cli::{
    self, AppendixCConfig, ContinuumSincConfig, ContinuumThetaConfig, OutputFormat, ProbeMode,
    ProbeSimConfig, RunOptions, ScenarioConfig, SchwingerDistConfig, SchwingerTableConfig,
    StateConfig, TableRow, WignerSweepConfig,
};

#[derive(Parser)]
#[command(name = "twoprobe", version, about = "Two-probe successive-measurement numerics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON scenario config; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Artifact format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Override scenario self-check tolerances.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Validate the config and print the violations as JSON, then exit 0.
    #[arg(long, global = true)]
    validate_only: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Periodic-model scenarios.
    Schwinger {
        #[command(subcommand)]
        sub: SchwingerCommand,
    },
    /// Conditional Wigner distribution sweeps.
    Wigner {
        #[command(subcommand)]
        sub: WignerCommand,
    },
    /// Two-probe pointer simulations.
    Probe {
        #[command(subcommand)]
        sub: ProbeCommand,
    },
    /// Continuous momentum-position scenarios.
    Continuum {
        #[command(subcommand)]
        sub: ContinuumCommand,
    },
    /// Series-vs-quadrature expansion checks.
    AppendixC {
        #[command(subcommand)]
        sub: AppendixCCommand,
    },
}

#[derive(Subcommand)]
enum SchwingerCommand {
    /// Robertson L/R table for the sine observables.
    Table {
        /// Rows as NxDP pairs, e.g. "6x2,9x2,22x10".
        #[arg(long)]
        rows: Option<String>,
    },
    /// Conditional position distribution after a momentum measurement.
    Dist {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        delta_p: Option<usize>,
        #[arg(long)]
        n0: Option<usize>,
    },
}

#[derive(Subcommand)]
enum WignerCommand {
    /// Width functionals versus the first measurement's resolution.
    Sweep {
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated resolutions, e.g. "0,2,4".
        #[arg(long)]
        delta_a: Option<String>,
        /// Count-threshold fraction for the discrete width.
        #[arg(long)]
        threshold: Option<f64>,
        /// Conditioning interval (defaults to the largest Born weight).
        #[arg(long)]
        n0: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ProbeCommand {
    /// Conditional second-pointer density.
    Sim {
        /// Scenario preset ("qubit-plus-x").
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        epsilon1: Option<f64>,
        #[arg(long)]
        sigma_q1: Option<f64>,
        #[arg(long)]
        epsilon2: Option<f64>,
        #[arg(long)]
        sigma_q2: Option<f64>,
        /// Conditional to evaluate: full | strong | weak.
        #[arg(long)]
        mode: Option<String>,
        /// First-pointer reading for --mode full.
        #[arg(long)]
        q1: Option<f64>,
        /// Interval index for --mode strong.
        #[arg(long)]
        n0: Option<usize>,
        #[arg(long)]
        delta_a: Option<usize>,
        #[arg(long)]
        grid_points: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ContinuumCommand {
    /// First-zero width of the sharp-window conditional density.
    Sinc {
        #[arg(long)]
        delta_p: Option<f64>,
        #[arg(long)]
        sigma_p: Option<f64>,
        #[arg(long)]
        p_center: Option<f64>,
    },
    /// Rotated-quadrature width sweep.
    Theta {
        /// Comma-separated mixing angles in radians.
        #[arg(long)]
        theta: Option<String>,
        /// Comma-separated window resolutions.
        #[arg(long)]
        delta_xprime: Option<String>,
        #[arg(long)]
        c: Option<f64>,
    },
}

#[derive(Subcommand)]
enum AppendixCCommand {
    /// Compare the series and quadrature routes.
    Check {
        /// Comma-separated window values.
        #[arg(long)]
        delta_p: Option<String>,
        /// Comma-separated reduced positions z.
        #[arg(long)]
        z: Option<String>,
    },
}

fn parse_f64_list(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| format!("bad number '{s}': {e}")))
        .collect()
}

fn parse_usize_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| format!("bad integer '{s}': {e}")))
        .collect()
}

fn parse_rows(text: &str) -> Result<Vec<TableRow>, String> {
    text.split(',')
        .map(|pair| {
            let (n, dp) = pair
                .trim()
                .split_once('x')
                .ok_or_else(|| format!("bad row '{pair}', expected NxDP"))?;
            Ok(TableRow {
                n: n.parse().map_err(|e| format!("bad dimension '{n}': {e}"))?,
                delta_p: dp.parse().map_err(|e| format!("bad resolution '{dp}': {e}"))?,
            })
        })
        .collect()
}

/// Load the config file (when given) and check that it describes the same
/// scenario as the subcommand.
fn load_config(path: &Option<PathBuf>, expected: &str) -> Result<Option<ScenarioConfig>, String> {
    let Some(path) = path else {
        return Ok(None);
    };
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let cfg: ScenarioConfig =
        serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", path.display()))?;
    if cfg.scenario_name() != expected {
        return Err(format!(
            "config {} describes scenario '{}', expected '{expected}'",
            path.display(),
            cfg.scenario_name()
        ));
    }
    Ok(Some(cfg))
}

fn build_scenario(cli: &Cli) -> Result<ScenarioConfig, String> {
    Ok(match &cli.command {
        Command::Schwinger { sub } => match sub {
            SchwingerCommand::Table { rows } => {
                let mut cfg = match load_config(&cli.common.config, "schwinger-table")? {
                    Some(ScenarioConfig::SchwingerTable(c)) => c,
                    _ => SchwingerTableConfig {
                        rows: Vec::new(),
                    },
                };
                if cfg.rows.is_empty() {
                    cfg = SchwingerTableConfig {
                        rows: default_rows_if_empty(&cfg),
                    };
                }
                if let Some(text) = rows {
                    cfg.rows = parse_rows(text)?;
                }
                ScenarioConfig::SchwingerTable(cfg)
            }
            SchwingerCommand::Dist { n, delta_p, n0 } => {
                let mut cfg = match load_config(&cli.common.config, "schwinger-dist")? {
                    Some(ScenarioConfig::SchwingerDist(c)) => c,
                    _ => SchwingerDistConfig {
                        n: 6,
                        delta_p: 2,
                        n0: 0,
                    },
                };
                if let Some(n) = n {
                    cfg.n = *n;
                }
                if let Some(dp) = delta_p {
                    cfg.delta_p = *dp;
                }
                if let Some(n0) = n0 {
                    cfg.n0 = *n0;
                }
                ScenarioConfig::SchwingerDist(cfg)
            }
        },
        Command::Wigner { sub } => match sub {
            WignerCommand::Sweep {
                n,
                delta_a,
                threshold,
                n0,
            } => {
                let mut cfg = match load_config(&cli.common.config, "wigner-sweep")? {
                    Some(ScenarioConfig::WignerSweep(c)) => c,
                    _ => serde_json::from_str::<WignerSweepConfig>("{}").expect("defaults"),
                };
                if let Some(n) = n {
                    cfg.n = *n;
                }
                if let Some(text) = delta_a {
                    cfg.delta_a_values = parse_usize_list(text)?;
                }
                if let Some(t) = threshold {
                    cfg.threshold = *t;
                }
                if n0.is_some() {
                    cfg.n0 = *n0;
                }
                ScenarioConfig::WignerSweep(cfg)
            }
        },
        Command::Probe { sub } => match sub {
            ProbeCommand::Sim {
                preset,
                epsilon1,
                sigma_q1,
                epsilon2,
                sigma_q2,
                mode,
                q1,
                n0,
                delta_a,
                grid_points,
            } => {
                let mut cfg = match load_config(&cli.common.config, "probe-sim")? {
                    Some(ScenarioConfig::ProbeSim(c)) => c,
                    _ => serde_json::from_str::<ProbeSimConfig>("{}").expect("defaults"),
                };
                if preset.is_some() {
                    cfg.preset = preset.clone();
                }
                if let Some(v) = epsilon1 {
                    cfg.epsilon1 = *v;
                }
                if let Some(v) = sigma_q1 {
                    cfg.sigma_q1 = *v;
                }
                if let Some(v) = epsilon2 {
                    cfg.epsilon2 = *v;
                }
                if let Some(v) = sigma_q2 {
                    cfg.sigma_q2 = *v;
                }
                if let Some(v) = delta_a {
                    cfg.delta_a = *v;
                }
                if let Some(v) = grid_points {
                    cfg.grid_points = *v;
                }
                if let Some(m) = mode {
                    cfg.mode = match m.as_str() {
                        "full" => ProbeMode::Full { q1: q1.unwrap_or(0.0) },
                        "strong" => ProbeMode::Strong { n0: n0.unwrap_or(0) },
                        "weak" => ProbeMode::Weak,
                        other => return Err(format!("unknown mode '{other}'")),
                    };
                } else {
                    match (&mut cfg.mode, q1, n0) {
                        (ProbeMode::Full { q1: slot }, Some(v), _) => *slot = *v,
                        (ProbeMode::Strong { n0: slot }, _, Some(v)) => *slot = *v,
                        _ => {}
                    }
                }
                ScenarioConfig::ProbeSim(cfg)
            }
        },
        Command::Continuum { sub } => match sub {
            ContinuumCommand::Sinc {
                delta_p,
                sigma_p,
                p_center,
            } => {
                let mut cfg = match load_config(&cli.common.config, "continuum-sinc")? {
                    Some(ScenarioConfig::ContinuumSinc(c)) => c,
                    _ => ContinuumSincConfig {
                        sigma_p: 1.0,
                        p_center: 0.0,
                        delta_p: 0.1,
                    },
                };
                if let Some(v) = delta_p {
                    cfg.delta_p = *v;
                }
                if let Some(v) = sigma_p {
                    cfg.sigma_p = *v;
                }
                if let Some(v) = p_center {
                    cfg.p_center = *v;
                }
                ScenarioConfig::ContinuumSinc(cfg)
            }
            ContinuumCommand::Theta {
                theta,
                delta_xprime,
                c,
            } => {
                let mut cfg = match load_config(&cli.common.config, "continuum-theta")? {
                    Some(ScenarioConfig::ContinuumTheta(c)) => c,
                    _ => ContinuumThetaConfig {
                        thetas: vec![std::f64::consts::FRAC_PI_2],
                        delta_xprimes: vec![1.0],
                        c: 2.0,
                    },
                };
                if let Some(text) = theta {
                    cfg.thetas = parse_f64_list(text)?;
                }
                if let Some(text) = delta_xprime {
                    cfg.delta_xprimes = parse_f64_list(text)?;
                }
                if let Some(v) = c {
                    cfg.c = *v;
                }
                ScenarioConfig::ContinuumTheta(cfg)
            }
        },
        Command::AppendixC { sub } => match sub {
            AppendixCCommand::Check { delta_p, z } => {
                let mut cfg = match load_config(&cli.common.config, "appendix-c")? {
                    Some(ScenarioConfig::AppendixC(c)) => c,
                    _ => serde_json::from_str::<AppendixCConfig>("{}").expect("defaults"),
                };
                if let Some(text) = delta_p {
                    cfg.delta_ps = parse_f64_list(text)?;
                }
                if let Some(text) = z {
                    cfg.zs = parse_f64_list(text)?;
                }
                ScenarioConfig::AppendixC(cfg)
            }
        },
    })
}

fn default_rows_if_empty(cfg: &SchwingerTableConfig) -> Vec<TableRow> {
    if cfg.rows.is_empty() {
        serde_json::from_str::<SchwingerTableConfig>("{}")
            .expect("defaults")
            .rows
    } else {
        cfg.rows.clone()
    }
}

fn emit_error(kind: &str, message: &str) {
    eprintln!("{{\"error\":\"{kind}\",\"message\":\"{}\"}}", message.replace('"', "'"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let scenario = match build_scenario(&cli) {
        Ok(s) => s,
        Err(msg) => {
            emit_error("validation", &msg);
            return ExitCode::from(2);
        }
    };
    if cli.common.validate_only {
        let violations = cli::validate(&scenario);
        let rendered: Vec<String> = violations
            .iter()
            .map(|v| format!("\"{}\"", v.replace('"', "'")))
            .collect();
        println!("[{}]", rendered.join(","));
        return ExitCode::SUCCESS;
    }
    let opts = RunOptions {
        format: match cli.common.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        },
        tol: cli.common.tol,
    };
    let artifact = match cli::run(&scenario, &opts) {
        Ok(a) => a,
        Err(e) => {
            let (kind, code) = if e.is_validation() {
                ("validation", 2)
            } else {
                ("accuracy", 3)
            };
            emit_error(kind, &e.to_string());
            return ExitCode::from(code);
        }
    };
    match &cli.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, artifact) {
                emit_error("io", &format!("cannot write {}: {e}", path.display()));
                return ExitCode::from(2);
            }
        }
        None => print!("{artifact}"),
    }
    ExitCode::SUCCESS
}

// Silence the unused-import lint for StateConfig, which is only used by
// configs loaded from files.
#[allow(unused)]
fn _state_config_is_reachable(_: StateConfig) {}
