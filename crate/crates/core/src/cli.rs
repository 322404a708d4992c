//! Command-line front end.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use sc_relay::base_matrix::{design_rate_mn, design_rate_regular, lift, rate::rate_to_f64};
use sc_relay::capacity::region_gap;
use sc_relay::coupling::CoupledCode;
use sc_relay::de::{corner_threshold, sweep_region, DeConfig, FreeParam};
use sc_relay::document::CodeDocument;
use sc_relay::mc::run_pipeline;
use sc_relay::presets::Preset;
use sc_relay::relay::{ChannelParams, JointRelayGraph};
use sc_relay::report::{fmt_sig, limit_csv, parse_grid, region_csv, simulation_csv, threshold_csv};
use sc_relay::Execution;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io(String),
}

impl From<sc_relay::Error> for CliError {
    fn from(e: sc_relay::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "sc-relay",
    version,
    about = "Thresholds and achievable regions of spatially-coupled codes on the erasure relay channel"
)]
struct Cli {
    /// TOML file supplying defaults for any option not given on the command line.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the exact design rate of a coupled ensemble.
    Rate {
        #[command(subcommand)]
        family: RateFamily,
    },
    /// BP threshold of one link with the other fixed, or of the standalone code.
    Threshold(ThresholdArgs),
    /// Achievable (eps_rd, eps_sd) region plus the capacity limit on the same grid.
    Region(RegionArgs),
    /// Finite-length Monte Carlo of the decode-and-forward pipeline.
    Simulate(SimulateArgs),
    /// Write a code as a JSON document or its lifted parity-check matrix.
    Export(ExportArgs),
}

#[derive(Subcommand, Debug)]
enum RateFamily {
    Regular {
        l: u32,
        r: u32,
        #[arg(long = "L")]
        coupling: Option<u32>,
    },
    Mn {
        l: u32,
        r: u32,
        g: u32,
        #[arg(long = "L")]
        coupling: Option<u32>,
    },
}

#[derive(Args, Debug, Clone)]
struct CodeArgs {
    /// One of reg-3-6, reg-5-10, mn-4-2-2, arja-se.
    preset: Option<String>,
    /// Coupling number; omit for the uncoupled protograph.
    #[arg(long = "L")]
    coupling: Option<u32>,
    /// Use the uncoupled protograph even if the config file sets L.
    #[arg(long, conflicts_with = "coupling")]
    uncoupled: bool,
    /// Load the code from a JSON document instead of a preset.
    #[arg(long, conflicts_with = "preset")]
    code: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct DeArgs {
    #[arg(long)]
    success_tol: Option<f64>,
    #[arg(long)]
    stall_tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<u64>,
    /// Bisection width.
    #[arg(long)]
    tol: Option<f64>,
    /// Evaluate on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Threshold of the source code alone over a single erasure channel.
    #[arg(long, conflicts_with = "corner")]
    standalone: bool,
    /// Fixed link, `rd=<p>` (search eps_sd) or `sd=<p>` (search eps_rd).
    #[arg(long)]
    corner: Option<String>,
    #[command(flatten)]
    de: DeArgs,
    /// Also write the point as CSV.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RegionArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// eps_rd grid as start:stop:step, endpoints inclusive.
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    de: DeArgs,
    /// Region CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Limit CSV path; defaults to `<out stem>_limit.csv`.
    #[arg(long)]
    limit_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    eps_sd: Option<f64>,
    #[arg(long)]
    eps_rd: Option<f64>,
    #[arg(long)]
    eps_sr: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum ExportFormat {
    Json,
    Alist,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    code: CodeArgs,
    #[arg(long, value_enum, default_value = "json")]
    format: ExportFormat,
    /// Export the joint destination graph instead of the single code.
    #[arg(long)]
    joint: bool,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Defaults read from `--config`.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    preset: Option<String>,
    code: Option<PathBuf>,
    #[serde(rename = "L")]
    coupling: Option<u32>,
    eps_sd: Option<f64>,
    eps_rd: Option<f64>,
    eps_sr: Option<f64>,
    success_tol: Option<f64>,
    stall_tol: Option<f64>,
    max_iter: Option<u64>,
    tol: Option<f64>,
    grid: Option<String>,
    out: Option<PathBuf>,
    seed: Option<u64>,
    q: Option<usize>,
    trials: Option<u64>,
}

impl RunConfig {
    fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(RunConfig::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    match cli.command {
        Command::Rate { family } => cmd_rate(family),
        Command::Threshold(args) => cmd_threshold(args, &cfg),
        Command::Region(args) => cmd_region(args, &cfg),
        Command::Simulate(args) => cmd_simulate(args, &cfg),
        Command::Export(args) => cmd_export(args, &cfg),
    }
}

fn cmd_rate(family: RateFamily) -> CliResult<()> {
    let rate = match family {
        RateFamily::Regular { l, r, coupling } => design_rate_regular(l, r, coupling)?,
        RateFamily::Mn { l, r, g, coupling } => design_rate_mn(l, r, g, coupling)?,
    };
    println!("{}/{} = {}", rate.numer(), rate.denom(), rate_to_f64(rate));
    Ok(())
}

/// The joint graph and its nominal rate for the chosen preset or document.
struct Selected {
    name: String,
    coupling: Option<u32>,
    /// The source code alone; absent for joint-only graphs.
    code: Option<CoupledCode>,
    joint: JointRelayGraph,
    rate: Option<f64>,
}

fn select(code: &CodeArgs, cfg: &RunConfig) -> CliResult<Selected> {
    let coupling = if code.uncoupled {
        None
    } else {
        code.coupling.or(cfg.coupling)
    };
    if let Some(path) = code
        .code
        .clone()
        .or_else(|| code.preset.is_none().then(|| cfg.code.clone()).flatten())
    {
        let text = read(&path)?;
        let doc = CodeDocument::from_json(&text)?;
        let (code, joint, rate) = if doc.is_joint() {
            (None, doc.to_joint()?, None)
        } else {
            let c = doc.to_coupled()?;
            let rate = c.design_rate().map(rate_to_f64);
            let joint = sc_relay::relay::build_joint(&c, &c)?;
            (Some(c), joint, rate)
        };
        return Ok(Selected {
            name: path.display().to_string(),
            coupling: None,
            code,
            joint,
            rate,
        });
    }
    let name = code
        .preset
        .clone()
        .or_else(|| cfg.preset.clone())
        .ok_or_else(|| {
            CliError::Usage(format!(
                "give a preset ({}) or --code <file>",
                Preset::names()
            ))
        })?;
    let preset: Preset = name.parse()?;
    Ok(Selected {
        name,
        coupling,
        code: preset.code(coupling).ok(),
        joint: preset.joint(coupling)?,
        rate: Some(preset.design_rate_f64(coupling)?),
    })
}

fn de_config(de: &DeArgs, cfg: &RunConfig) -> CliResult<(DeConfig, f64, Execution)> {
    let defaults = DeConfig::default();
    let config = DeConfig {
        success_tol: de
            .success_tol
            .or(cfg.success_tol)
            .unwrap_or(defaults.success_tol),
        stall_tol: de.stall_tol.or(cfg.stall_tol).unwrap_or(defaults.stall_tol),
        max_iter: de.max_iter.or(cfg.max_iter).unwrap_or(defaults.max_iter),
        ..defaults
    };
    config.validate()?;
    let tol = de.tol.or(cfg.tol).unwrap_or(1e-6);
    if !(tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    let exec = if de.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    Ok((config, tol, exec))
}

fn parse_corner(spec: &str) -> CliResult<(FreeParam, f64)> {
    let bad = || CliError::Usage(format!("--corner '{spec}' is not rd=<p> or sd=<p>"));
    let (key, value) = spec.split_once('=').ok_or_else(bad)?;
    let value: f64 = value.trim().parse().map_err(|_| bad())?;
    if !(0.0..=1.0).contains(&value) {
        return Err(bad());
    }
    match key.trim() {
        "rd" => Ok((FreeParam::Sd, value)),
        "sd" => Ok((FreeParam::Rd, value)),
        _ => Err(bad()),
    }
}

fn cmd_threshold(args: ThresholdArgs, cfg: &RunConfig) -> CliResult<()> {
    let sel = select(&args.code, cfg)?;
    let (config, tol, _) = de_config(&args.de, cfg)?;
    let (graph, free, fixed, what) = if args.standalone {
        match &sel.code {
            Some(code) => (
                JointRelayGraph::standalone(code),
                FreeParam::Sd,
                1.0,
                "standalone",
            ),
            // Joint-only graphs (the ARJA split extension): with the relay
            // link erased the relay columns only pass messages through, so
            // the eps_rd = 1 corner is the source code's threshold.
            None => (sel.joint, FreeParam::Sd, 1.0, "standalone"),
        }
    } else {
        let (free, fixed) = parse_corner(args.corner.as_deref().unwrap_or("rd=1"))?;
        (sel.joint, free, fixed, "corner")
    };
    let result = corner_threshold(&graph, free, fixed, &config, tol)?;
    let (eps_rd, eps_sd) = match free {
        FreeParam::Sd => (fixed, result.threshold),
        FreeParam::Rd => (result.threshold, fixed),
    };
    let searched = match free {
        FreeParam::Sd => "eps_sd",
        FreeParam::Rd => "eps_rd",
    };
    println!(
        "{} {what}: {searched} threshold = {} (bracket [{}, {}], {} DE runs, {} iterations)",
        sel.name,
        fmt_sig(result.threshold, 9),
        fmt_sig(result.bracket.0, 9),
        fmt_sig(result.bracket.1, 9),
        result.de_runs,
        result.converged_iterations
    );
    if let Some(out) = &args.out {
        write(out, &threshold_csv(eps_rd, eps_sd, &result))?;
    }
    Ok(())
}

fn limit_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "region".into());
    out.with_file_name(format!("{stem}_limit.csv"))
}

fn cmd_region(args: RegionArgs, cfg: &RunConfig) -> CliResult<()> {
    let sel = select(&args.code, cfg)?;
    let (config, tol, exec) = de_config(&args.de, cfg)?;
    let grid_spec = args
        .grid
        .clone()
        .or_else(|| cfg.grid.clone())
        .unwrap_or_else(|| "0:1:0.01".into());
    let grid = parse_grid(&grid_spec)?;
    let out = args
        .out
        .clone()
        .or_else(|| cfg.out.clone())
        .unwrap_or_else(|| PathBuf::from("region.csv"));
    let limit_out = args.limit_out.clone().unwrap_or_else(|| limit_path(&out));

    let region = sweep_region(&sel.joint, &grid, &config, tol, exec)?;
    let rate = sel.rate.unwrap_or(0.5);
    let comments = vec![format!(
        "code={} L={} rate={}",
        sel.name,
        sel.coupling.map_or("uncoupled".into(), |l| l.to_string()),
        fmt_sig(rate, 9)
    )];
    write(&out, &region_csv(&region, &comments))?;
    write(&limit_out, &limit_csv(rate, &grid))?;

    println!("{} points -> {}", region.points.len(), out.display());
    println!("limit -> {}", limit_out.display());
    for (label, r) in [("design rate", rate), ("rate 0.5", 0.5)] {
        let gap = region_gap(&region, r);
        if gap.points.is_empty() {
            println!("gap vs {label} {}: no slope-region points", fmt_sig(r, 9));
        } else {
            println!(
                "gap vs {label} {}: max {} over {} slope-region points",
                fmt_sig(r, 9),
                fmt_sig(gap.max, 9),
                gap.points.len()
            );
        }
    }
    Ok(())
}

fn cmd_simulate(args: SimulateArgs, cfg: &RunConfig) -> CliResult<()> {
    let sel = select(&args.code, cfg)?;
    let params = ChannelParams::new(
        args.eps_sd.or(cfg.eps_sd).unwrap_or(0.4),
        args.eps_rd.or(cfg.eps_rd).unwrap_or(0.4),
        args.eps_sr.or(cfg.eps_sr).unwrap_or(0.2),
    )?;
    let q = args.q.or(cfg.q).unwrap_or(512);
    let trials = args.trials.or(cfg.trials).unwrap_or(100);
    let seed = args.seed.or(cfg.seed).unwrap_or(1);
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let stats = run_pipeline(&sel.joint, &params, q, trials, seed, exec)?;
    let csv = simulation_csv(&stats);
    match args.out.clone().or_else(|| cfg.out.clone()) {
        Some(path) => write(&path, &csv)?,
        None => print!("{csv}"),
    }
    if let (Some(rate), Some((lo, hi))) = (stats.dest_fail_rate(), stats.dest_fail_ci()) {
        let (rlo, rhi) = stats.relay_fail_ci().expect("trials > 0");
        eprintln!(
            "destination failures {}/{} = {} (95% CI [{}, {}])",
            stats.dest_fail,
            stats.trials,
            fmt_sig(rate, 4),
            fmt_sig(lo, 4),
            fmt_sig(hi, 4)
        );
        eprintln!(
            "relay failures {}/{} (95% CI [{}, {}])",
            stats.relay_fail,
            stats.trials,
            fmt_sig(rlo, 4),
            fmt_sig(rhi, 4)
        );
    }
    Ok(())
}

fn cmd_export(args: ExportArgs, cfg: &RunConfig) -> CliResult<()> {
    let sel = select(&args.code, cfg)?;
    let single = sel.code.as_ref().filter(|_| !args.joint);
    let text = match (args.format, single) {
        (ExportFormat::Json, Some(c)) => CodeDocument::from(c).to_json(),
        (ExportFormat::Json, None) => CodeDocument::from(&sel.joint).to_json(),
        (ExportFormat::Alist, single) => {
            let q = args.q.or(cfg.q).unwrap_or(512);
            let seed = args.seed.or(cfg.seed).unwrap_or(1);
            let (base, roles) = match single {
                Some(c) => (&c.base, &c.column_roles),
                None => (&sel.joint.base, &sel.joint.roles),
            };
            lift(base, roles, q, seed)?.to_alist()
        }
    };
    match args.out {
        Some(path) => write(&path, &text),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
