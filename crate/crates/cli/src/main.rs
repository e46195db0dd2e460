use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use sphere_bem::{
    emit_csv, emit_field_grid, run_convergence, solve_dirichlet_single_layer, BemError, CurveSpec,
    DataSpec, ExperimentConfig, GridSpec,
};

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sphere-bem",
    version,
    about = "Boundary element solver for the Laplace-Beltrami equation on the sphere"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a convergence study and write the error table as CSV.
    Solve(SolveArgs),
}

#[derive(Args, Default)]
struct SolveArgs {
    /// Flat `key = value` file with the same keys as the long flags; flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `equator` or `cap:<theta0>` (domain theta > theta0).
    #[arg(long)]
    curve: Option<String>,
    /// `sin`, `sin:<m>`, `hat` or `file:<path>` (CSV of phi,g pairs).
    #[arg(long)]
    data: Option<String>,
    /// Comma-separated, strictly increasing panel counts.
    #[arg(long)]
    dofs: Option<String>,
    /// Latitude along which the error is measured [default: 3pi/4].
    #[arg(long)]
    eval_theta: Option<f64>,
    /// Number of samples on the evaluation latitude [default: 1024].
    #[arg(long)]
    eval_samples: Option<usize>,
    /// CSV output path; the table goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write `phi,theta,u` samples of the finest solution here.
    #[arg(long)]
    field_grid: Option<PathBuf>,
    /// Field grid size `<n_phi>x<n_theta>` [default: 128x64].
    #[arg(long)]
    grid: Option<String>,
}

/// Error raised while assembling the configuration: always exit code 2.
#[derive(Debug)]
struct ConfigError(anyhow::Error);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn read_config_file(path: &Path) -> anyhow::Result<HashMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config {}", path.display()))?;
    let mut map = HashMap::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{}:{}: expected key = value", path.display(), k + 1))?;
        let key = key.trim().replace('_', "-");
        const KNOWN: [&str; 8] = [
            "curve",
            "data",
            "dofs",
            "eval-theta",
            "eval-samples",
            "out",
            "field-grid",
            "grid",
        ];
        if !KNOWN.contains(&key.as_str()) {
            bail!("{}:{}: unknown key `{key}`", path.display(), k + 1);
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parse_dofs(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .with_context(|| format!("bad panel count `{t}`"))
        })
        .collect()
}

struct Plan {
    config: ExperimentConfig,
    field_grid: Option<(PathBuf, GridSpec)>,
}

fn build_plan(args: SolveArgs) -> anyhow::Result<Plan> {
    let file = match &args.config {
        Some(p) => read_config_file(p)?,
        None => HashMap::new(),
    };
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());
    let mut cfg = ExperimentConfig::default();
    if let Some(c) = pick(args.curve, "curve") {
        cfg.curve = c.parse::<CurveSpec>()?;
    }
    if let Some(d) = pick(args.data, "data") {
        cfg.data = d.parse::<DataSpec>()?;
    }
    if let Some(d) = pick(args.dofs, "dofs") {
        cfg.dofs = parse_dofs(&d)?;
    }
    if let Some(t) = pick(args.eval_theta.map(|v| v.to_string()), "eval-theta") {
        cfg.eval_theta = t.parse().with_context(|| format!("bad eval-theta `{t}`"))?;
    }
    if let Some(m) = pick(args.eval_samples.map(|v| v.to_string()), "eval-samples") {
        cfg.eval_samples = m
            .parse()
            .with_context(|| format!("bad eval-samples `{m}`"))?;
    }
    cfg.output = pick(args.out.map(|p| p.display().to_string()), "out").map(PathBuf::from);
    let grid = pick(args.grid, "grid")
        .map(|g| g.parse::<GridSpec>())
        .transpose()?;
    let field_grid = pick(
        args.field_grid.map(|p| p.display().to_string()),
        "field-grid",
    )
    .map(|p| {
        (
            PathBuf::from(p),
            grid.unwrap_or(GridSpec {
                n_phi: 128,
                n_theta: 64,
            }),
        )
    });
    cfg.validate()?;
    Ok(Plan {
        config: cfg,
        field_grid,
    })
}

fn solve(args: SolveArgs) -> anyhow::Result<()> {
    let plan = build_plan(args).map_err(ConfigError)?;
    let cfg = &plan.config;
    let report = run_convergence(cfg)?;
    match &cfg.output {
        Some(path) => {
            emit_csv(&report, path)?;
            for row in &report.rows {
                let ratio = row.ratio.map(|r| format!("{r:.2}")).unwrap_or_default();
                println!("{:>6}  {:.3e}  {ratio}", row.dof, row.l2_error);
            }
        }
        None => print!("{}", report.to_csv()),
    }
    if let Some((path, grid)) = &plan.field_grid {
        let n = *cfg.dofs.last().expect("validated non-empty");
        let sol = solve_dirichlet_single_layer(&cfg.curve.to_curve()?, &cfg.data.load()?, n)?;
        emit_field_grid(&sol, *grid, path)?;
    }
    Ok(())
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return EXIT_CONFIG;
    }
    match err.downcast_ref::<BemError>() {
        Some(e) if e.is_config() => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Solve(args) => solve(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
