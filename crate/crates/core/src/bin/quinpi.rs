use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use quinpi::driver::output::{
    to_file, write_error_table, write_events, write_run_summary, write_stats, write_weight_study,
};
use quinpi::driver::{
    converge, parse_levels, run_problem, weight_study, DriverError, ProblemId, RunConfig, RunOptions, Scheme,
};

#[derive(Parser)]
#[command(name = "quinpi", version, about = "Implicit third-order finite volumes for stiff 1D hyperbolic systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Single simulation: solution, entropy, event CSVs and a summary.
    Run(ProblemArgs),
    /// Dyadic refinement sweep with an error and rate table.
    Converge {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, default_value = "40:320")]
        levels: String,
    },
    /// Convergence of the nonlinear weights to the linear ones.
    WeightsStudy {
        #[arg(long, default_value = "20:5120")]
        levels: String,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Time-limiting statistics over one or more grid levels.
    Stats {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long)]
        levels: Option<String>,
    },
}

#[derive(Args)]
struct ProblemArgs {
    /// TOML configuration; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    kappa: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    scheme: Option<Scheme>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    dt_over_h: Option<f64>,
    #[arg(long)]
    final_time: Option<f64>,
    #[arg(long)]
    gamma1: Option<f64>,
    #[arg(long)]
    gamma2: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    prefix: Option<String>,
}

impl ProblemArgs {
    fn resolve(&self) -> Result<RunConfig, DriverError> {
        let mut cfg = match (&self.config, &self.problem) {
            (Some(path), _) => RunConfig::load(path)?,
            (None, Some(name)) => RunConfig::new(ProblemId::from_name(name, self.kappa, self.eps)?, RunOptions::default()),
            (None, None) => return Err(DriverError::Config("either --config or --problem is required".into())),
        };
        if self.config.is_some() {
            if let Some(name) = &self.problem {
                let id = ProblemId::from_name(name, self.kappa, self.eps)?;
                if id != cfg.problem.id {
                    cfg.problem = quinpi::driver::ProblemSpec::new(id);
                }
            }
        }
        if let Some(s) = self.scheme {
            cfg.run.scheme = s;
        }
        if let Some(n) = self.cells {
            cfg.run.cells = n;
        }
        if let Some(r) = self.dt_over_h {
            cfg.problem.dt_over_h = r;
        }
        if let Some(t) = self.final_time {
            cfg.problem.final_time = t;
        }
        if let Some(g) = self.gamma1 {
            cfg.problem.limiter.gamma1 = Some(g);
        }
        if let Some(g) = self.gamma2 {
            cfg.problem.limiter.gamma2 = g;
        }
        if let Some(o) = &self.out {
            cfg.output.dir = o.clone();
        }
        if let Some(p) = &self.prefix {
            cfg.output.prefix = Some(p.clone());
        }
        cfg.problem.validate()?;
        Ok(cfg)
    }
}

fn out_path(dir: &Path, prefix: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{prefix}_{suffix}"))
}

fn cmd_run(args: &ProblemArgs) -> Result<ExitCode, DriverError> {
    let cfg = args.resolve()?;
    std::fs::create_dir_all(&cfg.output.dir)?;
    let prefix = cfg.prefix();
    let rep = run_problem(&cfg.problem, &cfg.run)?;
    let dir = &cfg.output.dir;
    to_file(&out_path(dir, &prefix, "solution.csv"), |w| rep.field.write_csv(&rep.grid, w))?;
    to_file(&out_path(dir, &prefix, "report.txt"), |w| write_run_summary(&rep, w))?;
    to_file(&out_path(dir, &prefix, "events.csv"), |w| write_events(&rep.events, w))?;
    if let Some(last) = &rep.last_report {
        to_file(&out_path(dir, &prefix, "entropy.csv"), |w| last.write_csv(w))?;
    }
    write_run_summary(&rep, std::io::stdout().lock())?;
    Ok(if rep.completed() { ExitCode::SUCCESS } else { ExitCode::from(3) })
}

fn cmd_converge(args: &ProblemArgs, levels: &str) -> Result<ExitCode, DriverError> {
    let cfg = args.resolve()?;
    let levels = parse_levels(levels)?;
    std::fs::create_dir_all(&cfg.output.dir)?;
    let rows = converge(&cfg.problem, &cfg.run, &levels)?;
    let name = format!("{}_{}", cfg.prefix(), cfg.run.scheme);
    to_file(&out_path(&cfg.output.dir, &name, "errors.csv"), |w| write_error_table(&rows, w))?;
    write_error_table(&rows, std::io::stdout().lock())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_weights(levels: &str, out: &Path) -> Result<ExitCode, DriverError> {
    let rows = weight_study(&parse_levels(levels)?)?;
    std::fs::create_dir_all(out)?;
    to_file(&out.join("weights_study.csv"), |w| write_weight_study(&rows, w))?;
    write_weight_study(&rows, std::io::stdout().lock())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(args: &ProblemArgs, levels: Option<&str>) -> Result<ExitCode, DriverError> {
    let cfg = args.resolve()?;
    let levels = match levels {
        Some(l) => parse_levels(l)?,
        None => vec![cfg.run.cells],
    };
    std::fs::create_dir_all(&cfg.output.dir)?;
    let mut rows = Vec::new();
    let mut failed = false;
    for &n in &levels {
        let rep = run_problem(&cfg.problem, &RunOptions { cells: n, ..cfg.run })?;
        failed |= !rep.completed();
        let name = format!("{}_{}_{n}", cfg.prefix(), cfg.run.scheme);
        to_file(&out_path(&cfg.output.dir, &name, "events.csv"), |w| write_events(&rep.events, w))?;
        rows.push((n, rep.stats()));
    }
    let name = format!("{}_{}", cfg.prefix(), cfg.run.scheme);
    to_file(&out_path(&cfg.output.dir, &name, "stats.csv"), |w| write_stats(&rows, w))?;
    write_stats(&rows, std::io::stdout().lock())?;
    Ok(if failed { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Converge { problem, levels } => cmd_converge(problem, levels),
        Command::WeightsStudy { levels, out } => cmd_weights(levels, out),
        Command::Stats { problem, levels } => cmd_stats(problem, levels.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
