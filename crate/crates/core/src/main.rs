use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use hyperphase::explorer::ExploreMode;
use hyperphase::harness::{
    run_branching_suite, run_census_sweep, run_exploration_sweep, run_sweep, write_census_csv,
    write_explore_csv, ExperimentConfig, Regime,
};
use hyperphase::theory;

/// Phase-transition experiments for high-order components in random
/// uniform hypergraphs.
#[derive(Parser)]
#[command(name = "hyperphase", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample hypergraphs and census their j-components against predictions.
    Census(RunArgs),
    /// Run seeded explorations with the degree and size checkers.
    Explore(ExploreArgs),
    /// Monte Carlo estimates over the branching offspring laws.
    Branching(RunArgs),
    /// Print the degree-bound constants table.
    Constants(ConstantsArgs),
    /// Print the critical probability, survival and giant-size predictions.
    Predict(PredictArgs),
    /// Census + exploration + branching, with the escape-rate bracket.
    Sweep(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Sub,
    Super,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// stop at T (first of S1/S2/S3)
    T,
    /// stop at T_large (first of S1/S2)
    Tlarge,
    /// run until the component is exhausted
    Full,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u8>,
    #[arg(long)]
    j: Option<u8>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
    #[arg(long)]
    trials: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    /// TOML config file; explicit flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for report files (default: current directory).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(flatten)]
    run: RunArgs,
    /// Exploration horizon.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Disable the jump/pivot ledger and degree indexing (faster sweeps).
    #[arg(long)]
    no_ledger: bool,
}

#[derive(Args)]
struct ConstantsArgs {
    #[arg(long)]
    k: u8,
    #[arg(long)]
    j: u8,
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    alpha: Option<f64>,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u8,
    #[arg(long)]
    j: u8,
    #[arg(long)]
    eps: f64,
}

const EXIT_PASS: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            // help/version are not usage errors
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
    }
}

fn dispatch(cli: Cli) -> hyperphase::Result<ExitCode> {
    match cli.cmd {
        Cmd::Census(args) => {
            let (config, out, format) = build_config(&args, None)?;
            let report = run_census_sweep(&config)?;
            match format {
                FormatArg::Csv => {
                    let path = out.join("census_trials.csv");
                    let mut f = std::fs::File::create(&path)?;
                    write_census_csv(&report, &mut f)?;
                    println!("wrote {}", path.display());
                }
                FormatArg::Json => {
                    write_json(&out.join("census_report.json"), &report)?;
                }
            }
            let a = &report.aggregate;
            println!(
                "census: p={:.6e} mean_largest={:.1} solver={:.1} rel_gap={:.4} second_ratio_max={:.4} sub_bound={:.1} pass={}",
                a.p, a.mean_largest, a.solver_size, a.rel_gap, a.max_second_ratio, a.sub_bound, a.pass
            );
            Ok(exit_for(a.pass))
        }
        Cmd::Explore(args) => {
            let mode = args.mode.map(|m| match m {
                ModeArg::T => ExploreMode::ToStop,
                ModeArg::Tlarge => ExploreMode::ToLargeStop,
                ModeArg::Full => ExploreMode::Exhaustive,
            });
            let (mut config, out, format) = build_config(&args.run, mode)?;
            if args.no_ledger {
                config.ledger = Some(false);
            }
            let report = run_exploration_sweep(&config)?;
            match format {
                FormatArg::Csv => {
                    let path = out.join("explore_trials.csv");
                    let mut f = std::fs::File::create(&path)?;
                    write_explore_csv(&report, &mut f)?;
                    println!("wrote {}", path.display());
                }
                FormatArg::Json => {
                    write_json(&out.join("explore_report.json"), &report)?;
                }
            }
            let a = &report.aggregate;
            println!(
                "explore: p={:.6e} escape={:.4}+-{:.4} solver={:.4} degree_violations={} monotonicity={}/{} pass={}",
                a.p, a.escape_rate, a.escape_stderr, a.solver_survival, a.degree_violations_total,
                a.monotonicity_violations, a.monotonicity_applicable, a.pass
            );
            Ok(exit_for(a.pass))
        }
        Cmd::Branching(args) => {
            let (config, out, format) = build_config(&args, None)?;
            let report = run_branching_suite(&config)?;
            match format {
                FormatArg::Csv => {
                    let path = out.join("branching_report.csv");
                    let mut f = std::fs::File::create(&path)?;
                    write_branching_csv(&report, &mut f)?;
                    println!("wrote {}", path.display());
                }
                FormatArg::Json => {
                    write_json(&out.join("branching_report.json"), &report)?;
                }
            }
            println!(
                "branching: upper={:.4}+-{:.4} lower={:.4}+-{:.4} solver={:.4} dual_mean={:.2} (target {:.2}) pass={}",
                report.upper.estimate,
                report.upper.stderr,
                report.lower.estimate,
                report.lower.stderr,
                report.solver_survival,
                report.dual_mean.mean,
                report.dual_target,
                report.pass
            );
            Ok(exit_for(report.pass))
        }
        Cmd::Constants(args) => {
            let tc = theory::build_constants(args.k, args.j, args.eps, args.alpha)?;
            println!("k={} j={} eps={} alpha={:.6}", tc.k, tc.j, tc.eps, tc.alpha);
            println!("c = C(k,j)-1 = {}", tc.c);
            println!("ell  c_ell  w0  r_ell      r'_ell     C'_ell        C_ell");
            println!("  0      {:>2}   -  -          -          -             1", tc.c);
            for l in &tc.levels {
                println!(
                    "{:>3}  {:>5}  {:>2}  {:<9.6} {:<10.6} {:<13.6} {:<.6}",
                    l.ell, l.c_ell, l.w0, l.r, l.r_prime, l.c_prime, l.big
                );
            }
            Ok(ExitCode::from(EXIT_PASS))
        }
        Cmd::Predict(args) => {
            let g = theory::giant_prediction(args.n, args.k, args.j, args.eps)?;
            let sub = theory::subcritical_bound(
                args.n,
                args.j,
                args.eps,
                theory::SUBCRITICAL_SIZE_MARGIN,
            );
            println!("p_hat              = {:.12e}", g.p_hat);
            println!("p (supercritical)  = {:.12e}", g.p);
            println!("survival (solver)  = {:.9}", g.survival);
            println!("giant (solver)     = {:.3}", g.solver_size);
            println!("giant (asymptotic) = {:.3}", g.asymptotic_size);
            println!("subcritical bound  = {:.3}", sub);
            Ok(ExitCode::from(EXIT_PASS))
        }
        Cmd::Sweep(args) => {
            let (config, out, format) = build_config(&args, None)?;
            let report = run_sweep(&config)?;
            match format {
                FormatArg::Csv => {
                    let mut f = std::fs::File::create(out.join("census_trials.csv"))?;
                    write_census_csv(&report.census, &mut f)?;
                    let mut f = std::fs::File::create(out.join("explore_trials.csv"))?;
                    write_explore_csv(&report.exploration, &mut f)?;
                    let mut f = std::fs::File::create(out.join("branching_report.csv"))?;
                    write_branching_csv(&report.branching, &mut f)?;
                    println!("wrote reports under {}", out.display());
                }
                FormatArg::Json => {
                    write_json(&out.join("sweep_report.json"), &report)?;
                }
            }
            println!(
                "sweep: census={} explore={} branching={} bracket={} pass={}",
                report.census.aggregate.pass,
                report.exploration.aggregate.pass,
                report.branching.pass,
                report.bracket_ok,
                report.pass
            );
            Ok(exit_for(report.pass))
        }
    }
}

fn exit_for(pass: bool) -> ExitCode {
    ExitCode::from(if pass { EXIT_PASS } else { EXIT_CHECK_FAILED })
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> hyperphase::Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| hyperphase::Error::Parse(e.to_string()))?;
    std::fs::write(path, text)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_branching_csv<W: std::io::Write>(
    report: &hyperphase::harness::BranchingReport,
    mut w: W,
) -> hyperphase::Result<()> {
    use hyperphase::harness::fmt_f64;
    writeln!(w, "key,value")?;
    writeln!(w, "p,{}", fmt_f64(report.p))?;
    writeln!(w, "gamma,{}", fmt_f64(report.gamma))?;
    writeln!(w, "progeny_cap,{}", report.progeny_cap)?;
    writeln!(w, "solver_survival,{}", fmt_f64(report.solver_survival))?;
    writeln!(w, "upper_estimate,{}", fmt_f64(report.upper.estimate))?;
    writeln!(w, "upper_stderr,{}", fmt_f64(report.upper.stderr))?;
    writeln!(w, "lower_estimate,{}", fmt_f64(report.lower.estimate))?;
    writeln!(w, "lower_stderr,{}", fmt_f64(report.lower.stderr))?;
    if let Some(p) = &report.pivot {
        writeln!(w, "pivot_estimate,{}", fmt_f64(p.estimate))?;
        writeln!(w, "pivot_stderr,{}", fmt_f64(p.stderr))?;
    }
    writeln!(w, "dual_mean,{}", fmt_f64(report.dual_mean.mean))?;
    writeln!(w, "dual_target,{}", fmt_f64(report.dual_target))?;
    writeln!(w, "pass,{}", report.pass)?;
    Ok(())
}

/// Merges the optional TOML config with explicit flags (flags win) and
/// validates the result. Missing required fields are usage errors.
fn build_config(
    args: &RunArgs,
    mode: Option<ExploreMode>,
) -> hyperphase::Result<(ExperimentConfig, PathBuf, FormatArg)> {
    let mut config = if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)?;
        ExperimentConfig::from_toml(&text)?
    } else {
        let (Some(n), Some(k), Some(j), Some(eps)) = (args.n, args.k, args.j, args.eps) else {
            usage_exit("--n, --k, --j and --eps are required (or provide --config)");
        };
        ExperimentConfig::new(n, k, j, eps, Regime::Super, 10, 1)
    };
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(k) = args.k {
        config.k = k;
    }
    if let Some(j) = args.j {
        config.j = j;
    }
    if let Some(eps) = args.eps {
        config.eps = eps;
    }
    if let Some(r) = args.regime {
        config.regime = match r {
            RegimeArg::Sub => Regime::Sub,
            RegimeArg::Super => Regime::Super,
        };
    }
    if let Some(t) = args.trials {
        config.trials = t;
    }
    if let Some(s) = args.seed {
        config.seed = s;
    }
    if let Some(m) = mode {
        config.mode = Some(m);
    }
    if let Err(e) = config.validate() {
        usage_exit(&e.to_string());
    }
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&out)?;
    Ok((config, out, args.format))
}

fn usage_exit(msg: &str) -> ! {
    let mut cmd = Cli::command();
    let _ = cmd.print_help();
    eprintln!("\nerror: {msg}");
    std::process::exit(EXIT_USAGE as i32);
}
