use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hitset::adversary::{
    measure_expected_cost, verify_path, AdversaryCube, AdversaryTree, NearestCenterGreedy,
    OfflineWitness,
};
use hitset::harness::checks::run_all;
use hitset::harness::{
    generate_random_instance, instance_opt_solution, run_experiment, Algo, FatKind, GenSpec,
    InstanceFile, RunConfig, TrialReport,
};
use hitset::hypercube_online::Lir;

mod plot;

/// Exit status when a check, bound or invariant fails.
const VIOLATION: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hitset",
    version,
    about = "Online geometric hitting set experiments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an online algorithm over an instance and write one report per trial.
    Run(RunArgs),
    /// Generate a random instance file.
    Gen(GenArgs),
    /// Measure an algorithm against random adversary paths.
    Adversary(AdversaryArgs),
    /// Compute an exact optimum of an instance.
    Offline(OfflineArgs),
    /// Plot ratios from report files as SVG.
    Plot(PlotArgs),
    /// Run the randomized invariant suites.
    Check(CheckArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_parser = parse_algo)]
    algo: Algo,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compute the exact optimum and the ratio (default).
    #[arg(long, overrides_with = "no_opt")]
    opt: bool,
    /// Skip the exact optimum.
    #[arg(long, overrides_with = "opt")]
    no_opt: bool,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Report file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Hypercube,
    Fat,
    Kgon,
}

#[derive(Clone, Copy, ValueEnum)]
enum FatArg {
    Linf,
    L2,
    Box,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    class: ClassArg,
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Largest object size.
    #[arg(long = "max-size", short = 'M', default_value_t = 16.0)]
    max_size: f64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    /// Coordinates are drawn from [0, extent].
    #[arg(long, default_value_t = 32.0)]
    extent: f64,
    /// Point count for polygon instances.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Polygon corner count.
    #[arg(long, default_value_t = 4)]
    k: u32,
    #[arg(long, value_enum, default_value = "linf")]
    fat: FatArg,
    /// Give every object this size.
    #[arg(long)]
    translates: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum HitterArg {
    /// Integer point nearest each unhit cube's center.
    Greedy,
    Lir,
    /// Offline: one point that knows the path.
    Witness,
}

#[derive(Args)]
struct AdversaryArgs {
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Root width, a power of four.
    #[arg(long = "max-size", short = 'M', default_value_t = 16)]
    max_size: u64,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, value_enum, default_value = "lir")]
    algo: HitterArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct OfflineArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Report files written by `run`.
    #[arg(long = "reports", required = true, num_args = 1..)]
    reports: Vec<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Samples per suite.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    Algo::parse(s).ok_or_else(|| format!("unknown algorithm {s:?}; expected lir, anc, es or hhr"))
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    InstanceFile::read(BufReader::new(f)).with_context(|| format!("reading {}", path.display()))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VIOLATION)
    }
}

fn run(a: RunArgs) -> Result<ExitCode> {
    let inst = read_instance(&a.instance)?;
    let cfg = RunConfig {
        algo: a.algo,
        seed: a.seed,
        opt: !a.no_opt,
        trials: a.trials,
    };
    let reports = run_experiment(&inst, &cfg)?;
    let mut w = sink(a.out.as_deref())?;
    for r in &reports {
        writeln!(w, "{}", serde_json::to_string(r)?)?;
    }
    w.flush()?;
    for r in reports.iter().filter(|r| !r.passed()) {
        for c in r.checks.iter().filter(|c| !c.passed) {
            eprintln!(
                "trial {}: {} failed: {}",
                r.trial,
                c.name,
                c.detail.as_deref().unwrap_or("")
            );
        }
    }
    Ok(status(reports.iter().all(TrialReport::passed)))
}

fn gen(a: GenArgs) -> Result<ExitCode> {
    let mut spec = match a.class {
        ClassArg::Hypercube => GenSpec::hypercubes(a.d, a.max_size, a.count, a.extent),
        ClassArg::Fat => {
            let kind = match a.fat {
                FatArg::Linf => FatKind::Linf,
                FatArg::L2 => FatKind::L2,
                FatArg::Box => FatKind::Box,
            };
            GenSpec::fat(kind, a.d, a.max_size, a.count, a.extent)
        }
        ClassArg::Kgon => GenSpec::kgons(a.k, a.max_size, a.count, a.points, a.extent),
    };
    if let Some(s) = a.translates {
        spec = spec.translates(s);
    }
    let inst = generate_random_instance(&spec, a.seed)?;
    let mut w = sink(a.out.as_deref())?;
    inst.write(&mut w)?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn adversary(a: AdversaryArgs) -> Result<ExitCode> {
    let tree = AdversaryTree::new(a.d, a.max_size)?;
    let mut bad_path = None;
    let mut check = |path: &[AdversaryCube]| {
        let w = verify_path(&tree, path);
        if let (Err(e), None) = (&w, &bad_path) {
            bad_path = Some(e.to_string());
        }
        w
    };
    let est = match a.algo {
        HitterArg::Greedy => measure_expected_cost(&tree, a.trials, a.seed, |_, p| {
            check(p)?;
            Ok(NearestCenterGreedy::default())
        }),
        HitterArg::Lir => measure_expected_cost(&tree, a.trials, a.seed, |s, p| {
            check(p)?;
            Lir::new(a.d, a.max_size as f64, s)
        }),
        HitterArg::Witness => measure_expected_cost(&tree, a.trials, a.seed, |_, p| {
            Ok(OfflineWitness::new(check(p)?))
        }),
    };
    let name = a.algo.to_possible_value().map(|v| v.get_name().to_owned());
    let mut ok = true;
    let mut checks = Vec::new();
    match (&est, bad_path.as_ref()) {
        (_, Some(e)) | (Err(hitset::Error::InvariantViolation(e)), None) => {
            ok = false;
            checks.push(json!({"name": "paths", "passed": false, "detail": e}));
        }
        (Err(e), None) => bail!("{e}"),
        (Ok(_), None) => checks.push(json!({"name": "paths", "passed": true})),
    }
    if let Ok(e) = &est {
        // the floor binds online algorithms only; allow three standard errors of noise
        if !matches!(a.algo, HitterArg::Witness) {
            let held = e.mean + 3.0 * e.std_error >= e.floor;
            ok &= held;
            checks.push(json!({"name": "floor", "passed": held}));
        }
    }
    let mut w = sink(a.out.as_deref())?;
    writeln!(
        w,
        "{}",
        json!({
            "algo": name,
            "d": a.d,
            "M": a.max_size,
            "seed": a.seed,
            "estimate": est.as_ref().ok(),
            "checks": checks,
        })
    )?;
    w.flush()?;
    Ok(status(ok))
}

fn offline(a: OfflineArgs) -> Result<ExitCode> {
    let inst = read_instance(&a.instance)?;
    let start = Instant::now();
    let sol = instance_opt_solution(&inst)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut w = sink(a.out.as_deref())?;
    writeln!(
        w,
        "{}",
        json!({
            "objects": inst.objects.len(),
            "opt": sol.size(),
            "points": sol.points,
            "nodes": sol.nodes,
            "wall_ms": wall_ms,
        })
    )?;
    w.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn read_reports(paths: &[PathBuf]) -> Result<Vec<TrialReport>> {
    let mut out = Vec::new();
    for p in paths {
        let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
        for (i, line) in BufReader::new(f).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(
                serde_json::from_str(&line)
                    .with_context(|| format!("{} line {}", p.display(), i + 1))?,
            );
        }
    }
    Ok(out)
}

fn plot_cmd(a: PlotArgs) -> Result<ExitCode> {
    let reports = read_reports(&a.reports)?;
    std::fs::create_dir_all(&a.out)?;
    for (axis, file) in [
        (plot::XAxis::MaxSize, "ratio_vs_M.svg"),
        (plot::XAxis::Points, "ratio_vs_n.svg"),
    ] {
        let series = plot::collect(&reports, axis);
        if series.is_empty() {
            eprintln!(
                "warning: no reports with a ratio and {}; skipping {file}",
                axis.label()
            );
            continue;
        }
        let path = a.out.join(file);
        plot::draw(&path, axis, &series)?;
        println!("{}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn check(a: CheckArgs) -> Result<ExitCode> {
    let results = run_all(a.samples, a.seed);
    let mut w = sink(a.out.as_deref())?;
    for r in &results {
        writeln!(w, "{}", serde_json::to_string(r)?)?;
    }
    w.flush()?;
    for r in results.iter().filter(|r| !r.passed) {
        eprintln!("{} failed: {}", r.name, r.detail.as_deref().unwrap_or(""));
    }
    Ok(status(results.iter().all(|r| r.passed)))
}

fn main() -> ExitCode {
    // usage errors exit 1 so that 2 only ever means a violation
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let res = match cli.cmd {
        Cmd::Run(a) => run(a),
        Cmd::Gen(a) => gen(a),
        Cmd::Adversary(a) => adversary(a),
        Cmd::Offline(a) => offline(a),
        Cmd::Plot(a) => plot_cmd(a),
        Cmd::Check(a) => check(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
