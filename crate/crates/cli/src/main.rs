mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use flatdeg::analysis::{alpha_with, bad_flat_count_with, ScanOptions, Status, VerificationReport};
use flatdeg::bounds::{codim_two_heuristic_log2, render_tables, resolve_bounds};
use flatdeg::corpus::{corpus, load_corpus_dir, witness_entry, CorpusEntry};
use flatdeg::flat::{count_flats, FlatSpace, DEFAULT_BUDGET};
use flatdeg::search::{search, SearchConfig, SearchStatus};
use flatdeg::{degree, exhaustive_g, mobius, nonlinearity, print_anf, verify_claim, Error, Metric};
use serde_json::{json, Value};

use input::FunctionInput;

const SCHEMA: &str = "flatdeg/1";

#[derive(Parser, Debug)]
#[command(name = "flatdeg", version, about = "Degree and nonlinearity of Boolean functions restricted to flats")]
struct Cli {
    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// More diagnostics on stderr (-v, -vv)
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MetricArg {
    #[value(alias = "deg")]
    Degree,
    #[value(alias = "nl")]
    Nonlinearity,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Degree => Metric::Degree,
            MetricArg::Nonlinearity => Metric::Nonlinearity,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum restricted degree or nonlinearity over all k-flats
    Analyze {
        #[command(flatten)]
        input: FunctionInput,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "degree")]
        metric: MetricArg,
        /// Also count flats that are bad for this threshold
        #[arg(long)]
        threshold: Option<u64>,
        /// Maximum number of flats to scan
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Always run the transform, even when the parity settles the degree
        #[arg(long)]
        no_fast_path: bool,
    },
    /// Hill-climb for a function without bad k-flats
    Search {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Degree must reach this value (nonlinearity must exceed it)
        #[arg(long, short = 'd')]
        threshold: u64,
        #[arg(long, value_enum, default_value = "degree")]
        metric: MetricArg,
        #[arg(long, default_value_t = 50_000)]
        steps: u64,
        #[arg(long, default_value_t = 20)]
        restarts: u64,
        #[arg(long)]
        seed: u64,
        /// Probability of flipping one point instead of two
        #[arg(long, default_value_t = 0.5)]
        p_one: f64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Record the objective after every step
        #[arg(long)]
        trace: bool,
    },
    /// Interval for g(n, k) or g'(n, k) with the bounds that produced it
    Bounds {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "degree")]
        metric: MetricArg,
    },
    /// Table of g(n, k) or g'(n, k) intervals
    Table {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = 6)]
        max_k: u32,
        #[arg(long, value_enum, default_value = "degree")]
        metric: MetricArg,
        #[arg(long, value_enum, default_value = "text")]
        format: TableFormat,
    },
    /// Count or list k-flats
    Flats {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Only flats containing this point
        #[arg(long)]
        through: Option<u32>,
        /// Print only the count
        #[arg(long)]
        count: bool,
        /// Stop listing after this many flats
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Canonical forms and basic invariants of a function
    Parse {
        #[command(flatten)]
        input: FunctionInput,
    },
    /// Check every claim of the corpus
    VerifyPaper {
        /// Read *.anf entries from this directory instead of the bundled ones
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
        /// Check only this entry
        #[arg(long)]
        entry: Option<String>,
    },
    /// g(n, k) or g'(n, k) by scanning every function
    Exhaust {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "degree")]
        metric: MetricArg,
        /// Allow n = 5
        #[arg(long = "override")]
        allow_override: bool,
    },
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Ok,
    ClaimFailed,
}

fn emit(json: bool, report: Value, text: impl FnOnce() -> String) -> Result<()> {
    let mut out = std::io::stdout().lock();
    if json {
        let mut report = report;
        report["schema"] = json!(SCHEMA);
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        write!(out, "{}", text())?;
    }
    Ok(())
}

fn analyze(
    json: bool,
    input: &FunctionInput,
    k: u32,
    metric: Metric,
    threshold: Option<u64>,
    budget: u64,
    fast: bool,
) -> Result<Verdict> {
    let f = input.resolve()?;
    let opts = ScanOptions {
        budget,
        parity_fast_path: fast,
    };
    log::info!("scanning {}-flats of a function in {} variables", k, f.tt.n());
    let start = Instant::now();
    let r = alpha_with(&f.tt, k, metric, opts)?;
    let bad = threshold
        .map(|t| bad_flat_count_with(&f.tt, k, metric, t, opts))
        .transpose()?;
    let elapsed = start.elapsed();
    let report = json!({
        "command": "analyze",
        "input": f.label,
        "n": f.tt.n(),
        "k": k,
        "metric": metric,
        "value": r.value,
        "witness": r.witness.to_text(),
        "flats_scanned": r.flats_scanned,
        "bad_flats": bad,
        "elapsed_ms": elapsed.as_millis() as u64,
    });
    emit(json, report, || {
        let mut s = format!(
            "input: {}\nn: {}\nk: {}\nmetric: {metric}\nvalue: {}\nwitness: {}\nflats scanned: {}\n",
            f.label,
            f.tt.n(),
            k,
            r.value,
            r.witness,
            r.flats_scanned
        );
        if let Some(b) = bad {
            s += &format!("bad flats (threshold {}): {} / {}\n", b.threshold, b.bad_count, b.total);
        }
        s + &format!("elapsed: {:.3} s\n", elapsed.as_secs_f64())
    })?;
    Ok(Verdict::Ok)
}

fn run_search(json: bool, cfg: SearchConfig) -> Result<Verdict> {
    log::info!(
        "searching n={} k={} {} threshold {} ({} restarts x {} steps, seed {})",
        cfg.n,
        cfg.k,
        cfg.metric,
        cfg.threshold,
        cfg.restarts,
        cfg.steps,
        cfg.seed
    );
    let out = search(&cfg)?;
    let anf = print_anf(&mobius(&out.function));
    let status = match out.status {
        SearchStatus::Found => "found",
        SearchStatus::Exhausted => "exhausted",
    };
    let report = json!({
        "command": "search",
        "config": cfg,
        "outcome": out,
        "anf": anf,
    });
    emit(json, report, || {
        let mut s = format!(
            "status: {status}\nbad flats: {}\nrestarts used: {}\nsteps used: {}\nrng: {}\ntt: {}\nanf: {anf}\n",
            out.bad_flats,
            out.restarts_used,
            out.steps_used,
            out.rng,
            out.function.to_hex()
        );
        for r in &out.restarts {
            s += &format!("restart {}: best {} after {} steps\n", r.restart, r.best_objective, r.steps);
        }
        s
    })?;
    Ok(Verdict::Ok)
}

fn bounds(json: bool, n: u32, k: u32, metric: Metric) -> Result<Verdict> {
    let r = resolve_bounds(n, k, metric)?;
    let heuristic = if metric == Metric::Degree && n == k + 2 && k >= 2 {
        codim_two_heuristic_log2(k).ok()
    } else {
        None
    };
    let report = json!({
        "command": "bounds",
        "result": r,
        "cell": r.cell(),
        "codim_two_heuristic_log2": heuristic,
    });
    emit(json, report, || {
        let name = if metric == Metric::Degree { "g" } else { "g'" };
        let mut s = format!("{name}({n}, {k}) in [{}, {}]  ({})\n", r.lo, r.hi, r.cell());
        for c in &r.provenance {
            let side = match c.side {
                flatdeg::bounds::Side::Lower => ">=",
                flatdeg::bounds::Side::Upper => "<=",
            };
            s += &format!("  {side} {:<4} {}\n", c.value, c.bound);
        }
        if let Some(h) = heuristic {
            s += &format!("log2 expected count of functions with no bad {k}-flat: {h:.2}\n");
        }
        s
    })?;
    Ok(Verdict::Ok)
}

fn table(json: bool, max_n: u32, max_k: u32, metric: Metric, format: TableFormat) -> Result<Verdict> {
    if max_k == 0 || max_n == 0 {
        return Err(Error::InvalidArgument("table dimensions must be positive".into()).into());
    }
    let t = render_tables(max_n, max_k, metric)?;
    let report = json!({
        "command": "table",
        "metric": metric,
        "max_n": max_n,
        "max_k": max_k,
        "rows": t.rows,
    });
    emit(json, report, || match format {
        TableFormat::Text => t.to_text(),
        TableFormat::Csv => t.to_csv(),
    })?;
    Ok(Verdict::Ok)
}

fn flats(
    json: bool,
    n: u32,
    k: u32,
    through: Option<u32>,
    count_only: bool,
    limit: Option<u64>,
    budget: u64,
) -> Result<Verdict> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")).into());
    }
    if let Some(p) = through {
        if n < 32 && p >> n != 0 {
            return Err(Error::IndexOutOfRange { index: p as u64, n }.into());
        }
    }
    let total = match through {
        None => count_flats(n, k)?.count,
        Some(_) => flatdeg::flat::count_subspaces(n, k)?,
    };
    if count_only {
        let report = json!({"command": "flats", "n": n, "k": k, "through": through, "count": total.to_string()});
        emit(json, report, || format!("{total}\n"))?;
        return Ok(Verdict::Ok);
    }
    let limit = limit.unwrap_or(u64::MAX);
    let listed: Vec<String> = match through {
        None => FlatSpace::new(n, k, budget)?
            .iter()
            .take(limit.min(usize::MAX as u64) as usize)
            .map(|f| f.to_text())
            .collect(),
        Some(p) => FlatSpace::for_point_walks(n, k, budget)?
            .through(p)
            .take(limit.min(usize::MAX as u64) as usize)
            .map(|f| f.to_text())
            .collect(),
    };
    let report = json!({
        "command": "flats",
        "n": n,
        "k": k,
        "through": through,
        "count": total.to_string(),
        "flats": listed,
    });
    emit(json, report, || listed.iter().map(|l| format!("{l}\n")).collect())?;
    Ok(Verdict::Ok)
}

fn parse(json: bool, input: &FunctionInput) -> Result<Verdict> {
    let f = input.resolve()?;
    let anf = print_anf(&mobius(&f.tt));
    let nl = (f.tt.n() > 0).then(|| nonlinearity(&f.tt)).transpose()?;
    let report = json!({
        "command": "parse",
        "n": f.tt.n(),
        "tt": f.tt.to_hex(),
        "anf": anf,
        "degree": degree(&f.tt),
        "weight": f.tt.weight(),
        "nonlinearity": nl,
    });
    emit(json, report, || {
        let mut s = format!(
            "n: {}\ntt: {}\nanf: {anf}\ndegree: {}\nweight: {}\n",
            f.tt.n(),
            f.tt.to_hex(),
            degree(&f.tt),
            f.tt.weight()
        );
        if let Some(nl) = nl {
            s += &format!("nonlinearity: {nl}\n");
        }
        s
    })?;
    Ok(Verdict::Ok)
}

/// Witness functions on hyperplanes checked alongside the corpus.
const WITNESS_RANGE: std::ops::RangeInclusive<u32> = 3..=9;

fn verify(json: bool, dir: Option<&PathBuf>, entry: Option<&str>) -> Result<Verdict> {
    let mut entries: Vec<CorpusEntry> = match dir {
        Some(d) => load_corpus_dir(d)?,
        None => corpus(),
    };
    if dir.is_none() {
        for n in WITNESS_RANGE {
            entries.push(witness_entry(n)?);
        }
    }
    if let Some(id) = entry {
        entries.retain(|e| e.id == id);
        if entries.is_empty() {
            return Err(Error::Resource(format!("no corpus entry {id:?}")).into());
        }
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    for e in &entries {
        log::info!("verifying {}", e.id);
        reports.push(verify_claim(e));
    }
    let passed = reports.iter().all(|r| r.passed());
    let records: Vec<_> = reports.iter().flat_map(|r| r.records.iter()).collect();
    let report = json!({
        "command": "verify-paper",
        "passed": passed,
        "records": records,
    });
    emit(json, report, || {
        let mut s = String::new();
        for r in &records {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            s += &format!("{status}  {:<18} {:<44} expected {:<12} computed {}\n", r.id, r.claim, r.expected, r.computed);
        }
        let ok = records.iter().filter(|r| r.status == Status::Pass).count();
        s + &format!("{ok} / {} claims passed\n", records.len())
    })?;
    Ok(if passed { Verdict::Ok } else { Verdict::ClaimFailed })
}

fn exhaust(json: bool, n: u32, k: u32, metric: Metric, allow_override: bool) -> Result<Verdict> {
    log::info!("scanning every function in {n} variables");
    let r = exhaustive_g(n, k, metric, allow_override)?;
    let anf = print_anf(&mobius(&r.maximizer));
    let report = json!({
        "command": "exhaust",
        "n": n,
        "k": k,
        "metric": metric,
        "value": r.value,
        "maximizer": r.maximizer.to_hex(),
        "maximizer_anf": anf,
        "functions_checked": r.functions_checked,
    });
    emit(json, report, || {
        let name = if metric == Metric::Degree { "g" } else { "g'" };
        format!(
            "{name}({n}, {k}) = {}\nmaximizer: {} ({anf})\nfunctions checked: {}\n",
            r.value,
            r.maximizer.to_hex(),
            r.functions_checked
        )
    })?;
    Ok(Verdict::Ok)
}

fn run(cli: Cli) -> Result<Verdict> {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let json = cli.json;
    match cli.command {
        Command::Analyze {
            input,
            k,
            metric,
            threshold,
            budget,
            no_fast_path,
        } => analyze(json, &input, k, metric.into(), threshold, budget, !no_fast_path),
        Command::Search {
            n,
            k,
            threshold,
            metric,
            steps,
            restarts,
            seed,
            p_one,
            budget,
            trace,
        } => {
            let mut cfg = SearchConfig::new(n, k, metric.into(), threshold, seed);
            cfg.steps = steps;
            cfg.restarts = restarts;
            cfg.p_one = p_one;
            cfg.budget = budget;
            cfg.trace = trace;
            cfg.validate()?;
            run_search(json, cfg)
        }
        Command::Bounds { n, k, metric } => bounds(json, n, k, metric.into()),
        Command::Table {
            max_n,
            max_k,
            metric,
            format,
        } => table(json, max_n, max_k, metric.into(), format),
        Command::Flats {
            n,
            k,
            through,
            count,
            limit,
            budget,
        } => flats(json, n, k, through, count, limit, budget),
        Command::Parse { input } => parse(json, &input),
        Command::VerifyPaper { corpus_dir, entry } => verify(json, corpus_dir.as_ref(), entry.as_deref()),
        Command::Exhaust {
            n,
            k,
            metric,
            allow_override,
        } => exhaust(json, n, k, metric.into(), allow_override),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(e) = err.downcast_ref::<Error>() {
        return match e {
            Error::BudgetExceeded { .. } => 3,
            Error::Resource(_) => 4,
            _ => 2,
        };
    }
    if err.downcast_ref::<std::io::Error>().is_some() {
        return 4;
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .target(env_logger::Target::Stderr)
        .init();
    match run(cli) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::ClaimFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
