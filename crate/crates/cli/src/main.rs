mod config;
mod output;
mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use mirec::base::ParameterSet;
use mirec::multi::MultiIndexedFamily;
use mirec::recvar::{compare_costs, generate};
use mirec::report::{Check, Report};
use mirec::Rational;
use rayon::prelude::*;
use serde::Serialize;

use config::JobConfig;
use output::{csv, json, rat, write_out, Format, GenOutput, Instance, PolyRow, VerifyOutput, SCHEMA};
use suites::Suite;

/// Exact construction and verification of multi-indexed Racah and q-Racah
/// polynomials.
#[derive(Parser, Debug)]
#[command(name = "mirec", version)]
pub struct Cli {
    /// TOML job file; flags override its keys
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// R or qR
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Comma-separated rationals: b,c,d (finite) or a,b,c,d
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub params: Option<String>,
    #[arg(long, global = true)]
    pub q: Option<String>,
    /// Size of the finite system
    #[arg(long = "N", global = true)]
    pub size: Option<u32>,
    /// Treat a as a generic rational instead of −N / q^{−N}
    #[arg(long, global = true)]
    pub indeterminate: bool,
    /// Comma-separated index set
    #[arg(long = "D", global = true)]
    pub d: Option<String>,
    /// η-coefficients of Y (lowest first)
    #[arg(long = "Y", global = true, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// η-coefficients of an explicit X, bypassing X = I[Ξ_D Y]
    #[arg(long = "X", global = true, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, global = true)]
    pub nmax: Option<usize>,
    /// family, var, const, closure, bridge or all
    #[arg(long, global = true)]
    pub suite: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sweep axis, `name=v1,v2,…`; repeatable
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub grid: Vec<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone, Copy)]
pub enum Command {
    /// Polynomial coefficient tables
    Gen,
    /// Run a verification suite on one instance
    Verify,
    /// Run a suite over a parameter grid
    Sweep,
    /// Determinant vs recurrence generation cost
    Bench,
}

/// Configuration or mode errors; exit status 2.
#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl fmt::Display) -> anyhow::Error {
    anyhow!(Usage(e.to_string()))
}

fn lib_err(e: mirec::Error) -> anyhow::Error {
    anyhow!("{}: {e}", e.code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("MIREC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let job = JobConfig::resolve(cli).map_err(|e| usage(format!("{e:#}")))?;
    match cli.command {
        Command::Gen => gen(cli, &job),
        Command::Verify => verify(cli, &job),
        Command::Sweep => sweep(cli, &job),
        Command::Bench => bench(cli, &job),
    }
}

fn suite_of(cli: &Cli, default: Suite) -> Result<Suite> {
    let text = match &cli.suite {
        Some(s) => Some(s.clone()),
        None => match &cli.config {
            Some(p) => config::FileConfig::load(p).map_err(usage)?.suite,
            None => None,
        },
    };
    text.map_or(Ok(default), |s| s.parse().map_err(usage))
}

fn gen(cli: &Cli, job: &JobConfig) -> Result<bool> {
    let lam = job.lambda().map_err(usage)?;
    let polys = match lam.size() {
        Some(n) => MultiIndexedFamily::build(&lam, &job.set, job.nmax.min(n as usize)).map_err(lib_err)?.polys().to_vec(),
        None => generate(&job.set, &lam, job.nmax).map_err(lib_err)?,
    };
    let rows: Vec<PolyRow> =
        polys.iter().enumerate().map(|(n, p)| PolyRow { n, coeffs: output::coeffs(p) }).collect();
    let text = match cli.format {
        Format::Json => json(&GenOutput {
            schema: SCHEMA,
            family: lam.family().to_string(),
            parameters: Instance::new(&lam, &job.set, None),
            set: job.set.as_slice().to_vec(),
            polynomials: rows,
        })?,
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .flat_map(|r| {
                    r.coeffs.iter().enumerate().map(move |(k, c)| vec![r.n.to_string(), k.to_string(), c.clone()])
                })
                .collect();
            csv(&["n", "k", "coeff"], &body)
        }
    };
    write_out(cli.out.as_deref(), &text)?;
    Ok(true)
}

fn run_suites(suite: Suite, lam: &ParameterSet, job: &JobConfig) -> Report {
    let inst = suites::Instance { lam, set: &job.set, y: &job.y, x: job.x.as_ref(), nmax: job.nmax };
    let parts: Vec<Report> = suite.expand(lam, &job.set).into_par_iter().map(|s| suites::run(s, &inst)).collect();
    let mut rep = Report::new();
    for p in parts {
        rep.extend(p);
    }
    rep
}

fn checks_csv(checks: &[Check]) -> String {
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| vec![c.id.clone(), c.passed.to_string(), c.witness.clone().unwrap_or_default()])
        .collect();
    csv(&["id", "passed", "witness"], &rows)
}

fn verify(cli: &Cli, job: &JobConfig) -> Result<bool> {
    let suite = suite_of(cli, Suite::All)?;
    let lam = job.lambda().map_err(usage)?;
    if let Some(msg) = suite.mode_error(&lam) {
        return Err(usage(msg));
    }
    let rep = run_suites(suite, &lam, job);
    let passed = rep.all_passed();
    let text = match cli.format {
        Format::Json => json(&VerifyOutput {
            schema: SCHEMA,
            command: "verify",
            suite: suite.to_string(),
            instance: Instance::new(&lam, &job.set, job.x.as_ref()),
            passed,
            checks: rep.checks,
        })?,
        Format::Csv => checks_csv(&rep.checks),
    };
    write_out(cli.out.as_deref(), &text)?;
    Ok(passed)
}

#[derive(Serialize)]
struct SweepRecord {
    index: usize,
    instance: BTreeMap<String, String>,
    status: &'static str,
    failures: Vec<Check>,
    range_issues: Vec<String>,
    millis: u128,
}

#[derive(Serialize)]
struct SweepOutput {
    schema: &'static str,
    command: &'static str,
    family: String,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    size: Option<u32>,
    #[serde(rename = "D")]
    set: Vec<usize>,
    suite: String,
    axes: BTreeMap<String, Vec<String>>,
    records: Vec<SweepRecord>,
    counterexamples: Vec<Counterexample>,
}

#[derive(Serialize)]
struct Counterexample {
    index: usize,
    instance: Instance,
    #[serde(rename = "Y")]
    y: Vec<String>,
    nmax: usize,
    failures: Vec<Check>,
}

/// Baseline values of the named parameters before the grid is applied.
fn sweep_base(job: &JobConfig) -> Result<BTreeMap<String, Rational>> {
    let mut base = BTreeMap::new();
    let p = &job.params;
    let names: &[&str] = match (job.size, p.len()) {
        (Some(_), 3) => &["b", "c", "d"],
        (_, 4) => &["a", "b", "c", "d"],
        (None, 3) if job.grid.contains_key("a") => &["b", "c", "d"],
        (None, 3) => {
            base.insert("a".to_string(), job.lambda().map_err(usage)?.a().clone());
            &["b", "c", "d"]
        }
        (_, k) => return Err(usage(format!("expected 3 or 4 parameters, got {k}"))),
    };
    for (name, v) in names.iter().zip(p) {
        base.insert(name.to_string(), v.clone());
    }
    base.insert("q".into(), job.q.clone());
    if job.size.is_some() && job.grid.contains_key("a") {
        return Err(usage("a is fixed by N in finite mode and cannot be swept"));
    }
    Ok(base)
}

fn instance_lambda(job: &JobConfig, v: &BTreeMap<String, Rational>) -> mirec::Result<ParameterSet> {
    let g = |k: &str| v[k].clone();
    match job.size {
        Some(n) => ParameterSet::finite(job.family, n, g("b"), g("c"), g("d"), g("q")),
        None => ParameterSet::new(job.family, g("a"), g("b"), g("c"), g("d"), g("q")),
    }
}

fn sweep(cli: &Cli, job: &JobConfig) -> Result<bool> {
    if job.grid.is_empty() {
        return Err(usage("sweep needs at least one --grid axis"));
    }
    let suite = suite_of(cli, Suite::Const)?;
    let base = sweep_base(job)?;
    let mut points = vec![base];
    for (axis, vals) in &job.grid {
        points = points
            .into_iter()
            .flat_map(|p| {
                vals.iter().map(move |v| {
                    let mut q = p.clone();
                    q.insert(axis.clone(), v.clone());
                    q
                })
            })
            .collect();
    }

    let results: Vec<(SweepRecord, Option<Counterexample>)> = points
        .par_iter()
        .enumerate()
        .map(|(index, vals)| {
            let t = Instant::now();
            let instance: BTreeMap<String, String> = vals.iter().map(|(k, v)| (k.clone(), rat(v))).collect();
            let lam = match instance_lambda(job, vals) {
                Ok(l) => l,
                Err(e) => {
                    let rep = suites::error_report(suite, &e);
                    let rec = SweepRecord {
                        index,
                        instance,
                        status: "error",
                        failures: rep.checks,
                        range_issues: vec![],
                        millis: t.elapsed().as_millis(),
                    };
                    return (rec, None);
                }
            };
            let range_issues =
                if job.set.is_empty() { lam.range_issues() } else { lam.multi_range_issues(job.set.max_index()) };
            let rep = match suite.mode_error(&lam) {
                Some(msg) => {
                    let mut r = Report::new();
                    r.fail(format!("{suite}.error"), msg);
                    r
                }
                None => run_suites(suite, &lam, job),
            };
            let failures: Vec<Check> = rep.failures().cloned().collect();
            let status = match (range_issues.is_empty(), failures.is_empty()) {
                (false, _) => "range-advisory",
                (true, true) => "pass",
                (true, false) => "fail",
            };
            let cex = (status == "fail").then(|| Counterexample {
                index,
                instance: Instance::new(&lam, &job.set, job.x.as_ref()),
                y: output::coeffs(&job.y),
                nmax: job.nmax,
                failures: failures.clone(),
            });
            let rec = SweepRecord { index, instance, status, failures, range_issues, millis: t.elapsed().as_millis() };
            (rec, cex)
        })
        .collect();

    let ok = results.iter().all(|(r, _)| r.status != "fail" && r.status != "error");
    let (records, cexs): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let text = match cli.format {
        Format::Json => json(&SweepOutput {
            schema: SCHEMA,
            command: "sweep",
            family: job.family.to_string(),
            size: job.size,
            set: job.set.as_slice().to_vec(),
            suite: suite.to_string(),
            axes: job.grid.iter().map(|(k, v)| (k.clone(), v.iter().map(rat).collect())).collect(),
            records,
            counterexamples: cexs.into_iter().flatten().collect(),
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    let get = |k: &str| r.instance.get(k).cloned().unwrap_or_default();
                    let ids: Vec<&str> = r.failures.iter().map(|c| c.id.as_str()).collect();
                    vec![
                        r.index.to_string(),
                        get("a"),
                        get("b"),
                        get("c"),
                        get("d"),
                        get("q"),
                        r.status.to_string(),
                        ids.join(";"),
                        r.millis.to_string(),
                    ]
                })
                .collect();
            csv(&["index", "a", "b", "c", "d", "q", "status", "failures", "millis"], &rows)
        }
    };
    write_out(cli.out.as_deref(), &text)?;
    Ok(ok)
}

#[derive(Serialize)]
struct BenchOutput {
    schema: &'static str,
    command: &'static str,
    instance: Instance,
    rows: Vec<mirec::recvar::CostRow>,
}

fn bench(cli: &Cli, job: &JobConfig) -> Result<bool> {
    let lam = job.lambda().map_err(usage)?;
    if lam.is_finite() {
        return Err(usage("bench requires --indeterminate"));
    }
    let rows = compare_costs(&job.set, &lam, job.nmax).map_err(lib_err)?;
    let text = match cli.format {
        Format::Csv => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let m = serde_json::to_value(r.method)?.as_str().unwrap_or_default().to_string();
                    Ok(vec![m, r.n.to_string(), r.muls.to_string(), r.nanos.to_string()])
                })
                .collect::<Result<_>>()?;
            csv(&["method", "n", "muls", "nanos"], &body)
        }
        Format::Json => json(&BenchOutput {
            schema: SCHEMA,
            command: "bench",
            instance: Instance::new(&lam, &job.set, None),
            rows,
        })?,
    };
    write_out(cli.out.as_deref(), &text)?;
    Ok(true)
}
