//! Command-line front end: argument parsing, command dispatch, and the
//! sweep driver shared with the acceptance suite.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use tropbn::chowring::{
    chern_number_g22, chern_number_general, harris_tu, BnData, ChernRootMonomial, ChowExpr, HarrisTuForm,
};
use tropbn::graph::{integral_chain, ChainOfLoops, DEFAULT_FACTOR};
use tropbn::independence::{
    build_independence, pair_indices, pair_label, pairwise_sums, verify_independence, CertificateJson,
    TropicalCombination, Verification,
};
use tropbn::slopes::{run_g23, run_rho1, slope_report, PipelineReport};
use tropbn::tableaux::{
    block_boundaries, count_tableaux, lingering_loops, multiplicities_and_weights, slope_table, tableau_seed,
    vertex_avoiding_divisor, Enumerator, Tableau,
};
use tropbn::Rational;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input. Exit code 2.
    #[error("{0}")]
    Usage(String),
    /// The input was fine but did not verify. Exit code 1; the payload is
    /// still printed on stdout.
    #[error("{message}")]
    Failed { message: String, payload: Value },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed { .. } => 1,
        }
    }
}

impl From<tropbn::Error> for CliError {
    fn from(e: tropbn::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "tropbn", version, about = "Tropical independence certificates and divisor slopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count, list or analyze rectangular tableaux.
    #[command(subcommand)]
    Tableaux(TableauxCmd),
    /// Build, verify or sweep independence certificates.
    #[command(subcommand)]
    Indep(IndepCmd),
    /// Harris–Tu values and Chern numbers.
    #[command(subcommand)]
    Chow(ChowCmd),
    /// Virtual divisor class and slope.
    Slope(SlopeArgs),
}

#[derive(Debug, Subcommand)]
pub enum TableauxCmd {
    Count {
        #[arg(long)]
        rows: u64,
        #[arg(long)]
        cols: u64,
        #[arg(long)]
        entries: u64,
    },
    Enumerate {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long)]
        entries: u32,
        /// Stop after this many tableaux.
        #[arg(long, default_value_t = 1000)]
        limit: u64,
    },
    Analyze {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum IndepCmd {
    Build {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FACTOR)]
        factor: i64,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub genus: u32,
    /// Random sample of this many tableaux instead of all of them.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to TROPBN_JOBS, then to all cores.
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_FACTOR)]
    pub factor: i64,
    /// Report progress on stderr.
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Subcommand)]
pub enum ChowCmd {
    HarrisTu {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        /// Exponents of the Chern roots, comma separated.
        #[arg(long, value_delimiter = ',')]
        exp: Vec<u32>,
        /// Use the uncorrected denominator.
        #[arg(long)]
        printed: bool,
    },
    /// Top Chern number of an expression in theta and c1, c2, ...
    Eval {
        #[arg(long)]
        expr: String,
        /// Evaluate on W^{2s}_{2s²+2s+1} of a genus 2s²+s curve; without it,
        /// on W^6_26 of a genus-22 curve.
        #[arg(long)]
        s: Option<u32>,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SlopeArgs {
    /// 23, or any genus 2s²+s+1 with s ≥ 2.
    #[arg(long)]
    pub genus: Option<u32>,
    #[arg(long)]
    pub s: Option<u32>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

pub fn run(cli: Cli) -> CliResult<Value> {
    match cli.command {
        Command::Tableaux(cmd) => tableaux(cmd),
        Command::Indep(cmd) => indep(cmd),
        Command::Chow(cmd) => chow(cmd),
        Command::Slope(args) => slope(args),
    }
}

fn tableaux(cmd: TableauxCmd) -> CliResult<Value> {
    match cmd {
        TableauxCmd::Count { rows, cols, entries } => {
            let n = count_tableaux(rows, cols, entries)?;
            Ok(serde_json::from_str(&n.to_string()).expect("an integer is JSON"))
        }
        TableauxCmd::Enumerate { rows, cols, entries, limit } => {
            let e = Enumerator::new(rows, cols, entries)?;
            let hi = e.total().min(limit as u128);
            let mut out = Vec::new();
            e.for_each_in_range(0, hi, |_, t| out.push(to_value(t.rows())));
            Ok(Value::Array(out))
        }
        TableauxCmd::Analyze { file } => {
            let t: Tableau = read_json(&file)?;
            let sv = slope_table(&t);
            let mu = multiplicities_and_weights(&sv, t.g(), t.r(), t.d());
            let mut out = json!({
                "lingering": lingering_loops(&t),
                "rho": t.rho(),
                "slopes": sv,
                "multiplicities": mu,
            });
            if let Ok(b) = block_boundaries(&t) {
                for (k, v) in [("z", b.z), ("zp", b.zp), ("b", b.b), ("bp", b.bp)] {
                    out[k] = json!(v);
                }
            }
            Ok(out)
        }
    }
}

fn chain_for(g: u32, factor: i64) -> CliResult<Arc<ChainOfLoops>> {
    Ok(Arc::new(integral_chain(g as usize, factor)?))
}

fn indep(cmd: IndepCmd) -> CliResult<Value> {
    match cmd {
        IndepCmd::Build { tableau, seed, factor, out } => {
            let t: Tableau = read_json(&tableau)?;
            let chain = chain_for(t.g(), factor)?;
            let data = vertex_avoiding_divisor(&t, chain.clone(), seed)?;
            let cert = build_independence(&data).map_err(|e| CliError::Failed {
                message: format!("builder failed: {e}"),
                payload: json!({"error": e.to_string()}),
            })?;
            let mut j = cert.to_json();
            j.tableau = Some(t);
            j.seed = Some(seed);
            j.chain = Some((*chain).clone());
            let v = to_value(&j);
            match out {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string_pretty(&v).expect("serializes"))
                        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                    Ok(json!({"written": path}))
                }
                None => Ok(v),
            }
        }
        IndepCmd::Verify { cert } => {
            let j: CertificateJson = read_json(&cert)?;
            verify_certificate(&j)
        }
        IndepCmd::Sweep(args) => {
            let report = sweep(&args)?;
            let v = to_value(&report);
            if report.failures.is_empty() {
                Ok(v)
            } else {
                Err(CliError::Failed { message: format!("{} tableaux failed", report.failures.len()), payload: v })
            }
        }
    }
}

/// Rebuilds the functions from the tableau, seed and chain recorded in the
/// certificate, then checks both the coefficients and the stored witnesses.
pub fn verify_certificate(j: &CertificateJson) -> CliResult<Value> {
    let (Some(t), Some(seed), Some(chain)) = (&j.tableau, j.seed, &j.chain) else {
        return Err(CliError::Usage("certificate lacks tableau, seed or chain".into()));
    };
    let chain = Arc::new(chain.clone());
    let data = vertex_avoiding_divisor(t, chain.clone(), seed)?;
    let funcs = pairwise_sums(&data)?;
    let labels: Vec<String> = pair_indices(t.r() as usize).into_iter().map(pair_label).collect();
    let mut coefficients = Vec::with_capacity(labels.len());
    for l in &labels {
        let c = j.coefficients.get(l).ok_or_else(|| CliError::Usage(format!("no coefficient for {l}")))?;
        coefficients.push(c.clone());
    }
    let tc = TropicalCombination::new(funcs, coefficients)?;
    let mut bad_witness = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let Some(w) = j.witnesses.get(l) else {
            bad_witness.push(l.clone());
            continue;
        };
        let p = chain.point(w.edge, w.offset.clone())?;
        let vi = &tc.functions()[i].value_at(&p) + &tc.coefficients()[i];
        let unique = (0..tc.len()).all(|k| k == i || vi < &tc.functions()[k].value_at(&p) + &tc.coefficients()[k]);
        if !unique {
            bad_witness.push(l.clone());
        }
    }
    let failing: Vec<String> = match verify_independence(&tc) {
        Verification::Independent(_) => Vec::new(),
        Verification::Failed(ix) => ix.into_iter().map(|i| labels[i].clone()).collect(),
    };
    let payload = json!({"verified": failing.is_empty() && bad_witness.is_empty(), "failing": failing, "bad_witnesses": bad_witness});
    if failing.is_empty() && bad_witness.is_empty() {
        Ok(payload)
    } else {
        Err(CliError::Failed { message: "certificate does not verify".into(), payload })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepFailure {
    pub rank: String,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepReport {
    pub genus: u32,
    pub total: u64,
    pub verified: u64,
    pub failures: Vec<SweepFailure>,
    /// Tableaux whose slope table broke an invariant (also listed in failures).
    pub invariant_failures: u64,
    pub wall_time: f64,
    pub seed: u64,
    pub jobs: usize,
    pub sample: Option<usize>,
}

/// Everything checked for one tableau: slope-table invariants, the
/// vertex-avoiding divisor, and a verified independence.
pub fn check_tableau(t: &Tableau, chain: &Arc<ChainOfLoops>, run_seed: u64) -> Result<(), (bool, String)> {
    let sv = slope_table(t);
    let mu = multiplicities_and_weights(&sv, t.g(), t.r(), t.d());
    if mu.total() != t.rho() || !sv.rows_increasing() || !sv.lattice_steps_hold(&lingering_loops(t)) {
        return Err((true, format!("slope invariants: total {} vs ρ {}", mu.total(), t.rho())));
    }
    let data = vertex_avoiding_divisor(t, chain.clone(), tableau_seed(run_seed, t)).map_err(|e| (false, e.to_string()))?;
    data.check().map_err(|e| (false, e.to_string()))?;
    let cert = build_independence(&data).map_err(|e| (false, e.to_string()))?;
    if !cert.witnesses_hold() {
        return Err((false, "witness check failed".into()));
    }
    Ok(())
}

pub fn default_jobs(flag: Option<usize>) -> usize {
    flag.or_else(|| std::env::var("TROPBN_JOBS").ok().and_then(|s| s.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .max(1)
}

pub fn sweep(args: &SweepArgs) -> CliResult<SweepReport> {
    if !(21..=23).contains(&args.genus) {
        return Err(CliError::Usage(format!("sweeps cover genus 21, 22 or 23, not {}", args.genus)));
    }
    let jobs = default_jobs(args.jobs);
    let start = Instant::now();
    let e = Enumerator::rank_six(args.genus)?;
    let chain = chain_for(args.genus, args.factor)?;
    let ranges: Vec<(u128, u128)> = match args.sample {
        Some(n) => {
            let mut ranks = e.sample_ranks(n, args.seed);
            ranks.sort_unstable();
            ranks.into_iter().map(|r| (r, r + 1)).collect()
        }
        None => {
            const CHUNK: u128 = 500;
            (0..e.total().div_ceil(CHUNK)).map(|i| (i * CHUNK, ((i + 1) * CHUNK).min(e.total()))).collect()
        }
    };
    let expected: u128 = ranges.iter().map(|(a, b)| b - a).sum();
    let done = AtomicU64::new(0);
    let step = (expected as u64 / 100).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let per_range: Vec<(u64, Vec<SweepFailure>, u64)> = pool.install(|| {
        ranges
            .par_iter()
            .map(|&(lo, hi)| {
                let (mut ok, mut fails, mut inv) = (0u64, Vec::new(), 0u64);
                e.for_each_in_range(lo, hi, |rank, t| {
                    match check_tableau(t, &chain, args.seed) {
                        Ok(()) => ok += 1,
                        Err((invariant, reason)) => {
                            inv += invariant as u64;
                            fails.push(SweepFailure { rank: rank.to_string(), reason });
                        }
                    }
                    let n = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if args.progress && n.is_multiple_of(step) {
                        eprintln!("{n}/{expected} ({:.0} s)", start.elapsed().as_secs_f64());
                    }
                });
                (ok, fails, inv)
            })
            .collect()
    });
    let mut report = SweepReport {
        genus: args.genus,
        total: 0,
        verified: 0,
        failures: Vec::new(),
        invariant_failures: 0,
        wall_time: 0.0,
        seed: args.seed,
        jobs,
        sample: args.sample,
    };
    for (ok, fails, inv) in per_range {
        report.verified += ok;
        report.total += ok + fails.len() as u64;
        report.invariant_failures += inv;
        report.failures.extend(fails);
    }
    report.wall_time = start.elapsed().as_secs_f64();
    Ok(report)
}

fn chow(cmd: ChowCmd) -> CliResult<Value> {
    match cmd {
        ChowCmd::HarrisTu { g, r, d, exp, printed } => {
            let m = ChernRootMonomial::new(BnData::new(g, r, d), &exp)?;
            let form = if printed { HarrisTuForm::Printed } else { HarrisTuForm::Corrected };
            let v = harris_tu(&m, form);
            if v.clamped {
                eprintln!("note: a factorial argument was negative; value taken as 0");
            }
            Ok(json!({"value": v.value, "theta": m.theta_power(), "clamped": v.clamped}))
        }
        ChowCmd::Eval { expr, s } => {
            let e: ChowExpr = expr.parse()?;
            let value = match s {
                Some(s) => chern_number_general(s, &e)?,
                None => chern_number_g22(&e)?,
            };
            Ok(json!({ "value": value }))
        }
    }
}

/// s with 2s²+s+1 = g, if any.
fn rho_one_parameter(g: u32) -> Option<u32> {
    (2..64).find(|s| 2 * s * s + s + 1 == g)
}

pub fn slope_pipeline(args: &SlopeArgs) -> CliResult<PipelineReport> {
    match (args.genus, args.s) {
        (Some(23), None) => Ok(run_g23()?),
        (Some(g), None) => match rho_one_parameter(g) {
            Some(s) => Ok(run_rho1(s)?),
            None => Err(CliError::Usage(format!("no pipeline for genus {g}; use 23 or 2s²+s+1"))),
        },
        (None, Some(s)) => Ok(run_rho1(s)?),
        _ => Err(CliError::Usage("give exactly one of --genus and --s".into())),
    }
}

fn slope(args: SlopeArgs) -> CliResult<Value> {
    let report = slope_pipeline(&args)?;
    for c in report.failed_checks() {
        for m in &c.mismatches {
            eprintln!("{}: {} computed {} recorded {}", c.stage, m.term, m.computed, m.recorded);
        }
    }
    let s = slope_report(&report.class, report.genus)?;
    let mut v = to_value(&s);
    v["mismatched_stages"] = json!(report.failed_checks().map(|c| c.stage.clone()).collect::<Vec<_>>());
    Ok(v)
}

/// Renders a value the way the binary prints it.
pub fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("serializes")
}

pub fn rational_field(v: &Value, key: &str) -> Option<Rational> {
    serde_json::from_value(v.get(key)?.clone()).ok()
}
