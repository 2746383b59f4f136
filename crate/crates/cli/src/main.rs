//! `lfam`: construct, count, check and search L-intersecting families of
//! induced pattern copies.
//!
//! Every command prints one JSON document on stdout. Exit codes:
//! 0 success / property holds, 1 property fails, 2 parse error,
//! 3 budget exhausted, 4 invalid parameters.

mod construct;
mod input;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lfam::copies::{copy_sets, count_copies, CountMode};
use lfam::factorization::{check_flawless, f_of_n, FSearchOptions, Matching, OneFactorization};
use lfam::family::IntersectionSpec;
use lfam::search::{check_graph, phi_exact, psi_exact, verify_construction, PhiOptions, PsiOptions};
use lfam::{io, Graph};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use construct::{Built, Params};
use input::{load_graph, load_pattern, read_file, sha256_hex, Failure};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILS: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_INVALID: u8 = 4;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "lfam", version, about = "L-intersecting families of induced subgraph copies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction; writes <stem>.g6 and <stem>.json.
    Construct(ConstructArgs),
    /// Count copies of a pattern.
    Count(CountArgs),
    /// Check that the induced pattern copies form an L-intersecting family.
    Check(CheckArgs),
    /// Exact maximum pattern count over all n-vertex graphs.
    Psi(PsiArgs),
    /// Exact maximum L-intersecting r-uniform family on n points.
    Phi(PhiArgs),
    /// Largest k with a flawless 1-factorization of some k-regular graph on n vertices.
    Fsearch(FsearchArgs),
    /// Re-validate a flawless 1-factorization certificate.
    Factcheck(FactcheckArgs),
    /// Build a construction and verify its count and intersection pattern.
    Report(ReportArgs),
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct ConstructArgs {
    #[command(flatten)]
    #[serde(flatten)]
    params: Params,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// File stem (default: the construction name).
    #[arg(long)]
    stem: Option<String>,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct CountArgs {
    /// Graph file (graph6 or edge list) or inline graph6.
    #[arg(long)]
    graph: String,
    /// C_r, K_r, a graph file, or inline graph6.
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value = "induced")]
    mode: CountMode,
    /// Also list the vertex sets spanned by the copies.
    #[arg(long)]
    list: bool,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct CheckArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    pattern: String,
    /// Uniformity; defaults to the pattern order and must equal it.
    #[arg(long)]
    r: Option<usize>,
    /// Allowed intersection sizes, comma separated.
    #[arg(long = "L", value_delimiter = ',', required = true)]
    #[serde(rename = "L")]
    l: Vec<usize>,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct PsiArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long = "L", value_delimiter = ',', required = true)]
    #[serde(rename = "L")]
    l: Vec<usize>,
    /// Defaults to C_r.
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long, default_value = "induced")]
    mode: CountMode,
    #[arg(long, default_value_t = 0)]
    min_core: usize,
    /// Skip extensions of graphs whose copies already violate L.
    #[arg(long)]
    prune: bool,
    /// Maximum number of complete graphs to evaluate.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 1)]
    witnesses: usize,
    #[arg(long, default_value_t = 9)]
    max_order: usize,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct PhiArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    #[arg(long = "L", value_delimiter = ',', required = true)]
    #[serde(rename = "L")]
    l: Vec<usize>,
    /// Node cap per branch-and-bound task.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Largest allowed C(n, r).
    #[arg(long, default_value_t = 2000)]
    max_subsets: usize,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct FsearchArgs {
    n: usize,
    #[arg(long)]
    kmax: Option<usize>,
    /// Node cap for each host's factorization search.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Also write the certificate to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct FactcheckArgs {
    file: PathBuf,
}

#[derive(Args, Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportArgs {
    #[command(flatten)]
    #[serde(flatten)]
    params: Params,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct RunReport {
    schema_version: u32,
    tool: &'static str,
    version: &'static str,
    command: Vec<String>,
    /// SHA-256 of each input, keyed by flag name.
    inputs: BTreeMap<String, String>,
    settings: Value,
    elapsed_ms: u128,
}

struct Output {
    body: Value,
    inputs: BTreeMap<String, String>,
    status: u8,
}

impl Output {
    fn new(body: impl Serialize, status: u8) -> Self {
        Output { body: serde_json::to_value(body).expect("serializable"), inputs: BTreeMap::new(), status }
    }

    fn input(mut self, key: &str, digest: String) -> Self {
        self.inputs.insert(key.to_owned(), digest);
        self
    }
}

fn spec(r: usize, l: &[usize]) -> Result<IntersectionSpec, Failure> {
    Ok(IntersectionSpec::new(r, l)?)
}

fn construct(a: &ConstructArgs) -> Result<Output, Failure> {
    let built = construct::build(&a.params)?;
    let stem = a.stem.clone().unwrap_or_else(|| a.params.name.label());
    fs::create_dir_all(&a.out_dir).map_err(|e| Failure::Invalid(format!("{}: {e}", a.out_dir.display())))?;
    let g6_path = a.out_dir.join(format!("{stem}.g6"));
    let json_path = a.out_dir.join(format!("{stem}.json"));
    let meta = built.metadata();
    write(&g6_path, &format!("{}\n", io::to_graph6(built.graph())))?;
    write(&json_path, &format!("{}\n", serde_json::to_string_pretty(&meta).expect("serializable")))?;
    Ok(Output::new(
        json!({ "graph6": g6_path, "metadata": json_path, "construction": meta }),
        EXIT_OK,
    ))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

fn count(a: &CountArgs) -> Result<Output, Failure> {
    let (g, gd) = load_graph(&a.graph)?;
    let (p, pd) = load_pattern(&a.pattern)?;
    let mut body = json!({ "count": count_copies(&g, &p, a.mode), "mode": a.mode, "pattern": p });
    if a.list {
        // in span mode several copies may share one vertex set
        body["vertexSets"] = serde_json::to_value(copy_sets(&g, &p, a.mode)).expect("serializable");
    }
    Ok(Output::new(body, EXIT_OK).input("graph", gd).input("pattern", pd))
}

fn check(a: &CheckArgs) -> Result<Output, Failure> {
    let (g, gd) = load_graph(&a.graph)?;
    let (p, pd) = load_pattern(&a.pattern)?;
    let r = a.r.unwrap_or(p.order());
    if r != p.order() {
        return Err(Failure::Invalid(format!("--r {r} differs from the pattern order {}", p.order())));
    }
    let spec = spec(r, &a.l)?;
    let report = check_graph(&g, &p, &spec)?;
    let status = if report.l_intersecting { EXIT_OK } else { EXIT_FAILS };
    if let Some(v) = &report.violation {
        eprintln!("violation: {:?} and {:?} share {} vertices", v.first, v.second, v.size);
    }
    let mut body = serde_json::to_value(&report).expect("serializable");
    body["spec"] = serde_json::to_value(&spec).expect("serializable");
    body["pattern"] = serde_json::to_value(&p).expect("serializable");
    Ok(Output::new(body, status).input("graph", gd).input("pattern", pd))
}

fn psi(a: &PsiArgs) -> Result<Output, Failure> {
    let spec = spec(a.r, &a.l)?;
    let (p, pd) = match &a.pattern {
        Some(s) => load_pattern(s)?,
        None => (Graph::cycle(a.r)?, sha256_hex(format!("C_{}", a.r).as_bytes())),
    };
    let opts = PsiOptions {
        mode: a.mode,
        min_core: a.min_core,
        prune: a.prune,
        workers: a.workers,
        witness_cap: a.witnesses,
        max_order: a.max_order,
        graph_budget: a.budget,
    };
    let out = psi_exact(a.n, &p, &spec, &opts)?;
    let status = if out.budget_exhausted { EXIT_BUDGET } else { EXIT_OK };
    Ok(Output::new(out, status).input("pattern", pd))
}

fn phi(a: &PhiArgs) -> Result<Output, Failure> {
    let spec = spec(a.r, &a.l)?;
    let opts = PhiOptions { max_subsets: a.max_subsets, node_cap: a.budget, workers: a.workers };
    let out = phi_exact(a.n, &spec, &opts)?;
    let status = if out.budget_exhausted { EXIT_BUDGET } else { EXIT_OK };
    Ok(Output::new(out, status))
}

fn fsearch(a: &FsearchArgs) -> Result<Output, Failure> {
    let opts = FSearchOptions { k_max: a.kmax, node_cap: a.budget, workers: a.workers, max_order: a.max_order };
    match f_of_n(a.n, &opts) {
        Ok(res) => Ok(Output::new(res, EXIT_OK)),
        Err(e @ lfam::Error::FlawlessBudget { n, lower_bound, undecided_k }) => {
            eprintln!("lfam: {e}");
            let body = json!({ "n": n, "f": null, "lowerBound": lower_bound, "undecidedK": undecided_k });
            Ok(Output::new(body, EXIT_BUDGET))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Deserialize)]
struct Certificate {
    host: Graph,
    factors: Vec<Matching>,
}

fn factcheck(a: &FactcheckArgs) -> Result<Output, Failure> {
    let text = read_file(&a.file)?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", a.file.display())))?;
    let claimed_f = doc.get("f").and_then(Value::as_u64);
    let witness = doc.get("witness").cloned().unwrap_or_else(|| doc.clone());
    let cert: Certificate = serde_json::from_value(witness)
        .map_err(|e| Failure::Parse(format!("{}: certificate needs host and factors ({e})", a.file.display())))?;
    let digest = sha256_hex(text.as_bytes());
    let fact = match OneFactorization::new(cert.host, cert.factors) {
        Ok(f) => f,
        Err(e @ lfam::Error::InvalidFactorization(_)) => {
            eprintln!("lfam: {e}");
            let body = json!({ "valid": false, "reason": e.to_string() });
            return Ok(Output::new(body, EXIT_FAILS).input("file", digest));
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = check_flawless(&fact);
    let k = fact.k();
    let matches_claim = claimed_f.map(|f| f == k as u64);
    let ok = verdict.is_flawless && matches_claim != Some(false);
    let mut body = serde_json::to_value(&verdict).expect("serializable");
    body["valid"] = json!(true);
    body["k"] = json!(k);
    body["order"] = json!(fact.host.order());
    if let Some(m) = matches_claim {
        body["matchesClaimedF"] = json!(m);
    }
    Ok(Output::new(body, if ok { EXIT_OK } else { EXIT_FAILS }).input("file", digest))
}

fn report(a: &ReportArgs) -> Result<Output, Failure> {
    match construct::build(&a.params)? {
        Built::Construction(c) => {
            let rep = verify_construction(&c, &c.pattern.graph())?;
            let status = if rep.passed() { EXIT_OK } else { EXIT_FAILS };
            let mut body = serde_json::to_value(&rep).expect("serializable");
            body["spec"] = serde_json::to_value(&c.spec).expect("serializable");
            body["actualOrder"] = json!(c.actual_order);
            Ok(Output::new(body, status))
        }
        Built::Triple(f) => {
            let verdict = check_flawless(&f);
            let status = if verdict.is_flawless { EXIT_OK } else { EXIT_FAILS };
            Ok(Output::new(verdict, status))
        }
        Built::Turan { .. } => Err(Failure::Invalid("turan carries no intersection spec to report on".into())),
    }
}

fn dispatch(cmd: &Command) -> (Result<Output, Failure>, Value) {
    fn settings<T: Serialize>(a: &T) -> Value {
        serde_json::to_value(a).expect("serializable")
    }
    match cmd {
        Command::Construct(a) => (construct(a), settings(a)),
        Command::Count(a) => (count(a), settings(a)),
        Command::Check(a) => (check(a), settings(a)),
        Command::Psi(a) => (psi(a), settings(a)),
        Command::Phi(a) => (phi(a), settings(a)),
        Command::Fsearch(a) => (fsearch(a), settings(a)),
        Command::Factcheck(a) => (factcheck(a), settings(a)),
        Command::Report(a) => (report(a), settings(a)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (result, settings) = dispatch(&cli.command);
    let out = match result {
        Ok(out) => out,
        Err(f) => {
            eprintln!("lfam: {f}");
            return ExitCode::from(f.exit_code());
        }
    };
    let run = RunReport {
        schema_version: SCHEMA_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: std::env::args().collect(),
        inputs: out.inputs,
        settings,
        elapsed_ms: start.elapsed().as_millis(),
    };
    let mut body = out.body;
    body["run"] = serde_json::to_value(&run).expect("serializable");
    let text = serde_json::to_string_pretty(&body).expect("serializable");
    if let Command::Fsearch(FsearchArgs { out: Some(path), .. }) = &cli.command {
        if let Err(f) = write(path, &format!("{text}\n")) {
            eprintln!("lfam: {f}");
            return ExitCode::from(f.exit_code());
        }
    }
    // a closed stdout (e.g. piped into `head`) is not an error of the command
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(out.status)
}
