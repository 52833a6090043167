//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when input validation or a verification claim
//! fails, 2 on usage errors. Flags are validated before any file is read or
//! written. `--config <path>` reads a flat `key=value` file whose keys mirror
//! the long flags of the chosen subcommand; flags given on the command line
//! win over the file.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use log::{info, warn};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair, DEFAULT_GIRTH};
use crate::io::files::{g6_files, read_graph6_file};
use crate::io::graph6::{decode_graph6, encode_graph6};
use crate::local_search::{local_search, SearchParams};
use crate::oracle::{
    biregular_upper_bounds, exact_max_size, moore_bound, verify_witness, BoundKind, DEFAULT_BUDGET,
};
use crate::pipeline::report::{parse_previous_bounds, report, BoundsRow, BoundsTable};
use crate::pipeline::{compute_lower_bounds, RunConfig, DEFAULT_CAPACITY};

const SUBCOMMANDS: [&str; 9] = [
    "search",
    "run-range",
    "verify",
    "oracle",
    "moore",
    "encode",
    "decode",
    "report",
    "degree-sets",
];

#[derive(Parser, Debug)]
#[command(
    name = "girth-search",
    version,
    about = "Dense graphs of girth at least five"
)]
#[command(args_override_self = true)]
struct Cli {
    /// Flat key=value file mirroring the subcommand's long flags
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one local search from a seed graph
    Search(SearchArgs),
    /// Up/down propagation over a range of orders
    RunRange(RunRangeArgs),
    /// Check order, size and girth claims for every graph in a file
    Verify(VerifyArgs),
    /// Exact maximum size for a small order
    Oracle(OracleArgs),
    /// Moore bound M(k, g)
    Moore(MooreArgs),
    /// Edge list to graph6
    Encode(EncodeArgs),
    /// graph6 to edge list
    Decode(DecodeArgs),
    /// Bounds table from a snapshot directory
    Report(ReportArgs),
    /// Bi-regular degree sets among snapshot graphs
    DegreeSets(DegreeSetsArgs),
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("seed").required(true).args(["seed_file", "order"]))]
struct SearchArgs {
    /// graph6 file; its first graph is the seed
    #[arg(long)]
    seed_file: Option<PathBuf>,
    /// Start from the edgeless graph of this order
    #[arg(long)]
    order: Option<usize>,
    /// Iteration budget [default: 1000 * order]
    #[arg(long)]
    iters: Option<u64>,
    /// Deletion window [default: order]
    #[arg(long)]
    window: Option<u64>,
    #[arg(long, default_value_t = 3)]
    kmax: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long)]
    rng_seed: Option<u64>,
    /// Write the recorded graphs here, one graph6 line each, ascending size
    #[arg(long)]
    out: Option<PathBuf>,
    /// Refuse to run without an explicit seed
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args, Debug)]
struct RunRangeArgs {
    #[arg(long)]
    n_low: usize,
    #[arg(long)]
    n_high: usize,
    /// Directory of graph6 seed files; orders without seeds start edgeless
    #[arg(long)]
    seed_dir: Option<PathBuf>,
    /// Snapshots and bounds.csv go here
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value_t = 2)]
    passes: usize,
    #[arg(long, default_value_t = 150)]
    ell: usize,
    #[arg(long)]
    master_seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    deterministic: bool,
    /// Graphs kept per order
    #[arg(long, default_value_t = DEFAULT_CAPACITY)]
    capacity: usize,
    /// CSV of `n,bound` lines to compare against
    #[arg(long)]
    previous: Option<PathBuf>,
    /// Stop after a pass that improves no order
    #[arg(long)]
    stop_when_stalled: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    size: usize,
    /// Claimed order [default: the graph's own order]
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_GIRTH)]
    girth: usize,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    /// Search node budget
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the witness graph here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MooreArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    g: u64,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    /// Edge list: the order on the first line, then one `u v` pair per line
    #[arg(long)]
    file: PathBuf,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["g6", "file"]))]
struct DecodeArgs {
    #[arg(long)]
    g6: Option<String>,
    /// File whose first graph6 line is decoded
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// Directory of `best_n<order>_<tag>.g6` snapshots
    #[arg(long)]
    dir: PathBuf,
    #[arg(long)]
    previous: Option<PathBuf>,
    /// Also write the CSV form here
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DegreeSetsArgs {
    #[arg(long)]
    dir: PathBuf,
}

/// Parses `args` (program name first), runs the subcommand, and returns the
/// process exit code. Results go to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = e.print();
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) => 2,
                _ => 1,
            }
        }
    }
}

/// Splices `--key value` pairs from the config file right after the
/// subcommand name, so later command-line flags override them.
fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(a) = iter.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            let p = iter
                .next()
                .ok_or_else(|| Error::Usage("--config needs a path".into()))?;
            path = Some(PathBuf::from(p));
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut extra = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Usage(format!("{}:{}: expected key=value", path.display(), i + 1))
        })?;
        let flag = format!("--{}", key.trim().replace('_', "-"));
        match value.trim() {
            "true" => extra.push(OsString::from(flag)),
            "false" => {}
            v => {
                extra.push(OsString::from(flag));
                extra.push(OsString::from(v));
            }
        }
    }
    let at = rest
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .map_or(rest.len(), |i| i + 1);
    rest.splice(at..at, extra);
    Ok(rest)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Search(a) => search(a, out),
        Command::RunRange(a) => run_range(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Moore(a) => {
            emit(out, format_args!("{}\n", moore_bound(a.k, a.g)?))?;
            Ok(0)
        }
        Command::Encode(a) => encode(a, out),
        Command::Decode(a) => decode(a, out),
        Command::Report(a) => report_dir(a, out),
        Command::DegreeSets(a) => degree_sets(a, out),
    }
}

fn emit(out: &mut dyn Write, args: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(args).map_err(|e| Error::io("<stdout>", e))
}

fn resolve_seed(seed: Option<u64>, deterministic: bool, flag: &str) -> Result<u64> {
    match seed {
        Some(s) => Ok(s),
        None if deterministic => Err(Error::Usage(format!("--deterministic requires {flag}"))),
        None => {
            let s = rand::random();
            info!("no {flag} given, using {s}");
            Ok(s)
        }
    }
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Result<i32> {
    if a.order == Some(0) {
        return Err(Error::Usage("--order must be at least 1".into()));
    }
    let rng_seed = resolve_seed(a.rng_seed, a.deterministic, "--rng-seed")?;
    let check = |n: usize| {
        let wide = SearchParams::wide_window(n, rng_seed);
        SearchParams::new(
            a.iters.unwrap_or(wide.total_num_iters),
            a.window.unwrap_or(wide.num_iters_too_recent),
            a.kmax,
            a.p,
            rng_seed,
        )
    };
    // validate flags that do not depend on the seed order before reading anything
    check(a.order.unwrap_or(1))?;
    let seed = match (&a.seed_file, a.order) {
        (Some(path), _) => {
            let mut graphs = read_graph6_file(path)?;
            if graphs.is_empty() {
                return Err(Error::Parse {
                    offset: 0,
                    reason: format!("{} holds no graph", path.display()),
                });
            }
            if graphs.len() > 1 {
                warn!(
                    "{}: using the first of {} graphs",
                    path.display(),
                    graphs.len()
                );
            }
            graphs.swap_remove(0)
        }
        (None, Some(n)) => Graph::empty(n)?,
        (None, None) => unreachable!("clap enforces one seed source"),
    };
    let params = check(seed.order())?;
    let result = local_search(&seed, &params)?;
    if let Some(path) = &a.out {
        let mut text = String::new();
        for g in &result.graphs {
            text.push_str(&encode_graph6(g)?);
            text.push('\n');
        }
        fs::write(path, text).map_err(|e| Error::io(path, e))?;
    }
    emit(out, format_args!("{}\n", result.best_size))?;
    Ok(0)
}

fn run_range(a: RunRangeArgs, out: &mut dyn Write) -> Result<i32> {
    let mut cfg = RunConfig::new(a.n_low, a.n_high);
    cfg.passes = a.passes;
    cfg.ell = a.ell;
    cfg.threads = a.threads;
    cfg.capacity = a.capacity;
    cfg.stop_when_stalled = a.stop_when_stalled;
    cfg.seed_dir = a.seed_dir.clone();
    cfg.out_dir = Some(a.out_dir.clone());
    cfg.validate()?;
    if a.ell == 0 || a.capacity == 0 {
        return Err(Error::Usage(
            "--ell and --capacity must be at least 1".into(),
        ));
    }
    cfg.master_seed = resolve_seed(a.master_seed, a.deterministic, "--master-seed")?;

    let previous = a
        .previous
        .as_deref()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            parse_previous_bounds(&text)
        })
        .transpose()?;
    fs::create_dir_all(&a.out_dir).map_err(|e| Error::io(&a.out_dir, e))?;
    let outcome = compute_lower_bounds(&cfg)?;
    let rendered = report(&outcome.table, previous.as_ref());
    let csv_path = a.out_dir.join("bounds.csv");
    fs::write(&csv_path, &rendered.csv).map_err(|e| Error::io(&csv_path, e))?;
    emit(out, format_args!("{}", rendered.text))?;
    Ok(0)
}

/// Non-blank graph6 lines of a file, decoded without any girth check.
fn read_any_graphs(path: &Path) -> Result<Vec<Graph>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            decode_graph6(l.trim()).map_err(|e| Error::SeedFile {
                path: path.to_path_buf(),
                line: i + 1,
                source: Box::new(e),
            })
        })
        .collect()
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if a.girth < 3 {
        return Err(Error::Usage("--girth must be at least 3".into()));
    }
    let graphs = read_any_graphs(&a.file)?;
    if graphs.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            reason: format!("{} holds no graph", a.file.display()),
        });
    }
    let mut failed = false;
    let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
    for (i, g) in graphs.iter().enumerate() {
        let n = a.order.unwrap_or(g.order());
        let v = verify_witness(g, n, a.size, a.girth);
        failed |= !v.passed();
        emit(
            out,
            format_args!(
                "graph {}: order {}/{} {}, size {}/{} {}, girth>={} {}\n",
                i + 1,
                g.order(),
                n,
                mark(v.order_ok),
                g.size(),
                a.size,
                mark(v.size_ok),
                a.girth,
                mark(v.girth_ok)
            ),
        )?;
    }
    Ok(if failed { 1 } else { 0 })
}

fn oracle(a: OracleArgs, out: &mut dyn Write) -> Result<i32> {
    if a.budget == 0 {
        return Err(Error::Usage("--budget must be at least 1".into()));
    }
    let record = exact_max_size(a.n, a.budget);
    if let (Some(path), Some(g)) = (&a.out, &record.witness) {
        fs::write(path, format!("{g}\n")).map_err(|e| Error::io(path, e))?;
    }
    match record.kind {
        BoundKind::Exact => emit(out, format_args!("{}\n", record.value))?,
        BoundKind::Lower => {
            warn!("budget exhausted, value is only a lower bound");
            emit(out, format_args!(">={}\n", record.value))?
        }
    }
    Ok(0)
}

fn encode(a: EncodeArgs, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(&a.file).map_err(|e| Error::io(&a.file, e))?;
    let bad = |line: usize, reason: &str| Error::Parse {
        offset: line,
        reason: format!("line {line}: {reason}"),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (first, header) = lines.next().ok_or_else(|| bad(0, "empty edge list"))?;
    let n: usize = header
        .parse()
        .map_err(|_| bad(first, "expected the order"))?;
    let mut g = Graph::empty(n)?;
    for (i, line) in lines {
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        let (Some(Ok(u)), Some(Ok(v)), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad(i, "expected `u v`"));
        };
        if !g.has_edge(u, v)? {
            g.insert_unchecked(VertexPair::new(u, v)?);
        }
    }
    emit(out, format_args!("{}\n", encode_graph6(&g)?))?;
    Ok(0)
}

fn decode(a: DecodeArgs, out: &mut dyn Write) -> Result<i32> {
    let g = match (&a.g6, &a.file) {
        (Some(s), _) => decode_graph6(s.trim())?,
        (None, Some(path)) => {
            read_any_graphs(path)?
                .into_iter()
                .next()
                .ok_or_else(|| Error::Parse {
                    offset: 0,
                    reason: format!("{} holds no graph", path.display()),
                })?
        }
        (None, None) => unreachable!("clap enforces one input"),
    };
    let mut text = format!("{}\n", g.order());
    for p in g.edges() {
        text.push_str(&format!("{} {}\n", p.u(), p.v()));
    }
    emit(out, format_args!("{text}"))?;
    Ok(0)
}

/// `best_n12_1up.g6` -> `(12, "1up")`
fn parse_snapshot_name(name: &str) -> Option<(usize, String)> {
    let rest = name.strip_prefix("best_n")?.strip_suffix(".g6")?;
    let (order, tag) = rest.split_once('_')?;
    let split = tag.find(|c: char| !c.is_ascii_digit())?;
    tag[..split].parse::<usize>().ok()?;
    matches!(&tag[split..], "up" | "down").then_some(())?;
    Some((order.parse().ok()?, tag.to_string()))
}

fn tag_order(tag: &str) -> (usize, bool) {
    let split = tag.find(|c: char| !c.is_ascii_digit()).unwrap_or(tag.len());
    (tag[..split].parse().unwrap_or(0), &tag[split..] == "down")
}

fn report_dir(a: ReportArgs, out: &mut dyn Write) -> Result<i32> {
    let previous = a
        .previous
        .as_deref()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| Error::io(p, e))?;
            parse_previous_bounds(&text)
        })
        .transpose()?;
    let mut best: BTreeMap<usize, BTreeMap<String, usize>> = BTreeMap::new();
    let mut tags: Vec<String> = Vec::new();
    for path in g6_files(&a.dir)? {
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned());
        let Some((n, tag)) = name.as_deref().and_then(parse_snapshot_name) else {
            warn!("{}: not a snapshot name, skipped", path.display());
            continue;
        };
        let size = read_any_graphs(&path)?.iter().map(Graph::size).max();
        if let Some(size) = size {
            best.entry(n).or_default().insert(tag.clone(), size);
        }
        if !tags.contains(&tag) {
            tags.push(tag);
        }
    }
    tags.sort_by_key(|t| tag_order(t));
    let rows = best
        .iter()
        .map(|(&n, by_tag)| BoundsRow {
            n,
            seed: None,
            half_passes: tags.iter().map(|t| by_tag.get(t).copied()).collect(),
            final_size: by_tag.values().copied().max(),
        })
        .collect();
    let table = BoundsTable {
        columns: tags,
        rows,
    };
    let rendered = report(&table, previous.as_ref());
    if let Some(path) = &a.csv {
        fs::write(path, &rendered.csv).map_err(|e| Error::io(path, e))?;
    }
    emit(out, format_args!("{}", rendered.text))?;
    Ok(0)
}

fn degree_sets(a: DegreeSetsArgs, out: &mut dyn Write) -> Result<i32> {
    let mut graphs = Vec::new();
    for path in g6_files(&a.dir)? {
        graphs.extend(read_any_graphs(&path)?);
    }
    let bounds = biregular_upper_bounds(&graphs);
    emit(out, format_args!("r  m  n\n"))?;
    let width = bounds
        .values()
        .map(|n| n.to_string().len())
        .max()
        .unwrap_or(1);
    for ((r, m), n) in bounds {
        emit(out, format_args!("{r:>2} {m:>2} {n:>width$}\n"))?;
    }
    Ok(0)
}
