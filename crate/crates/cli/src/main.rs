mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use derilab::derivations::{assoc_basis, lie_der_basis};
use derilab::diagrams::{is_standard_form, chord_diagram_of, reduce_to_standard};
use derilab::free_algebra::witt;
use derilab::homology::{
    check_range, generation_profile, h1_weight, h1_weight_cached, Algebra, H1Config, Mode, Partition, Ring,
    DEFAULT_BLOCK_GUARD,
};
use derilab::suites::{run_suite, Suite};
use derilab::symplectic::{a_basis, burnside_count, h_basis, Spider};
use serde_json::{json, Value};

use report::{emit, ReportDocument, Tally};

/// Target dimension above which `h1` asks for `--heavy`.
const HEAVY_DIM: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "derilab", version, about = "Abelianizations of graded derivation Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads (default: logical cores).
    #[arg(long, global = true, env = "DERILAB_WORKERS")]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct Target {
    #[arg(long, value_parser = parse_algebra)]
    algebra: Algebra,
    /// Rank n (assoc, lie).
    #[arg(long, conflicts_with = "g")]
    n: Option<usize>,
    /// Genus g (symp, lie-symp).
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight-k piece of the abelianization H1.
    H1 {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_mode, default_value = "plus")]
        mode: Mode,
        /// z | q | modp | modp:p1,p2,...
        #[arg(long, value_parser = parse_ring, default_value = "z")]
        ring: Ring,
        /// Degree pairs, e.g. "3:1,2:2".
        #[arg(long, value_parser = parse_partition, value_delimiter = ',')]
        partitions: Option<Vec<Partition>>,
        #[arg(long, env = "DERILAB_CACHE")]
        cache_dir: Option<PathBuf>,
        /// Allow targets above the default size gate.
        #[arg(long)]
        heavy: bool,
        /// Largest weight block handled by exact integer elimination.
        #[arg(long, default_value_t = DEFAULT_BLOCK_GUARD)]
        block_guard: usize,
    },
    /// Seeded property suites.
    Verify {
        /// identities | traces | spiders | slides | mirror | all
        #[arg(long)]
        suite: String,
        #[arg(long)]
        seed: u64,
        /// Genus for the slide suite.
        #[arg(long)]
        g: Option<usize>,
    },
    /// Rewrites a spider into brackets plus standard forms.
    ReduceSpider {
        #[arg(long)]
        g: usize,
        /// Comma-separated signed colors, e.g. "1,4,-2,-1".
        #[arg(long, allow_hyphen_values = true)]
        spider: String,
    },
    /// Dimensions of the graded pieces of degree 0..=k.
    Dims {
        #[command(flatten)]
        target: Target,
    },
    /// Which partition subsets span the bracket image, degrees 2..=k.
    GenerationProfile {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = parse_ring, default_value = "q")]
        ring: Ring,
    },
}

fn parse_algebra(s: &str) -> Result<Algebra, String> {
    s.parse().map_err(|e: derilab::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: derilab::Error| e.to_string())
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse().map_err(|e: derilab::Error| e.to_string())
}

fn parse_partition(p: &str) -> Result<Partition, String> {
    let (i, j) = p.split_once(':').ok_or_else(|| format!("partition {p:?} is not i:j"))?;
    let i = i.trim().parse().map_err(|e| format!("{i:?}: {e}"))?;
    let j = j.trim().parse().map_err(|e| format!("{j:?}: {e}"))?;
    Ok((i, j))
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Range(String),
    #[error("{0}")]
    Oracle(String),
    #[error("{0}")]
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Range(_) => 2,
            Failure::Oracle(_) => 3,
            Failure::Other(_) => 1,
        }
    }
}

impl From<derilab::Error> for Failure {
    fn from(e: derilab::Error) -> Self {
        use derilab::Error::*;
        match e {
            RangeGuard(_) | GenusTooSmall { .. } | NoFreshColor { .. } => Failure::Range(e.to_string()),
            Disagreement(_) => Failure::Oracle(e.to_string()),
            Io(_) | Json(_) => Failure::Other(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

/// A finished report, plus a failure to signal after it is written.
type Outcome = (ReportDocument, Option<Failure>);

impl Target {
    fn size(&self) -> Result<usize, Failure> {
        let (want, got) = if self.algebra.is_symplectic() { ("--g", self.g) } else { ("--n", self.n) };
        match got {
            None => Err(Failure::Usage(format!("{} needs {want}", self.algebra))),
            Some(0) => Err(Failure::Usage(format!("{want} must be positive"))),
            Some(s) => Ok(s),
        }
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// dim g(k) from closed formulas, with named summands where they are known.
fn dimension(algebra: Algebra, size: usize, k: usize) -> (u64, Vec<(String, u64)>) {
    let (s, k) = (size as u64, k as u64);
    match algebra {
        Algebra::Assoc => (s.pow(k as u32 + 2), vec![]),
        Algebra::Lie => (s * witt(s, k + 1), vec![]),
        Algebra::Symp => {
            let d = 2 * s;
            let parts = match k {
                0 => vec![("S^2 H".into(), binom(d + 1, 2))],
                1 => vec![("S^3 H".into(), binom(d + 2, 3)), ("Lambda^3 H".into(), binom(d, 3))],
                _ => vec![],
            };
            (burnside_count(d, k + 2), parts)
        }
        Algebra::LieSymp => {
            let d = 2 * s;
            (d * witt(d, k + 1) - witt(d, k + 2), vec![])
        }
    }
}

/// Basis enumeration for small pieces, as an oracle for the formulas.
fn enumerated_dimension(algebra: Algebra, size: usize, k: usize) -> Option<u64> {
    let (total, _) = dimension(algebra, size, k);
    if total > 5000 {
        return None;
    }
    let n = match algebra {
        Algebra::Assoc => assoc_basis(size, k).len(),
        Algebra::Lie => lie_der_basis(size, k).ok()?.len(),
        Algebra::Symp => a_basis(size, k).ok()?.len(),
        Algebra::LieSymp if total <= 500 => h_basis(size, k).ok()?.len(),
        Algebra::LieSymp => return None,
    };
    Some(n as u64)
}

fn cmd_h1(
    target: &Target,
    mode: Mode,
    ring: Ring,
    partitions: Option<Vec<Partition>>,
    cache_dir: Option<PathBuf>,
    heavy: bool,
    block_guard: usize,
) -> Result<Outcome, Failure> {
    let size = target.size()?;
    check_range(target.algebra, size, target.k)?;
    let (dim, _) = dimension(target.algebra, size, target.k);
    if dim > HEAVY_DIM && !heavy {
        return Err(Failure::Range(format!("dim g(k) = {dim} exceeds {HEAVY_DIM}; pass --heavy to run it")));
    }
    let mut cfg = H1Config::new(target.algebra, size, target.k, mode, ring.clone());
    cfg.partitions = partitions;
    cfg.block_guard = block_guard;
    cfg.resolved_partitions()?;
    let start = Instant::now();
    let r = match &cache_dir {
        Some(dir) => h1_weight_cached(&cfg, dir)?,
        None => h1_weight(&cfg)?,
    };
    let wall = start.elapsed().as_millis();
    // the cokernel dimension must complement the span rank
    let mut tally = Tally::default();
    let coker = r.q_dimension.or(r.fp_dimension);
    if let Some(d) = coker {
        tally.checks += 1;
        if d + r.span_rank != r.target_dim {
            tally.failures += 1;
        }
    }
    if let Ring::ModP(ps) = &ring {
        tally.checks += ps.len();
    }
    let failure = (tally.failures > 0).then(|| Failure::Oracle("cokernel dimension and span rank disagree".into()));
    let config = json!({
        "command": "h1",
        "h1": cfg,
        "cache_dir": cache_dir,
        "cache_hit": r.cache_hit,
    });
    Ok((ReportDocument::new(config, vec![r.results_value()], wall, tally), failure))
}

fn cmd_verify(suite: &str, seed: u64, g: Option<usize>) -> Result<Outcome, Failure> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let start = Instant::now();
    let mut results = Vec::new();
    let mut tally = Tally::default();
    for s in suites {
        let r = run_suite(s, seed, g)?;
        tally.checks += r.checks();
        tally.failures += r.failures();
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["passed"] = json!(r.passed());
        results.push(v);
    }
    let failure = (tally.failures > 0).then(|| Failure::Oracle(format!("{} of {} checks failed", tally.failures, tally.checks)));
    let config = json!({ "command": "verify", "suite": suite, "seed": seed, "g": g });
    Ok((ReportDocument::new(config, results, start.elapsed().as_millis(), tally), failure))
}

fn cmd_reduce(g: usize, text: &str) -> Result<Outcome, Failure> {
    let s = Spider::parse(text)?;
    s.check_genus(g)?;
    let guaranteed = s.degree() + 3;
    let start = Instant::now();
    let cert = reduce_to_standard(&s, g).map_err(|e| match Failure::from(e) {
        Failure::Range(m) => Failure::Range(format!("{m} (reduction is guaranteed for g >= k+3 = {guaranteed})")),
        f => f,
    })?;
    let wall = start.elapsed().as_millis();
    cert.audit().map_err(|e| Failure::Oracle(format!("certificate audit failed: {e}")))?;
    if let Some(t) = cert.remainder.iter().find(|(t, _)| is_standard_form(&chord_diagram_of(t)).is_none()) {
        return Err(Failure::Oracle(format!("remainder spider {:?} is not in standard form", t.0)));
    }
    let result = json!({
        "input": s,
        "genus": g,
        "degree": s.degree(),
        "guaranteed_range": g >= guaranteed,
        "brackets": cert.brackets.len(),
        "remainder": cert.remainder.len(),
        "audit": "pass",
        "certificate": cert.to_json()?,
    });
    let config = json!({ "command": "reduce-spider", "g": g, "spider": text });
    Ok((ReportDocument::new(config, vec![result], wall, Tally { checks: 1, failures: 0 }), None))
}

fn cmd_dims(target: &Target) -> Result<Outcome, Failure> {
    let size = target.size()?;
    if (target.algebra.rank(size) as f64).powi(target.k as i32 + 2) > 1e18 {
        return Err(Failure::Range(format!("dimensions at size {size}, degree {} overflow 64 bits", target.k)));
    }
    let start = Instant::now();
    let mut tally = Tally::default();
    let mut rows = Vec::new();
    for k in 0..=target.k {
        let (dim, parts) = dimension(target.algebra, size, k);
        if !parts.is_empty() {
            tally.checks += 1;
            if parts.iter().map(|p| p.1).sum::<u64>() != dim {
                tally.failures += 1;
            }
        }
        let enumerated = enumerated_dimension(target.algebra, size, k);
        if let Some(e) = enumerated {
            tally.checks += 1;
            if e != dim {
                tally.failures += 1;
            }
        }
        let components: Vec<Value> = parts.iter().map(|(n, d)| json!({ "module": n, "dim": d })).collect();
        rows.push(json!({
            "algebra": target.algebra.to_string(),
            "size": size,
            "k": k,
            "dim": dim,
            "components": components,
            "enumerated": enumerated,
        }));
    }
    let failure = (tally.failures > 0).then(|| Failure::Oracle("dimension formula disagrees with enumeration".into()));
    let config = json!({ "command": "dims", "algebra": target.algebra.to_string(), "size": size, "k": target.k });
    Ok((ReportDocument::new(config, rows, start.elapsed().as_millis(), tally), failure))
}

fn cmd_profile(target: &Target, ring: Ring) -> Result<Outcome, Failure> {
    let size = target.size()?;
    check_range(target.algebra, size, target.k)?;
    let start = Instant::now();
    let rows = generation_profile(target.algebra, size, target.k, &ring)?;
    let results: Vec<Value> = rows.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
    let config = json!({
        "command": "generation-profile",
        "algebra": target.algebra.to_string(),
        "size": size,
        "max_degree": target.k,
        "ring": ring.to_string(),
    });
    let tally = Tally { checks: rows.len(), failures: 0 };
    Ok((ReportDocument::new(config, results, start.elapsed().as_millis(), tally), None))
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(w) = cli.common.workers {
        if w == 0 {
            return Err(Failure::Usage("--workers must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global().map_err(|e| Failure::Other(e.to_string()))?;
    }
    let (mut doc, failure) = match &cli.command {
        Command::H1 { target, mode, ring, partitions, cache_dir, heavy, block_guard } => {
            cmd_h1(target, *mode, ring.clone(), partitions.clone(), cache_dir.clone(), *heavy, *block_guard)?
        }
        Command::Verify { suite, seed, g } => cmd_verify(suite, *seed, *g)?,
        Command::ReduceSpider { g, spider } => cmd_reduce(*g, spider)?,
        Command::Dims { target } => cmd_dims(target)?,
        Command::GenerationProfile { target, ring } => cmd_profile(target, ring.clone())?,
    };
    doc.config["workers"] = json!(cli.common.workers.unwrap_or_else(rayon::current_num_threads));
    let text = match cli.common.format {
        Format::Json => doc.to_json(),
        Format::Csv => doc.to_csv().map_err(|e| Failure::Other(e.to_string()))?,
    };
    emit(&text, cli.common.out.as_deref())?;
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("derilab: {f}");
            ExitCode::from(f.code())
        }
    }
}
