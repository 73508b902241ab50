use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use hypervol::complex::{find_hypertree, SimplexSet, WeightedSimplexSet};
use hypervol::cuts::{enumerate_hypercuts, is_coboundary, is_hypercut, PointSet, DEFAULT_ENUMERATION_BITS};
use hypervol::discrepancy::{build_initial_sampling_set, sparsify_sampling_set, WeightedPointSet};
use hypervol::l1cone::{
    euclidean_to_geometric_cuts_2d, hypertree_decomposition, l1_metric_to_cuts, mst_approximation, CutDecomposition,
};
use hypervol::randcx::{analyze, default_p, ExpansionMode, ExpansionReport, DEFAULT_SAMPLES};
use hypervol::sparsify::{
    factorize, sparsify_spectral, sparsify_strength, ColumnSystem, SamplingLaw, SparsifyReport, SpectralMode,
    StrengthOptions, DEFAULT_CONFIDENCE, DEFAULT_SAMPLING_CONSTANT,
};
use hypervol::volumes::{check_volume, euclidean_volume, lightest_cap_volume, VolumeFunction, DEFAULT_SEARCH_NODES};

#[derive(Parser)]
#[command(name = "hypervol", version, about = "Finite d-volume spaces, hypercuts and cut sparsification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract a spanning hypertree of a complex (the full complex when only --n/--d are given).
    Hypertree {
        #[arg(long, value_name = "SIMPLEX_SET_JSON", conflicts_with_all = ["n", "d"])]
        r#in: Option<PathBuf>,
        #[arg(long, requires = "d")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        d: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    #[command(subcommand)]
    Hypercuts(HypercutsCmd),
    #[command(subcommand)]
    Volume(VolumeCmd),
    #[command(subcommand)]
    Decompose(DecomposeCmd),
    /// Reduce the number of cuts in a decomposition.
    Sparsify(SparsifyArgs),
    /// Sample K(n, p) and report its face expansion.
    Randcx(RandcxArgs),
    /// Weighted point set whose triangle masses match the triangle areas of a planar set.
    Discrepancy(DiscrepancyArgs),
    /// Human-readable summary of any JSON artifact.
    Report {
        #[arg(long)]
        r#in: PathBuf,
    },
}

#[derive(Subcommand)]
enum HypercutsCmd {
    /// Every hypercut of K_n^(d), as a JSON list of simplex sets.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Refuse when C(n-1, d) exceeds this many inducer bits.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BITS)]
        max_bits: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify a simplex set as coboundary and hypercut.
    Check {
        #[arg(long)]
        r#in: PathBuf,
    },
}

#[derive(Subcommand)]
enum VolumeCmd {
    /// Triangle inequality on all simple cycles up to a size bound.
    Check {
        #[arg(long)]
        r#in: PathBuf,
        /// Largest cycle considered; all cycles when omitted.
        #[arg(long)]
        max_cycle: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_NODES)]
        max_nodes: usize,
    },
    /// Euclidean d-volumes of a point set.
    Euclidean {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lightest-cap volume of a weighted connected complex.
    Cap {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEARCH_NODES)]
        max_nodes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DecomposeCmd {
    /// Exact cut decomposition of the cap volume of a weighted hypertree.
    Tree {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut decomposition of a minimum spanning hypertree; distortion goes to stderr.
    Mst {
        #[arg(long)]
        r#in: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cut decomposition of the l1 metric of a point set.
    L1metric {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Geometric cut decomposition of planar triangle areas.
    Euclid2d {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Strength,
    Spectral,
    SpectralDet,
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Binomial,
    Poisson,
}

#[derive(Args)]
struct SparsifyArgs {
    #[arg(long, value_enum, default_value = "strength")]
    engine: Engine,
    #[arg(long)]
    epsilon: f64,
    /// Confidence parameter of the strength engine.
    #[arg(long, default_value_t = DEFAULT_CONFIDENCE)]
    k: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "binomial")]
    law: Law,
    /// Copies per unit weight for the strength engine.
    #[arg(long)]
    scale: Option<f64>,
    /// Sampling constant of the spectral engine.
    #[arg(long, default_value_t = DEFAULT_SAMPLING_CONSTANT)]
    c: f64,
    #[arg(long)]
    r#in: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

#[derive(Args)]
struct RandcxArgs {
    #[arg(long)]
    n: usize,
    /// Defaults to 25 ln n / n, clamped to 1.
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEARCH_NODES)]
    max_nodes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DiscrepancyArgs {
    #[arg(long)]
    points: PathBuf,
    #[arg(long)]
    epsilon: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Barrier selection instead of leverage-score sampling.
    #[arg(long)]
    deterministic: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<hypervol::Error> for Failure {
    fn from(e: hypervol::Error) -> Self {
        Failure {
            code: if e.is_guard() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| invalid(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Hypertree { r#in, n, d, out } => {
            let k = match (r#in, n, d) {
                (Some(path), _, _) => read_json::<SimplexSet>(&path)?,
                (None, Some(n), Some(d)) => {
                    if n <= d {
                        return Err(invalid(format!("need n > d, got n = {n}, d = {d}")));
                    }
                    SimplexSet::complete(n, d)
                }
                _ => return Err(invalid("give --in or both --n and --d")),
            };
            let t = find_hypertree(&k)?.ok_or_else(|| Failure::from(hypervol::Error::NotConnected))?;
            write_json(&t, out.as_deref())
        }
        Command::Hypercuts(HypercutsCmd::Enum { n, d, max_bits, out }) => {
            let cuts: Vec<SimplexSet> = enumerate_hypercuts(n, d, max_bits)?.into_iter().map(|h| h.cut().clone()).collect();
            write_json(&cuts, out.as_deref())
        }
        Command::Hypercuts(HypercutsCmd::Check { r#in }) => {
            let c: SimplexSet = read_json(&r#in)?;
            let coboundary = is_coboundary(&c)?;
            let hypercut = coboundary && is_hypercut(&c)?;
            write_json(&json!({ "size": c.len(), "coboundary": coboundary, "hypercut": hypercut }), None)
        }
        Command::Volume(VolumeCmd::Check { r#in, max_cycle, max_nodes }) => {
            let v: VolumeFunction = read_json(&r#in)?;
            let bound = max_cycle.unwrap_or(v.values().len());
            let check = check_volume(&v, bound, max_nodes)?;
            write_json(&check, None)
        }
        Command::Volume(VolumeCmd::Euclidean { points, d, out }) => {
            let pts: PointSet = read_json(&points)?;
            write_json(&euclidean_volume(&pts, d)?, out.as_deref())
        }
        Command::Volume(VolumeCmd::Cap { r#in, max_nodes, out }) => {
            let k: WeightedSimplexSet = read_json(&r#in)?;
            write_json(&lightest_cap_volume(&k, max_nodes)?, out.as_deref())
        }
        Command::Decompose(DecomposeCmd::Tree { r#in, out }) => {
            let t: WeightedSimplexSet = read_json(&r#in)?;
            write_json(&hypertree_decomposition(&t)?, out.as_deref())
        }
        Command::Decompose(DecomposeCmd::Mst { r#in, out }) => {
            let v: VolumeFunction = read_json(&r#in)?;
            let (dec, distortion) = mst_approximation(&v)?;
            eprintln!("distortion: {distortion}");
            write_json(&dec, out.as_deref())
        }
        Command::Decompose(DecomposeCmd::L1metric { points, out }) => {
            let pts: PointSet = read_json(&points)?;
            write_json(&l1_metric_to_cuts(&pts.points)?, out.as_deref())
        }
        Command::Decompose(DecomposeCmd::Euclid2d { points, out }) => {
            let pts: PointSet = read_json(&points)?;
            write_json(&euclidean_to_geometric_cuts_2d(&pts)?, out.as_deref())
        }
        Command::Sparsify(args) => sparsify(args),
        Command::Randcx(args) => randcx(args),
        Command::Discrepancy(args) => {
            let s: PointSet = read_json(&args.points)?;
            let p0 = build_initial_sampling_set(&s)?;
            let mode = if args.deterministic {
                SpectralMode::Deterministic
            } else {
                SpectralMode::default()
            };
            let (p, report) = sparsify_sampling_set(&s, &p0, args.epsilon, args.seed, mode)?;
            eprintln!("initial {} points, sparsified {}", p0.len(), p.len());
            if let Some(path) = &args.report {
                write_json(&report, Some(path))?;
            }
            write_json(&p, args.out.as_deref())
        }
        Command::Report { r#in } => {
            let value: Value = read_json(&r#in)?;
            for line in summarize(value)? {
                println!("{line}");
            }
            Ok(())
        }
    }
}

fn sparsify(args: SparsifyArgs) -> Result<(), Failure> {
    let dec: CutDecomposition = read_json(&args.r#in)?;
    let sys = ColumnSystem::from_decomposition(&dec)?;
    let report = match args.engine {
        Engine::Strength => {
            let opts = StrengthOptions {
                epsilon: args.epsilon,
                k: args.k,
                seed: args.seed,
                law: match args.law {
                    Law::Binomial => SamplingLaw::Binomial,
                    Law::Poisson => SamplingLaw::Poisson,
                },
                scale: args.scale,
            };
            sparsify_strength(&sys, &opts)?.0
        }
        Engine::Spectral | Engine::SpectralDet => {
            let mode = match args.engine {
                Engine::Spectral => SpectralMode::Sampled { c: args.c },
                _ => SpectralMode::Deterministic,
            };
            sparsify_spectral(&sys, &factorize(&dec)?, args.epsilon, args.seed, mode)?
        }
    };
    eprintln!(
        "support {} of {}, max relative error {:.4}",
        report.support_size, report.input_size, report.max_rel_error
    );
    if let Some(path) = &args.report {
        write_json(&report, Some(path))?;
    }
    write_json(&report.apply(&dec), args.out.as_deref())
}

fn randcx(args: RandcxArgs) -> Result<(), Failure> {
    let p = match args.p {
        Some(p) => p,
        None => {
            let (p, clamped) = default_p(args.n);
            if clamped {
                eprintln!("warning: 25 ln n / n exceeds 1 for n = {}; using p = 1", args.n);
            }
            p
        }
    };
    let mode = match args.mode {
        Mode::Exact => ExpansionMode::Exact,
        Mode::Sampled => ExpansionMode::Sampled {
            samples: args.samples,
            seed: args.seed,
        },
    };
    write_json(&analyze(args.n, p, args.seed, &mode, args.max_nodes)?, args.out.as_deref())
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn parse<T: DeserializeOwned>(v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| invalid(e.to_string()))
}

fn summarize(value: Value) -> Result<Vec<String>, Failure> {
    let keys = |v: &Value, names: &[&str]| names.iter().all(|k| v.get(k).is_some());
    if keys(&value, &["engine", "support", "max_rel_error"]) {
        let r: SparsifyReport = parse(value)?;
        return Ok(vec![
            format!("sparsify report ({})", r.engine),
            format!("epsilon: {}  seed: {}", r.epsilon, r.seed),
            format!("support: {} of {}", r.support_size, r.input_size),
            format!("max relative error: {}", r.max_rel_error),
            format!("rho: {}  phases: {}  distinct strengths: {}", fmt_opt(r.rho), fmt_opt(r.phases), fmt_opt(r.distinct_strengths)),
            format!("rank: {}  samples: {}  rigidity: {}", fmt_opt(r.rank), fmt_opt(r.samples), fmt_opt(r.rigidity)),
        ]);
    }
    if keys(&value, &["complex", "connected", "expansion_is_upper_bound"]) {
        let r: ExpansionReport = parse(value)?;
        return Ok(vec![
            format!("random complex K({}, {}) seed {}", r.n, r.p, r.seed),
            format!("triangles: {}  connected: {}", r.size, r.connected),
            format!(
                "expansion ({}): {}{}",
                r.mode,
                fmt_opt(r.expansion),
                if r.expansion_is_upper_bound { " (upper bound)" } else { "" }
            ),
            format!("average cap: {}  distortion lower bound: {}", fmt_opt(r.avg_cap), fmt_opt(r.distortion_lb)),
        ]);
    }
    if keys(&value, &["terms"]) {
        let c: CutDecomposition = parse(value)?;
        return Ok(vec![
            format!("cut decomposition in K_{}^({})", c.n, c.d),
            format!("terms: {}  distinct cuts: {}", c.terms.len(), c.cut_dimension()),
            format!("total weight: {}", c.total_weight()),
            format!("all terms hypercuts: {}", c.verify_hypercuts()?),
        ]);
    }
    if keys(&value, &["values"]) {
        let v: VolumeFunction = parse(value)?;
        let max = v.values().iter().copied().fold(0.0, f64::max);
        return Ok(vec![
            format!("volume function on K_{}^({})", v.n(), v.d()),
            format!("support: {} of {}", v.support().len(), v.values().len()),
            format!("average: {}  max: {max}", v.average()),
        ]);
    }
    if keys(&value, &["points", "weights"]) {
        let p: WeightedPointSet = parse(value)?;
        return Ok(vec![format!("weighted point set: {} points, total weight {}", p.len(), p.total_weight())]);
    }
    if keys(&value, &["dim", "points"]) {
        let p: PointSet = parse(value)?;
        return Ok(vec![format!("point set: {} points in dimension {}", p.len(), p.dim)]);
    }
    if keys(&value, &["simplices"]) {
        let w: WeightedSimplexSet = parse(value)?;
        let mut lines = vec![
            format!("simplex set in K_{}^({}): {} simplices", w.set.n(), w.set.d(), w.set.len()),
            format!("vertices touched: {}", w.set.vertex_support().len()),
        ];
        if !w.set.is_empty() {
            lines.push(format!("connected: {}", hypervol::complex::is_connected(&w.set)?));
        }
        return Ok(lines);
    }
    Err(invalid("unrecognized artifact"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
