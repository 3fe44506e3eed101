//! Command surface of the `hedge` binary.
//!
//! Every command is a plain serializable value. Running one yields the bytes of
//! its output file; the command itself is embedded in that output (`# config:`
//! comment line, or a `config` key in JSON) so any result can be replayed.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{invalid, Error, Result};
use crate::exact::{brandes, brute_force_max, ex_greedy, triangle_greedy};
use crate::experiments::{
    attack_curve, evolve, influence_comparison, kronecker_series, ordering_budget, write_influence_csv,
    InfluenceMethod, InfluenceSetup, OrderingMethod,
};
use crate::generators::{gen_hypercube, gen_kronecker, gen_lower_bound, gen_ran, KroneckerMethod, KroneckerSeed};
use crate::graph::{load_edge_list, load_temporal_edge_list, write_edge_list, Graph, SnapshotMode};
use crate::maximizer::{build_pool_parallel, greedy_cover, Budget, RunResult};
use crate::sampling::SamplerSpec;
use crate::util::{round_sig, seeded_rng};

pub const DEFAULT_SEED: u64 = 42;
/// Environment variable naming a directory for relative `--output` paths.
pub const OUTPUT_DIR_ENV: &str = "HEDGE_OUTPUT_DIR";

pub const BRANDES_MAX_N: usize = 20_000;
pub const EX_GREEDY_MAX_N: usize = 10_000;
const EX_GREEDY_WARN_N: usize = 2_000;

/// Random stream used for generator draws, kept apart from sampling (stream 0).
const GENERATOR_STREAM: u64 = 1;

#[derive(Debug, Parser)]
#[command(name = "hedge", version, about = "Group centrality maximization by hyper-edge sampling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Sample hyper-edges and select k nodes greedily.
    Maximize(MaximizeArgs),
    /// Exact betweenness: per-node scores, exact greedy or brute force.
    Exact(ExactArgs),
    /// Write a synthetic graph as an edge list.
    Generate(GenerateArgs),
    /// Largest component size while removing nodes in centrality order.
    Attack(AttackArgs),
    /// Compare seed sets by independent-cascade spread.
    Influence(InfluenceArgs),
    /// Centrality estimates over temporal snapshots or a Kronecker size sweep.
    Evolve(EvolveArgs),
    /// Dump a pool of hyper-edges, one per line.
    SampleDump(SampleDumpArgs),
    /// Re-run the configuration embedded in an earlier output file.
    #[serde(skip)]
    Replay { file: PathBuf },
}

/// Where the graph comes from: exactly one of a file or a generator.
#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// Edge-list file ("u v" per line, '#' comments).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generator spec: ran:N, hypercube:R, kron:I[:a,b,c,d], lower-bound:N:EPS.
    #[arg(long)]
    pub graph: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct Common {
    /// Treat edges as directed arcs.
    #[arg(long)]
    pub directed: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Sampling threads; results depend on (seed, workers).
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct MaximizeArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub k: usize,
    /// betweenness, coverage, kpath[:KAPPA] or rr[:P].
    #[arg(long, default_value = "betweenness")]
    pub sampler: SamplerSpec,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Lower bound on MAX_k / α used by the theory budget.
    #[arg(long, default_value_t = 1.0)]
    pub maxk_scaled: f64,
    /// theory, paper-exp, equal-yalg or explicit:N.
    #[arg(long, default_value = "theory")]
    pub budget: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include wall-clock time (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExactMode {
    Brandes,
    Exgreedy,
    Brute,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct ExactArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum)]
    pub mode: ExactMode,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Ran,
    Hypercube,
    Kron,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GeneratorKind,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long, default_value = "0.9,0.5,0.5,0.2")]
    pub seed_matrix: String,
    #[arg(long, value_enum, default_value_t = KronMethodArg::Auto)]
    pub kron_method: KronMethodArg,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KronMethodArg {
    Auto,
    Exact,
    BallDropping,
}

impl From<KronMethodArg> for KroneckerMethod {
    fn from(m: KronMethodArg) -> Self {
        match m {
            KronMethodArg::Auto => KroneckerMethod::Auto,
            KronMethodArg::Exact => KroneckerMethod::Exact,
            KronMethodArg::BallDropping => KroneckerMethod::BallDropping,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct AttackArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub common: Common,
    /// betweenness, coverage, kpath[:KAPPA] or triangle.
    #[arg(long, default_value = "betweenness")]
    pub ordering: OrderingMethod,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    /// Nodes to remove; defaults to min(1000, n).
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct InfluenceArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_delimiter = ',', default_value = "1,10")]
    pub ks: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "im,betweenness,coverage,kpath,triangle")]
    pub methods: Vec<InfluenceMethod>,
    #[arg(long, default_value_t = 0.01)]
    pub p: f64,
    #[arg(long, default_value_t = 100_000)]
    pub num_rr: usize,
    #[arg(long, default_value_t = 10_000)]
    pub runs: usize,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, default_value_t = 2)]
    pub kappa: usize,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct EvolveArgs {
    /// Temporal edge list ("u v t" per line).
    #[arg(long, conflicts_with = "kronecker", required_unless_present = "kronecker")]
    pub temporal: Option<PathBuf>,
    /// Kronecker sweep over powers LO..HI instead of a temporal file.
    #[arg(long)]
    pub kronecker: Option<String>,
    /// Explicit snapshot times.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "quantiles")]
    pub snapshots: Vec<i64>,
    /// Number of equally spaced quantile snapshots.
    #[arg(long)]
    pub quantiles: Option<usize>,
    #[arg(long, value_delimiter = ',', default_value = "1,50")]
    pub ks: Vec<usize>,
    #[arg(long, default_value = "betweenness")]
    pub sampler: SamplerSpec,
    #[arg(long, default_value_t = 0.25)]
    pub eps: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Cumulative)]
    pub mode: ModeArg,
    #[arg(long, default_value = "0.9,0.5,0.5,0.2")]
    pub seed_matrix: String,
    #[arg(long, value_enum, default_value_t = KronMethodArg::Auto)]
    pub kron_method: KronMethodArg,
    #[arg(long)]
    pub directed: bool,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Cumulative,
    Windowed,
}

#[derive(Clone, Debug, PartialEq, Args, Serialize, Deserialize)]
pub struct SampleDumpArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "betweenness")]
    pub sampler: SamplerSpec,
    #[arg(long)]
    pub count: usize,
}

/// Exit status for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_) => 2,
        Error::SizeGuard(_) => 3,
        Error::Io(_) | Error::Parse { .. } => 4,
    }
}

/// Builds a graph from a generator spec such as `ran:100` or `kron:8:0.9,0.5,0.5,0.2`.
pub fn generate_from_spec(spec: &str, seed: u64) -> Result<Graph> {
    let mut rng = seeded_rng(seed, GENERATOR_STREAM);
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<f64> {
        s.parse()
            .map_err(|_| Error::InvalidArgument(format!("bad number {s:?} in {spec:?}")))
    };
    match parts[..] {
        ["ran", n] => gen_ran(num(n)? as usize, &mut rng),
        ["hypercube", r] => gen_hypercube(num(r)? as u32),
        ["kron", i] => gen_kronecker(&KroneckerSeed::CORE_PERIPHERY, num(i)? as u32, KroneckerMethod::Auto, &mut rng),
        ["kron", i, m] => gen_kronecker(&KroneckerSeed::parse(m)?, num(i)? as u32, KroneckerMethod::Auto, &mut rng),
        ["lower-bound", n, eps] => Ok(gen_lower_bound(num(n)? as usize, num(eps)?)?.0),
        _ => invalid(format!("unknown generator spec {spec:?}")),
    }
}

fn load_graph(input: &GraphInput, common: &Common) -> Result<Graph> {
    match (&input.input, &input.graph) {
        (Some(path), None) => load_edge_list(path, common.directed),
        (None, Some(spec)) => generate_from_spec(spec, common.seed),
        _ => invalid("exactly one of --input and --graph is required"),
    }
}

fn config_line(cmd: &Command) -> String {
    format!("# config: {}\n", serde_json::to_string(cmd).expect("serializable"))
}

fn sig(x: f64) -> f64 {
    round_sig(x, 9)
}

/// Runs `cmd` and returns the bytes of its output file.
pub fn run(cmd: &Command) -> Result<Vec<u8>> {
    match cmd {
        Command::Maximize(a) => maximize(cmd, a),
        Command::Exact(a) => exact(cmd, a),
        Command::Generate(a) => generate(cmd, a),
        Command::Attack(a) => attack(cmd, a),
        Command::Influence(a) => influence(cmd, a),
        Command::Evolve(a) => evolution(cmd, a),
        Command::SampleDump(a) => sample_dump(cmd, a),
        Command::Replay { file } => {
            let text = std::fs::read_to_string(file)?;
            run(&config_from_output(&text)?)
        }
    }
}

/// Recovers the command embedded in an output produced by [`run`].
pub fn config_from_output(text: &str) -> Result<Command> {
    let parsed = if let Some(line) = text.lines().find_map(|l| l.strip_prefix("# config: ")) {
        serde_json::from_str(line)
    } else {
        serde_json::from_str::<serde_json::Value>(text)
            .and_then(|v| serde_json::from_value(v.get("config").cloned().unwrap_or_default()))
    };
    parsed.map_err(|e| Error::InvalidArgument(format!("no usable embedded config: {e}")))
}

fn resolve_budget(a: &MaximizeArgs) -> Result<Budget> {
    Ok(match a.budget.parse::<Budget>()? {
        Budget::Theory { .. } => Budget::Theory {
            ell: a.ell,
            maxk_scaled: a.maxk_scaled,
        },
        other => other,
    })
}

fn maximize(cmd: &Command, a: &MaximizeArgs) -> Result<Vec<u8>> {
    let start = Instant::now();
    let g = load_graph(&a.graph, &a.common)?;
    let q = resolve_budget(a)?.samples(g.n(), a.k, a.eps)?;
    let pool = build_pool_parallel(&g, a.sampler, q, a.common.seed, a.common.workers)?;
    let mut result = greedy_cover(&pool, a.k)?;
    result.wall_time = start.elapsed().as_secs_f64();
    eprintln!("maximize: {q} samples, {:.3}s", result.wall_time);
    Ok(match a.format {
        Format::Json => maximize_json(cmd, &g, &result, a.timing).into_bytes(),
        Format::Csv => {
            let mut out = config_line(cmd);
            out.push_str("round,node,marginal_degree,scaled_centrality\n");
            for (i, ((v, d), c)) in result
                .selected
                .iter()
                .zip(&result.marginal_degrees)
                .zip(result.scaled_centrality())
                .enumerate()
            {
                writeln!(out, "{},{},{},{}", i + 1, g.label(*v), d, sig(c)).unwrap();
            }
            out.into_bytes()
        }
    })
}

fn maximize_json(cmd: &Command, g: &Graph, r: &RunResult, timing: bool) -> String {
    let mut doc = json!({
        "config": cmd,
        "selected": r.selected.iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
        "marginal_degrees": r.marginal_degrees,
        "scaled_centrality": r.scaled_centrality().into_iter().map(sig).collect::<Vec<_>>(),
        "estimated_centrality": r.estimated_centrality.iter().map(|&x| sig(x)).collect::<Vec<_>>(),
        "sample_count": r.sample_count,
        "alpha": sig(r.alpha),
    });
    if timing {
        doc["wall_time"] = json!(sig(r.wall_time));
    }
    let mut s = serde_json::to_string_pretty(&doc).expect("json");
    s.push('\n');
    s
}

fn exact(cmd: &Command, a: &ExactArgs) -> Result<Vec<u8>> {
    let g = load_graph(&a.graph, &a.common)?;
    let n = g.n();
    let alpha = (n as f64 * (n as f64 - 1.0)).max(1.0);
    let mut out = config_line(cmd);
    match a.mode {
        ExactMode::Brandes => {
            if n > BRANDES_MAX_N {
                return Err(Error::SizeGuard(format!("brandes limited to n <= {BRANDES_MAX_N}, got {n}")));
            }
            let mut buf = Vec::new();
            brandes(&g).write_csv(&g, &mut buf)?;
            out.push_str(std::str::from_utf8(&buf).expect("utf8"));
        }
        ExactMode::Exgreedy => {
            if n > EX_GREEDY_MAX_N {
                return Err(Error::SizeGuard(format!("exgreedy limited to n <= {EX_GREEDY_MAX_N}, got {n}")));
            }
            if n > EX_GREEDY_WARN_N {
                eprintln!("warning: exact greedy on n = {n} takes O(k n (n + m)) time");
            }
            let trace = ex_greedy(&g, a.k)?;
            out.push_str("round,node,score,scaled_score\n");
            for (i, (v, b)) in trace.selected.iter().zip(&trace.values).enumerate() {
                writeln!(out, "{},{},{},{}", i + 1, g.label(*v), sig(*b), sig(b / alpha)).unwrap();
            }
        }
        ExactMode::Brute => {
            let (set, value) = brute_force_max(&g, a.k)?;
            let nodes: Vec<String> = set.iter().map(|&v| g.label(v).to_string()).collect();
            out.push_str("k,nodes,score,scaled_score\n");
            writeln!(out, "{},{},{},{}", a.k, nodes.join(";"), sig(value), sig(value / alpha)).unwrap();
        }
    }
    Ok(out.into_bytes())
}

fn generate(cmd: &Command, a: &GenerateArgs) -> Result<Vec<u8>> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| Error::InvalidArgument(format!("--{name} is required")));
    let mut rng = seeded_rng(a.seed, GENERATOR_STREAM);
    let (g, params) = match a.kind {
        GeneratorKind::Ran => {
            let n = need(a.n, "n")?;
            (gen_ran(n, &mut rng)?, format!("ran n={n}"))
        }
        GeneratorKind::Hypercube => {
            let r = a.r.ok_or_else(|| Error::InvalidArgument("--r is required".into()))?;
            (gen_hypercube(r)?, format!("hypercube r={r}"))
        }
        GeneratorKind::Kron => {
            let i = a.i.ok_or_else(|| Error::InvalidArgument("--i is required".into()))?;
            let seed = KroneckerSeed::parse(&a.seed_matrix)?;
            let g = gen_kronecker(&seed, i, a.kron_method.into(), &mut rng)?;
            (g, format!("kron i={i} seed_matrix={}", a.seed_matrix))
        }
        GeneratorKind::LowerBound => {
            let n = need(a.n, "n")?;
            let eps = a.eps.ok_or_else(|| Error::InvalidArgument("--eps is required".into()))?;
            let (g, shape) = gen_lower_bound(n, eps)?;
            let p = format!(
                "lower-bound n={n} eps={eps} rows={} cols={} isolated={}",
                shape.rows, shape.cols, shape.isolated
            );
            (g, p)
        }
    };
    let header = vec![
        format!("generator: {params} seed={}", a.seed),
        format!("nodes: {} edges: {}", g.n(), g.m()),
        format!("config: {}", serde_json::to_string(cmd).expect("json")),
    ];
    let mut buf = Vec::new();
    write_edge_list(&g, &header, &mut buf)?;
    Ok(buf)
}

fn ordering_for(g: &Graph, method: OrderingMethod, eps: f64, common: &Common) -> Result<Vec<usize>> {
    match method {
        OrderingMethod::Triangle => Ok(triangle_greedy(g, g.n())?.selected),
        OrderingMethod::Sampled { sampler } => {
            if g.n() < 2 {
                return invalid("ordering needs n >= 2");
            }
            let q = ordering_budget(g.n(), eps)?;
            let pool = build_pool_parallel(g, sampler, q, common.seed, common.workers)?;
            Ok(greedy_cover(&pool, g.n())?.selected)
        }
    }
}

fn attack(cmd: &Command, a: &AttackArgs) -> Result<Vec<u8>> {
    let g = load_graph(&a.graph, &a.common)?;
    let cap = a.cap.unwrap_or(g.n().min(1000));
    let order = ordering_for(&g, a.ordering, a.eps, &a.common)?;
    let curve = attack_curve(&g, &order, cap)?;
    let mut out = config_line(cmd).into_bytes();
    curve.write_csv(&mut out)?;
    Ok(out)
}

fn influence(cmd: &Command, a: &InfluenceArgs) -> Result<Vec<u8>> {
    let g = load_graph(&a.graph, &a.common)?;
    let setup = InfluenceSetup {
        ks: a.ks.clone(),
        methods: a.methods.clone(),
        p: a.p,
        num_rr: a.num_rr,
        runs: a.runs,
        eps: a.eps,
        kappa: a.kappa,
    };
    let mut rng = seeded_rng(a.common.seed, 0);
    let rows = influence_comparison(&g, &setup, a.common.seed, &mut rng)?;
    let mut out = config_line(cmd).into_bytes();
    write_influence_csv(&rows, &mut out)?;
    Ok(out)
}

fn parse_levels(s: &str) -> Result<std::ops::RangeInclusive<u32>> {
    let bad = || Error::InvalidArgument(format!("bad level range {s:?}, expected LO..HI"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let (lo, hi): (u32, u32) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn evolution(cmd: &Command, a: &EvolveArgs) -> Result<Vec<u8>> {
    let mut rng = seeded_rng(a.seed, 0);
    let series = match (&a.temporal, &a.kronecker) {
        (Some(path), None) => {
            let temporal = load_temporal_edge_list(path)?;
            let times = match a.quantiles {
                Some(q) => temporal.quantile_times(q),
                None if !a.snapshots.is_empty() => a.snapshots.clone(),
                None => temporal.edges().last().map(|e| vec![e.t]).unwrap_or_default(),
            };
            let mode = match a.mode {
                ModeArg::Cumulative => SnapshotMode::Cumulative,
                ModeArg::Windowed => SnapshotMode::Windowed,
            };
            evolve(&temporal, &times, &a.ks, a.sampler, a.eps, mode, a.directed, &mut rng)?
        }
        (None, Some(levels)) => kronecker_series(
            &KroneckerSeed::parse(&a.seed_matrix)?,
            parse_levels(levels)?,
            &a.ks,
            a.sampler,
            a.eps,
            a.kron_method.into(),
            &mut rng,
        )?,
        _ => return invalid("exactly one of --temporal and --kronecker is required"),
    };
    let mut out = config_line(cmd).into_bytes();
    series.write_csv(&mut out)?;
    Ok(out)
}

fn sample_dump(cmd: &Command, a: &SampleDumpArgs) -> Result<Vec<u8>> {
    let g = load_graph(&a.graph, &a.common)?;
    let pool = build_pool_parallel(&g, a.sampler, a.count, a.common.seed, a.common.workers)?;
    let mut out = config_line(cmd).into_bytes();
    pool.write_to(&mut out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("hedge").chain(args.iter().copied()))
            .unwrap()
            .command
    }

    #[test]
    fn parses_maximize_flags() {
        let cmd = parse(&["maximize", "--graph", "ran:10", "--k", "2", "--sampler", "kpath:3", "--budget", "explicit:50"]);
        let Command::Maximize(a) = &cmd else { panic!() };
        assert_eq!(a.sampler, SamplerSpec::KPath { kappa: 3 });
        assert_eq!(a.common.seed, DEFAULT_SEED);
        assert_eq!(resolve_budget(a).unwrap(), Budget::Explicit { count: 50 });
    }

    #[test]
    fn input_sources_are_exclusive() {
        let both = ["maximize", "--graph", "ran:10", "--input", "x", "--k", "1"];
        assert!(Cli::try_parse_from(std::iter::once("hedge").chain(both)).is_err());
        let none = ["maximize", "--k", "1"];
        let err = Cli::try_parse_from(std::iter::once("hedge").chain(none)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn theory_budget_uses_flags() {
        let cmd = parse(&["maximize", "--graph", "ran:10", "--k", "2", "--ell", "3", "--maxk-scaled", "0.5"]);
        let Command::Maximize(a) = &cmd else { panic!() };
        assert_eq!(resolve_budget(a).unwrap(), Budget::Theory { ell: 3, maxk_scaled: 0.5 });
    }

    #[test]
    fn generator_specs() {
        assert_eq!(generate_from_spec("ran:4", 1).unwrap().m(), 6);
        assert_eq!(generate_from_spec("hypercube:3", 1).unwrap().m(), 12);
        assert_eq!(generate_from_spec("kron:5", 1).unwrap().n(), 32);
        assert_eq!(generate_from_spec("lower-bound:400:0.5", 1).unwrap().n(), 400);
        assert!(generate_from_spec("ran", 1).is_err());
        assert!(generate_from_spec("grid:3", 1).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvalidArgument(String::new())), 2);
        assert_eq!(exit_code(&Error::SizeGuard(String::new())), 3);
        assert_eq!(exit_code(&Error::Io(std::io::Error::other("x"))), 4);
    }

    #[test]
    fn embedded_config_round_trips() {
        let cmd = parse(&["attack", "--graph", "ran:30", "--cap", "5"]);
        let out = String::from_utf8(run(&cmd).unwrap()).unwrap();
        assert_eq!(config_from_output(&out).unwrap(), cmd);
        let cmd = parse(&["maximize", "--graph", "ran:30", "--k", "2", "--budget", "paper-exp"]);
        let out = String::from_utf8(run(&cmd).unwrap()).unwrap();
        assert_eq!(config_from_output(&out).unwrap(), cmd);
    }

    #[test]
    fn level_ranges() {
        assert_eq!(parse_levels("8..20").unwrap(), 8..=20);
        assert!(parse_levels("9..8").is_err());
        assert!(parse_levels("8").is_err());
    }
}
