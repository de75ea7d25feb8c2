//! Command-line surface. [`run`] returns the text to write; `main` maps errors to exit codes.

use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use treegeo_core::oracle::{discretize, Oracle, OracleOptions};
use treegeo_core::repr::chart_of;
use treegeo_core::unordered::{self, UnorderedPlan};
use treegeo_core::{star, BiPath, Error, Metric, OrderedConfig, Point, Tree, UnorderedConfig};

use crate::audit;
use crate::io::{HullJson, QueryJson, StarClassJson, StarPlanJson, TreeJson, UnorderedPlanJson};
use crate::svg::{self, Marker};

#[derive(Debug, Parser)]
#[command(name = "treegeo", version, about = "Shortest two-particle motions on metric trees")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Plan a shortest motion from `a` to `b`.
    Plan(Common),
    /// Classify the pair `(a, b)`.
    Classify(Common),
    /// Report whether `(a, b)` lies in the cut locus, with all candidate lengths.
    Cutlocus(Common),
    /// Compare the planner with the grid oracle.
    Oracle(OracleArgs),
    /// Count rule ids over random instances.
    AuditPartition(AuditArgs),
    /// Sup distances along convergent families, and optional random perturbations.
    AuditContinuity(AuditArgs),
    /// Draw the tree with the query dots, or the representation plane of a star plan.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    L1,
    L2,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::L1 => Metric::L1,
            MetricArg::L2 => Metric::L2,
        }
    }
}

#[derive(Clone, Debug, Args)]
pub struct Common {
    /// Tree file in JSON.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Query file `{"a": [p, p], "b": [p, p]}`.
    #[arg(long)]
    pub query: Option<PathBuf>,
    /// Start pair, e.g. `1@1,2@2` on a star, `v3,e2:0.5` in general.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Target pair, same syntax as `--a`.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, value_enum, default_value = "l1")]
    pub metric: MetricArg,
    /// Minimum separation for ordered configurations.
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, conflicts_with = "unordered")]
    pub ordered: bool,
    #[arg(long)]
    pub unordered: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub common: Common,
    /// Grid step; defaults to a sixteenth of the shortest edge.
    #[arg(long)]
    pub h: Option<f64>,
    /// Extra separation demanded by the oracle beyond ε.
    #[arg(long, default_value_t = 0.0)]
    pub margin: f64,
}

#[derive(Clone, Debug, Args)]
pub struct AuditArgs {
    #[command(flatten)]
    pub common: Common,
    /// Number of random instances.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
}

#[derive(Clone, Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub common: Common,
    /// Draw the representation plane of the star plan instead of the tree.
    #[arg(long)]
    pub plane: bool,
}

/// A failed command and its exit status.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Infeasible(_)) { 3 } else { 2 };
        CliError { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::validation(format!("malformed JSON: {e}"))
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::validation(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_tree(c: &Common) -> CliResult<Tree> {
    let path = c.tree.as_ref().ok_or_else(|| CliError::validation("--tree is required"))?;
    let json: TreeJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok(json.build()?)
}

/// Parses one point: `c` (star center), `ARM@DEPTH` (star), `vID` or `eID:OFFSET`.
pub fn parse_point(tree: &Tree, s: &str) -> CliResult<Point> {
    let s = s.trim();
    let bad = || CliError::validation(format!("cannot parse point `{s}`"));
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let id = |t: &str| t.parse::<usize>().map_err(|_| bad());
    let p = if s == "c" {
        Point::Vertex(tree.as_star()?.center())
    } else if let Some((arm, depth)) = s.split_once('@') {
        let st = tree.as_star()?;
        let arm = id(arm)?;
        if arm == 0 || arm > st.k() {
            return Err(CliError::validation(format!("no arm {arm}")));
        }
        let depth = num(depth)?;
        if !(0.0..=st.arm_len(arm)).contains(&depth) {
            return Err(CliError::validation(format!("depth {depth} outside arm {arm}")));
        }
        st.at(arm, depth)
    } else if let Some(v) = s.strip_prefix('v') {
        Point::Vertex(id(v)?)
    } else if let Some((e, off)) = s.strip_prefix('e').and_then(|r| r.split_once(':')) {
        return Ok(crate::io::PointJson::Edge { edge: id(e)?, offset: num(off)? }.to_point(tree)?);
    } else {
        return Err(bad());
    };
    tree.validate_point(&p)?;
    Ok(p)
}

fn parse_pair(tree: &Tree, s: &str) -> CliResult<OrderedConfig> {
    let (p, q) = s.split_once(',').ok_or_else(|| CliError::validation(format!("expected two points in `{s}`")))?;
    Ok(OrderedConfig::new(parse_point(tree, p)?, parse_point(tree, q)?))
}

fn read_query(tree: &Tree, c: &Common) -> CliResult<(OrderedConfig, OrderedConfig)> {
    match (&c.query, &c.a, &c.b) {
        (Some(path), None, None) => {
            let q: QueryJson = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            Ok(q.resolve(tree)?)
        }
        (None, Some(a), Some(b)) => Ok((parse_pair(tree, a)?, parse_pair(tree, b)?)),
        _ => Err(CliError::validation("give either --query or both --a and --b")),
    }
}

/// Ordered or unordered mode with the flag combinations checked.
enum Mode {
    Ordered { eps: f64, metric: Metric },
    Unordered,
}

fn mode(c: &Common) -> CliResult<Mode> {
    let metric: Metric = c.metric.into();
    if c.unordered {
        if metric == Metric::L2 {
            return Err(CliError::validation(
                "--metric l2 is not available with --unordered: the unordered configuration space is not \
                 geodesically complete under l2 once the tree has a vertex of degree 4 or more",
            ));
        }
        return Ok(Mode::Unordered);
    }
    let eps = c.eps.ok_or_else(|| CliError::validation("--eps is required for ordered configurations"))?;
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(CliError::validation("--eps must be positive"));
    }
    Ok(Mode::Ordered { eps, metric })
}

fn unordered_pair(a: &OrderedConfig) -> CliResult<UnorderedConfig> {
    Ok(UnorderedConfig::new(a.p1, a.p2)?)
}

fn to_json<T: Serialize>(v: &T) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn ends_match(path: &BiPath, a: &OrderedConfig, b: &OrderedConfig, ordered: bool) -> bool {
    let same = |x: &OrderedConfig, y: &OrderedConfig| {
        (x.p1 == y.p1 && x.p2 == y.p2) || (!ordered && x.p1 == y.p2 && x.p2 == y.p1)
    };
    same(&path.start(), a) && same(&path.end(), b)
}

/// Feasibility, endpoints and recomputed length of a returned path.
fn revalidate(tree: &Tree, path: &BiPath, a: &OrderedConfig, b: &OrderedConfig, m: Metric, length: f64) -> CliResult<()> {
    path.validate(tree)?;
    let fail = |what: &str| Err(CliError { code: 1, message: format!("plan failed re-validation: {what}") });
    if !path.is_feasible(tree) {
        return fail("path violates the separation bound");
    }
    if !ends_match(path, a, b, path.ordered) {
        return fail("path endpoints differ from the query");
    }
    let again = path.length(tree, m);
    if (again - length).abs() > 1e-12 * length.max(1.0) {
        return fail("recomputed length disagrees");
    }
    Ok(())
}

fn plan_unordered(tree: &Tree, a: &OrderedConfig, b: &OrderedConfig) -> CliResult<UnorderedPlan> {
    let p = unordered::plan(tree, &unordered_pair(a)?, &unordered_pair(b)?)?;
    revalidate(tree, &p.path, a, b, Metric::L1, p.length)?;
    Ok(p)
}

fn plan_ordered(tree: &Tree, eps: f64, m: Metric, a: &OrderedConfig, b: &OrderedConfig) -> CliResult<star::PlanResult> {
    let r = star::plan(&tree.as_star()?, eps, a, b, m)?;
    revalidate(tree, &r.chosen.path, a, b, m, r.chosen.length(m))?;
    Ok(r)
}

#[derive(Serialize)]
struct CutLocusJson {
    in_cut_locus: bool,
    class: String,
    rule_id: u8,
    candidates: Vec<CandidateLength>,
}

#[derive(Serialize)]
struct CandidateLength {
    descriptor: crate::io::DescriptorJson,
    length_l1: f64,
    length_l2: f64,
}

#[derive(Serialize)]
struct UnorderedClassJson {
    diagram: HullJson,
    eset: String,
    rule_id: u8,
}

#[derive(Serialize)]
struct OracleJson {
    metric: String,
    ordered: bool,
    h: f64,
    grid_points: usize,
    nodes: usize,
    relaxed_edges: usize,
    settled: usize,
    snap_error: f64,
    oracle_length: f64,
    planner_length: f64,
    gap: f64,
}

#[derive(Serialize)]
struct ContinuityJson {
    scenarios: audit::ContinuityReport,
    perturbation: Option<audit::PerturbationStats>,
}

/// Executes a command and returns its output text.
pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Plan(c) => {
            let tree = read_tree(c)?;
            let (a, b) = read_query(&tree, c)?;
            match mode(c)? {
                Mode::Ordered { eps, metric } => to_json(&StarPlanJson::new(&plan_ordered(&tree, eps, metric, &a, &b)?)),
                Mode::Unordered => to_json(&UnorderedPlanJson::new(&plan_unordered(&tree, &a, &b)?)),
            }
        }
        Command::Classify(c) => {
            let tree = read_tree(c)?;
            let (a, b) = read_query(&tree, c)?;
            match mode(c)? {
                Mode::Ordered { eps, metric } => {
                    let r = plan_ordered(&tree, eps, metric, &a, &b)?;
                    to_json(&StarClassJson::new(&r.class, metric))
                }
                Mode::Unordered => {
                    let p = plan_unordered(&tree, &a, &b)?;
                    to_json(&UnorderedClassJson {
                        diagram: HullJson::new(&p.diagram),
                        eset: p.eset.name().into(),
                        rule_id: p.rule_id,
                    })
                }
            }
        }
        Command::Cutlocus(c) => {
            let tree = read_tree(c)?;
            let (a, b) = read_query(&tree, c)?;
            let Mode::Ordered { eps, metric } = mode(c)? else {
                return Err(CliError::validation("cutlocus applies to ordered configurations on a star"));
            };
            let r = plan_ordered(&tree, eps, metric, &a, &b)?;
            to_json(&CutLocusJson {
                in_cut_locus: r.in_cut_locus,
                class: r.class.label(metric),
                rule_id: r.rule_id,
                candidates: r
                    .all_candidates
                    .iter()
                    .map(|c| CandidateLength {
                        descriptor: c.descriptor.into(),
                        length_l1: c.length_l1,
                        length_l2: c.length_l2,
                    })
                    .collect(),
            })
        }
        Command::Oracle(o) => oracle(o),
        Command::AuditPartition(x) => {
            let c = &x.common;
            let tree = read_tree(c)?;
            let report = match mode(c)? {
                Mode::Ordered { eps, metric } => audit::partition_ordered(&tree.as_star()?, eps, metric, x.n, c.seed),
                Mode::Unordered => audit::partition_unordered(&tree, x.n, c.seed),
            };
            to_json(&report)
        }
        Command::AuditContinuity(x) => {
            let c = &x.common;
            let deltas = [0.1, 0.01, 0.001];
            let scenarios = audit::continuity(&audit::boundary_scenarios(), &deltas, 5.0)?;
            let perturbation = match &c.tree {
                None => None,
                Some(_) => {
                    let tree = read_tree(c)?;
                    Some(match mode(c)? {
                        Mode::Ordered { eps, metric } => {
                            audit::perturbation_stats(&tree, Some((eps, metric)), eps / 100.0, x.n, c.seed)
                        }
                        Mode::Unordered => audit::perturbation_stats(&tree, None, tree.min_edge_len() / 100.0, x.n, c.seed),
                    })
                }
            };
            to_json(&ContinuityJson { scenarios, perturbation })
        }
        Command::Render(r) => render(r),
    }
}

fn oracle(o: &OracleArgs) -> CliResult<String> {
    let c = &o.common;
    let tree = read_tree(c)?;
    let (a, b) = read_query(&tree, c)?;
    let h = o.h.unwrap_or(tree.min_edge_len() / 16.0);
    let grid = discretize(&tree, h)?;
    let (opts, planner) = match mode(c)? {
        Mode::Ordered { eps, metric } => {
            let r = plan_ordered(&tree, eps, metric, &a, &b)?;
            (OracleOptions::new(metric, true, eps + o.margin), r.chosen.length(metric))
        }
        Mode::Unordered => (OracleOptions::new(Metric::L1, false, 0.0), plan_unordered(&tree, &a, &b)?.length),
    };
    let start = Instant::now();
    let r = Oracle::new(&tree, &grid, opts).shortest(&a, &b, None)?;
    eprintln!("oracle search took {:.3} s", start.elapsed().as_secs_f64());
    let n = grid.len();
    to_json(&OracleJson {
        metric: opts.metric.name().into(),
        ordered: opts.ordered,
        h,
        grid_points: n,
        nodes: n * n,
        relaxed_edges: r.relaxed,
        settled: r.settled,
        snap_error: r.snap_error,
        oracle_length: r.length,
        planner_length: planner,
        gap: planner - r.length,
    })
}

fn render(r: &RenderArgs) -> CliResult<String> {
    let c = &r.common;
    let tree = read_tree(c)?;
    let query = if c.query.is_some() || c.a.is_some() { Some(read_query(&tree, c)?) } else { None };
    if r.plane {
        let (a, b) = query.ok_or_else(|| CliError::validation("--plane needs a query"))?;
        let Mode::Ordered { eps, metric } = mode(c)? else {
            return Err(CliError::validation("--plane applies to ordered configurations on a star"));
        };
        let plan = plan_ordered(&tree, eps, metric, &a, &b)?;
        let st = tree.as_star()?;
        let chart = chart_of(&st, &a, &b, eps)?;
        return Ok(svg::plane_svg(&st, &chart, &plan));
    }
    let markers = match query {
        None => Vec::new(),
        Some((a, b)) if c.unordered => vec![
            Marker { at: a.p1, fill: "black", label: String::new() },
            Marker { at: a.p2, fill: "black", label: String::new() },
            Marker { at: b.p1, fill: "white", label: String::new() },
            Marker { at: b.p2, fill: "white", label: String::new() },
        ],
        Some((a, b)) => vec![
            Marker { at: a.p1, fill: "#c00", label: "a1".into() },
            Marker { at: a.p2, fill: "#36c", label: "a2".into() },
            Marker { at: b.p1, fill: "#f99", label: "b1".into() },
            Marker { at: b.p2, fill: "#9cf", label: "b2".into() },
        ],
    };
    Ok(svg::tree_svg(&tree, &markers))
}

/// Writes the output of [`run`] to `--out` or standard output.
pub fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    let out = match &cli.command {
        Command::Plan(c) | Command::Classify(c) | Command::Cutlocus(c) => &c.out,
        Command::Oracle(o) => &o.common.out,
        Command::AuditPartition(x) | Command::AuditContinuity(x) => &x.common.out,
        Command::Render(r) => &r.common.out,
    };
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
