//! Batch front end: generate graphs, build and combine colourings, verify
//! bounds, query the brute-force oracles, and run percolation sweeps. Every
//! output is deterministic for a fixed invocation, so results diff cleanly.
//!
//! Exit status: 0 on success, 1 when a verified bound is violated or a
//! checked property fails to hold, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;
use strongprod::io::{self, ColoringDocument};
use strongprod::{
    cartesian_product, check_consistency, chromatic_number, clique_number, clustered_feasibility,
    consistent_cycle_coloring, consistent_path_coloring, direct_product, fractional_bounds,
    generate_basic, generate_hex_grid, generate_tree_closure, grid_product, hex_grid_coloring,
    hex_lemma_check, independence_number, percolation_sweep, random_bounded_degree_tree,
    shannon_lower_bound, strong_product, tree_product_coloring, verify_coloring,
    verify_consistent_coloring, BasicKind, ConsistentColoring, DefectParameter, Feasibility,
    FractionalColoring, Graph, HexCheck, OracleBudget, SweepConfig, VerificationReport,
};

#[derive(Parser)]
#[command(name = "strongprod", version, about = "Clustered colourings of strong graph products")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Combine two or more graph files with a product operation.
    Product {
        #[arg(long, value_enum)]
        op: ProductOp,
        /// Graph files, combined left to right.
        #[arg(required = true, num_args = 2..)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a colouring from one of the constructions.
    Color {
        #[command(subcommand)]
        kind: ColorKind,
    },
    /// Verify a colouring file against a graph file.
    Verify(VerifyArgs),
    /// Exact brute-force computations with explicit budgets.
    Oracle {
        #[command(subcommand)]
        task: OracleTask,
    },
    /// Exhaustively check the two-colour crossing property on the n x n
    /// triangulated grid.
    Hexcheck {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Site-percolation sweep over a list of densities.
    Percolate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        densities: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.99)]
        quantile: f64,
        /// A density qualifies for the colour estimate when its quantile
        /// cluster size stays at or below this.
        #[arg(long)]
        threshold: usize,
        /// JSON summary destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Long-format per-trial CSV destination.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
    /// Render a graph (optionally coloured) as DOT.
    Export {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a pipeline described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Path(SizedGen),
    Cycle(SizedGen),
    Complete(SizedGen),
    /// Star with the given number of leaves (centre is vertex 0).
    Star {
        #[arg(long)]
        leaves: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Triangulated grid [n]^d with diagonal edges.
    Hexgrid(GridGen),
    /// Plain strong grid: the d-fold strong power of the n-vertex path.
    Grid(GridGen),
    /// Complete branching tree with the given number of levels, closed
    /// under ancestor-descendant edges.
    Treeclosure {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        branching: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random tree grown by sequential attachment under a degree cap.
    Randomtree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SizedGen {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridGen {
    /// Side length.
    #[arg(long)]
    n: usize,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductOp {
    Strong,
    Cartesian,
    Direct,
}

#[derive(Subcommand)]
enum ColorKind {
    /// Consistent (k+1:k)-colouring of the n-vertex path.
    Path(PathColorArgs),
    /// Consistent (k+1:k)-colouring of the n-vertex cycle.
    Cycle(PathColorArgs),
    /// (d+1)-colouring of the triangulated grid [n]^d.
    Hexgrid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the coloured graph.
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PathColorArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the underlying graph.
    #[arg(long)]
    graph_out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Which defect parameter the report highlights.
    #[arg(long, value_enum, default_value_t = Eta::Cluster)]
    eta: Eta,
    /// Fail (exit 1) when the measured clustering exceeds this.
    #[arg(long)]
    max_clustering: Option<usize>,
    /// Fail (exit 1) when the measured defect exceeds this.
    #[arg(long)]
    max_defect: Option<usize>,
    /// Fail (exit 1) unless the colouring is proper.
    #[arg(long)]
    require_proper: bool,
    /// Fail (exit 1) unless the colouring carries tuples and they are
    /// consistent.
    #[arg(long)]
    require_consistent: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Eta {
    Cluster,
    Degree,
    Proper,
}

impl From<Eta> for DefectParameter {
    fn from(eta: Eta) -> Self {
        match eta {
            Eta::Cluster => DefectParameter::ClusterSize,
            Eta::Degree => DefectParameter::MaxDegree,
            Eta::Proper => DefectParameter::Properness,
        }
    }
}

#[derive(Subcommand)]
enum OracleTask {
    Chromatic(OracleGraphArgs),
    Alpha(OracleGraphArgs),
    Omega(OracleGraphArgs),
    /// Lower and upper bounds on the fractional chromatic number.
    Fractional {
        #[command(flatten)]
        common: OracleGraphArgs,
        /// Proper (p:q)-colouring used as the upper-bound witness.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Search for a colouring with a clustering cap.
    Feasibility {
        #[command(flatten)]
        common: OracleGraphArgs,
        #[arg(long)]
        colors: usize,
        #[arg(long)]
        max_clustering: usize,
    },
    /// Shannon capacity lower bound via the d-th strong power.
    Shannon {
        #[command(flatten)]
        common: OracleGraphArgs,
        #[arg(long)]
        power: usize,
    },
}

#[derive(Args)]
struct OracleGraphArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long, default_value_t = 64)]
    budget_vertices: usize,
    #[arg(long, default_value_t = 64)]
    budget_colors: usize,
    /// Wall-clock limit in seconds.
    #[arg(long, default_value_t = 60)]
    budget_time: u64,
}

impl BudgetArgs {
    fn to_budget(&self) -> OracleBudget {
        OracleBudget {
            max_vertices: self.budget_vertices,
            max_colors: self.budget_colors,
            time_limit: Duration::from_secs(self.budget_time),
        }
    }

    fn metadata(&self) -> serde_json::Value {
        json!({
            "max_vertices": self.budget_vertices,
            "max_colors": self.budget_colors,
            "time_limit_secs": self.budget_time,
        })
    }
}

/// Outcome of a command body: `Violation` means all inputs were valid but a
/// checked bound did not hold.
enum Outcome {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    if let Err(err) = configure_threads() {
        eprintln!("error: {err:#}");
        return ExitCode::from(2);
    }
    match dispatch(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("STRONGPROD_THREADS") {
        let threads: usize = raw
            .parse()
            .with_context(|| format!("STRONGPROD_THREADS must be a thread count, got {raw:?}"))?;
        if threads == 0 {
            bail!("STRONGPROD_THREADS must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("rayon thread pool already initialised")?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Gen { kind } => run_gen(kind),
        Command::Product { op, inputs, out } => run_product(op, &inputs, out.as_deref()),
        Command::Color { kind } => run_color(kind),
        Command::Verify(args) => run_verify(&args),
        Command::Oracle { task } => run_oracle(task),
        Command::Hexcheck { n, budget, out } => run_hexcheck(n, &budget, out.as_deref()),
        Command::Percolate {
            graph,
            densities,
            trials,
            seed,
            quantile,
            threshold,
            out,
            csv_out,
        } => run_percolate(
            &graph,
            SweepConfig {
                densities,
                trials,
                seed,
                quantile,
                cluster_threshold: threshold,
            },
            out.as_deref(),
            csv_out.as_deref(),
        ),
        Command::Export { graph, coloring, out } => {
            run_export(&graph, coloring.as_deref(), out.as_deref())
        }
        Command::Run { config, out } => run_pipeline(&config, out.as_deref()),
    }
}

fn write_output(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    io::read_graph_json(&text).with_context(|| format!("invalid graph in {}", path.display()))
}

fn load_coloring_document(path: &Path) -> Result<ColoringDocument> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("invalid colouring document in {}", path.display()))
}

fn run_gen(kind: GenKind) -> Result<Outcome> {
    let (graph, out) = match kind {
        GenKind::Path(args) => (generate_basic(BasicKind::Path, args.n)?, args.out),
        GenKind::Cycle(args) => (generate_basic(BasicKind::Cycle, args.n)?, args.out),
        GenKind::Complete(args) => (generate_basic(BasicKind::Complete, args.n)?, args.out),
        GenKind::Star { leaves, out } => (generate_basic(BasicKind::Star, leaves)?, out),
        GenKind::Hexgrid(args) => (generate_hex_grid(args.n, args.dim)?, args.out),
        GenKind::Grid(args) => (grid_product(args.n, args.dim)?, args.out),
        GenKind::Treeclosure { levels, branching, out } => {
            let (_, graph) = generate_tree_closure(levels, branching)?;
            (graph, out)
        }
        GenKind::Randomtree { n, max_degree, seed, out } => {
            let tree = random_bounded_degree_tree(n, max_degree, seed)?;
            (tree.graph().clone(), out)
        }
    };
    write_output(&io::write_graph_json(&graph), out.as_deref())?;
    Ok(Outcome::Ok)
}

fn run_product(op: ProductOp, inputs: &[PathBuf], out: Option<&Path>) -> Result<Outcome> {
    let mut graphs = inputs.iter().map(|p| load_graph(p));
    let mut acc = graphs.next().expect("clap requires two inputs")?;
    for next in graphs {
        let next = next?;
        acc = match op {
            ProductOp::Strong => strong_product(&acc, &next)?,
            ProductOp::Cartesian => cartesian_product(&acc, &next)?,
            ProductOp::Direct => direct_product(&acc, &next)?,
        };
    }
    write_output(&io::write_graph_json(&acc), out)?;
    Ok(Outcome::Ok)
}

fn run_color(kind: ColorKind) -> Result<Outcome> {
    match kind {
        ColorKind::Path(args) => {
            let coloring = consistent_path_coloring(args.n, args.k)?;
            emit_consistent(&coloring, BasicKind::Path, &args)
        }
        ColorKind::Cycle(args) => {
            let coloring = consistent_cycle_coloring(args.n, args.k)?;
            emit_consistent(&coloring, BasicKind::Cycle, &args)
        }
        ColorKind::Hexgrid { n, dim, out, graph_out } => {
            let (graph, coloring) = hex_grid_coloring(n, dim)?;
            write_output(&io::write_coloring_json(&coloring), out.as_deref())?;
            if let Some(path) = graph_out {
                write_output(&io::write_graph_json(&graph), Some(&path))?;
            }
            Ok(Outcome::Ok)
        }
    }
}

fn emit_consistent(
    coloring: &ConsistentColoring,
    shape: BasicKind,
    args: &PathColorArgs,
) -> Result<Outcome> {
    write_output(&io::write_consistent_json(coloring), args.out.as_deref())?;
    if let Some(path) = &args.graph_out {
        let graph = generate_basic(shape, args.n)?;
        write_output(&io::write_graph_json(&graph), Some(path))?;
    }
    Ok(Outcome::Ok)
}

#[derive(Serialize)]
struct VerifyOutput {
    report: VerificationReport,
    violations: Vec<String>,
    ok: bool,
}

fn run_verify(args: &VerifyArgs) -> Result<Outcome> {
    let graph = load_graph(&args.graph)?;
    let doc = load_coloring_document(&args.coloring)?;
    let eta: DefectParameter = args.eta.into();
    let report = match &doc.order {
        Some(_) => {
            let coloring = io::document_to_consistent(&doc)
                .with_context(|| format!("invalid colouring in {}", args.coloring.display()))?;
            verify_consistent_coloring(&graph, &coloring, eta)?
        }
        None => {
            let coloring = io::document_to_fractional(&doc)
                .with_context(|| format!("invalid colouring in {}", args.coloring.display()))?;
            verify_coloring(&graph, &coloring, eta)?
        }
    };
    let mut violations = Vec::new();
    if let Some(cap) = args.max_clustering {
        if report.clustering > cap {
            violations.push(format!("clustering {} exceeds {cap}", report.clustering));
        }
    }
    if let Some(cap) = args.max_defect {
        if report.defect > cap {
            violations.push(format!("defect {} exceeds {cap}", report.defect));
        }
    }
    if args.require_proper && !report.proper {
        violations.push(format!(
            "colouring is not proper (clustering {})",
            report.clustering
        ));
    }
    if args.require_consistent {
        match report.consistent {
            Some(true) => {}
            Some(false) => {
                let coloring = io::document_to_consistent(&doc)?;
                let witness = check_consistency(&graph, &coloring)?
                    .expect("verifier reported an inconsistency");
                violations.push(format!(
                    "edge ({}, {}) repeats a colour across positions {} and {}",
                    witness.u, witness.v, witness.pos_u, witness.pos_v
                ));
            }
            None => violations.push("colouring carries no tuple order".to_string()),
        }
    }
    let ok = violations.is_empty();
    let output = VerifyOutput { report, violations, ok };
    let mut text = serde_json::to_string_pretty(&output)?;
    text.push('\n');
    write_output(&text, args.out.as_deref())?;
    Ok(if ok { Outcome::Ok } else { Outcome::Violation })
}

fn emit_oracle_result(
    common: &OracleGraphArgs,
    task: &str,
    fields: serde_json::Value,
) -> Result<Outcome> {
    let mut object = json!({
        "task": task,
        "budget": common.budget.metadata(),
    });
    object
        .as_object_mut()
        .expect("object literal")
        .extend(fields.as_object().cloned().expect("object literal"));
    let mut text = serde_json::to_string_pretty(&object)?;
    text.push('\n');
    write_output(&text, common.out.as_deref())?;
    Ok(Outcome::Ok)
}

fn run_oracle(task: OracleTask) -> Result<Outcome> {
    match task {
        OracleTask::Chromatic(common) => {
            let graph = load_graph(&common.graph)?;
            let chi = chromatic_number(&graph, &common.budget.to_budget())?;
            emit_oracle_result(&common, "chromatic", json!({ "chromatic_number": chi }))
        }
        OracleTask::Alpha(common) => {
            let graph = load_graph(&common.graph)?;
            let alpha = independence_number(&graph, &common.budget.to_budget())?;
            emit_oracle_result(&common, "alpha", json!({ "independence_number": alpha }))
        }
        OracleTask::Omega(common) => {
            let graph = load_graph(&common.graph)?;
            let omega = clique_number(&graph, &common.budget.to_budget())?;
            emit_oracle_result(&common, "omega", json!({ "clique_number": omega }))
        }
        OracleTask::Fractional { common, witness } => {
            let graph = load_graph(&common.graph)?;
            let witness_coloring = witness
                .as_deref()
                .map(|p| -> Result<FractionalColoring> {
                    let doc = load_coloring_document(p)?;
                    Ok(io::document_to_fractional(&doc)?)
                })
                .transpose()?;
            let bounds =
                fractional_bounds(&graph, witness_coloring.as_ref(), &common.budget.to_budget())?;
            emit_oracle_result(
                &common,
                "fractional",
                json!({
                    "lower": ratio_fields(bounds.lower),
                    "upper": ratio_fields(bounds.upper),
                }),
            )
        }
        OracleTask::Feasibility { common, colors, max_clustering } => {
            let graph = load_graph(&common.graph)?;
            let feasibility =
                clustered_feasibility(&graph, colors, max_clustering, &common.budget.to_budget())?;
            let fields = match feasibility {
                Feasibility::Feasible(coloring) => json!({
                    "colors": colors,
                    "max_clustering": max_clustering,
                    "feasible": true,
                    "witness": io::coloring_to_document(&coloring),
                }),
                Feasibility::Infeasible => json!({
                    "colors": colors,
                    "max_clustering": max_clustering,
                    "feasible": false,
                }),
            };
            emit_oracle_result(&common, "feasibility", fields)
        }
        OracleTask::Shannon { common, power } => {
            let graph = load_graph(&common.graph)?;
            let bound = shannon_lower_bound(&graph, power, &common.budget.to_budget())?;
            emit_oracle_result(
                &common,
                "shannon",
                json!({ "power": power, "lower_bound": bound }),
            )
        }
    }
}

fn ratio_fields(r: num::rational::Ratio<u64>) -> serde_json::Value {
    json!({
        "numer": r.numer(),
        "denom": r.denom(),
        "value": *r.numer() as f64 / *r.denom() as f64,
    })
}

fn run_hexcheck(n: usize, budget: &BudgetArgs, out: Option<&Path>) -> Result<Outcome> {
    let outcome = hex_lemma_check(n, &budget.to_budget())?;
    let (value, holds) = match outcome {
        HexCheck::Holds { colorings_checked } => (
            json!({
                "n": n,
                "holds": true,
                "colorings_checked": colorings_checked,
                "budget": budget.metadata(),
            }),
            true,
        ),
        HexCheck::Counterexample { coloring } => (
            json!({
                "n": n,
                "holds": false,
                "counterexample": io::coloring_to_document(&coloring),
                "budget": budget.metadata(),
            }),
            false,
        ),
    };
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    write_output(&text, out)?;
    Ok(if holds { Outcome::Ok } else { Outcome::Violation })
}

fn run_percolate(
    graph: &Path,
    config: SweepConfig,
    out: Option<&Path>,
    csv_out: Option<&Path>,
) -> Result<Outcome> {
    let graph = load_graph(graph)?;
    let report = percolation_sweep(&graph, &config)?;
    write_output(&io::sweep_to_json(&report), out)?;
    if let Some(path) = csv_out {
        write_output(&io::sweep_to_csv(&report), Some(path))?;
    }
    Ok(Outcome::Ok)
}

fn run_export(graph: &Path, coloring: Option<&Path>, out: Option<&Path>) -> Result<Outcome> {
    let graph = load_graph(graph)?;
    let coloring = coloring
        .map(|p| -> Result<FractionalColoring> {
            let doc = load_coloring_document(p)?;
            Ok(io::document_to_fractional(&doc)?)
        })
        .transpose()?;
    write_output(&io::export_dot(&graph, coloring.as_ref()), out)?;
    Ok(Outcome::Ok)
}

/// A pipeline bundles generation, construction, and checking into one
/// reproducible config file. Every variant reports its measured values and
/// whether the advertised bound held.
#[derive(Deserialize)]
#[serde(tag = "pipeline", rename_all = "lowercase", deny_unknown_fields)]
enum Pipeline {
    Hexgrid {
        n: usize,
        d: usize,
        /// Clustering cap; d! when omitted.
        max_clustering: Option<usize>,
    },
    Hexlemma {
        n: usize,
    },
    Path {
        n: usize,
        k: usize,
    },
    Cycle {
        n: usize,
        k: usize,
    },
    Treeproduct {
        sizes: Vec<usize>,
        max_degree: usize,
        seed: u64,
    },
    Verify {
        graph: PathBuf,
        coloring: PathBuf,
        #[serde(default)]
        max_clustering: Option<usize>,
        #[serde(default)]
        require_proper: bool,
        #[serde(default)]
        require_consistent: bool,
    },
    Percolation {
        grid_n: usize,
        grid_d: usize,
        densities: Vec<f64>,
        trials: usize,
        seed: u64,
        #[serde(default = "default_quantile")]
        quantile: f64,
        threshold: usize,
        #[serde(default)]
        csv: Option<PathBuf>,
    },
}

fn default_quantile() -> f64 {
    0.99
}

fn run_pipeline(config: &Path, out: Option<&Path>) -> Result<Outcome> {
    let text = fs::read_to_string(config)
        .with_context(|| format!("cannot read {}", config.display()))?;
    let pipeline: Pipeline = serde_json::from_str(&text)
        .with_context(|| format!("invalid pipeline config in {}", config.display()))?;
    match pipeline {
        Pipeline::Hexgrid { n, d, max_clustering } => {
            let (graph, coloring) = hex_grid_coloring(n, d)?;
            let report = verify_coloring(&graph, &coloring, DefectParameter::ClusterSize)?;
            let bound = max_clustering.unwrap_or_else(|| (1..=d).product());
            let ok = report.clustering <= bound;
            finish_pipeline(
                json!({
                    "pipeline": "hexgrid",
                    "n": n,
                    "d": d,
                    "colors": coloring.p(),
                    "clustering": report.clustering,
                    "bound": bound,
                    "ok": ok,
                }),
                ok,
                out,
            )
        }
        Pipeline::Hexlemma { n } => {
            let outcome = hex_lemma_check(n, &OracleBudget::default())?;
            let holds = matches!(outcome, HexCheck::Holds { .. });
            finish_pipeline(
                json!({
                    "pipeline": "hexlemma",
                    "n": n,
                    "holds": holds,
                }),
                holds,
                out,
            )
        }
        Pipeline::Path { n, k } => {
            let coloring = consistent_path_coloring(n, k)?;
            let graph = generate_basic(BasicKind::Path, n)?;
            let report = verify_consistent_coloring(&graph, &coloring, DefectParameter::ClusterSize)?;
            let ok = report.consistent == Some(true) && report.clustering <= k;
            finish_pipeline(
                json!({
                    "pipeline": "path",
                    "n": n,
                    "k": k,
                    "clustering": report.clustering,
                    "bound": k,
                    "consistent": report.consistent,
                    "ok": ok,
                }),
                ok,
                out,
            )
        }
        Pipeline::Cycle { n, k } => {
            let coloring = consistent_cycle_coloring(n, k)?;
            let graph = generate_basic(BasicKind::Cycle, n)?;
            let report = verify_consistent_coloring(&graph, &coloring, DefectParameter::ClusterSize)?;
            let bound = k * k + 3 * k - 1;
            let ok = report.consistent == Some(true) && report.clustering <= bound;
            finish_pipeline(
                json!({
                    "pipeline": "cycle",
                    "n": n,
                    "k": k,
                    "clustering": report.clustering,
                    "bound": bound,
                    "consistent": report.consistent,
                    "ok": ok,
                }),
                ok,
                out,
            )
        }
        Pipeline::Treeproduct { sizes, max_degree, seed } => {
            if sizes.is_empty() {
                bail!("treeproduct needs at least one tree size");
            }
            let trees: Vec<_> = sizes
                .iter()
                .enumerate()
                .map(|(i, &n)| {
                    let cap = if i == 0 { n.max(2) } else { max_degree };
                    random_bounded_degree_tree(n, cap, seed.wrapping_add(i as u64))
                })
                .collect::<Result<_, _>>()?;
            let refs: Vec<&_> = trees.iter().collect();
            let (graph, coloring) = tree_product_coloring(&refs, max_degree)?;
            let report = verify_coloring(&graph, &coloring, DefectParameter::ClusterSize)?;
            let d = sizes.len();
            let bound = max_degree.pow((d * (d - 1) / 2) as u32);
            let ok = report.clustering <= bound;
            finish_pipeline(
                json!({
                    "pipeline": "treeproduct",
                    "sizes": sizes,
                    "max_degree": max_degree,
                    "seed": seed,
                    "colors": coloring.p(),
                    "clustering": report.clustering,
                    "bound": bound,
                    "ok": ok,
                }),
                ok,
                out,
            )
        }
        Pipeline::Verify {
            graph,
            coloring,
            max_clustering,
            require_proper,
            require_consistent,
        } => run_verify(&VerifyArgs {
            graph,
            coloring,
            eta: Eta::Cluster,
            max_clustering,
            max_defect: None,
            require_proper,
            require_consistent,
            out: out.map(Path::to_path_buf),
        }),
        Pipeline::Percolation {
            grid_n,
            grid_d,
            densities,
            trials,
            seed,
            quantile,
            threshold,
            csv,
        } => {
            let graph = grid_product(grid_n, grid_d)?;
            let report = percolation_sweep(
                &graph,
                &SweepConfig {
                    densities,
                    trials,
                    seed,
                    quantile,
                    cluster_threshold: threshold,
                },
            )?;
            if let Some(path) = csv {
                write_output(&io::sweep_to_csv(&report), Some(&path))?;
            }
            write_output(&io::sweep_to_json(&report), out)?;
            Ok(Outcome::Ok)
        }
    }
}

fn finish_pipeline(value: serde_json::Value, ok: bool, out: Option<&Path>) -> Result<Outcome> {
    let mut text = serde_json::to_string_pretty(&value)?;
    text.push('\n');
    write_output(&text, out)?;
    Ok(if ok { Outcome::Ok } else { Outcome::Violation })
}
