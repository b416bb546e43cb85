//! Command-line front end. Exit codes: 0 success, 1 input error, 2 invariant
//! or verdict failure.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::catalog::{Catalog, Golden};
use crate::document::AlgebraDocument;
use crate::graph::{self, SimpleGraph};
use crate::solvability::{
    analyze, analyze_weights, enumerate_two_step_subsets, fundamental_subgraph, AnalyzeError,
    AnalyzeOptions, SolvabilityReport,
};
use crate::torus::WeightSystem;
use crate::verify::{
    render_subset, verify_catalog, verify_document, CheckLine, Outcome, VerifyReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "lieweights",
    version,
    about = "Weight graphs of nilpotent Lie algebras and 2-step solvable torus extensions"
)]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Skip the derived-series cross-check in `analyze`.
    #[arg(long, global = true)]
    no_oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full report: torus, weights, graphs, structural checks and subset verdicts.
    Analyze { input: String },
    /// Export a graph in DOT format.
    Graph {
        input: String,
        /// sum, weight or fundamental:I (1-based).
        #[arg(long, default_value = "weight")]
        kind: String,
    },
    /// Print the weight system.
    Weights { input: String },
    /// List the index subsets passing the graph criterion.
    Subtori { input: String },
    /// Inspect the built-in catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Run the invariant suite on an input or on the whole catalog.
    Verify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        input: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    List,
    Show { name: String },
}

/// Failure carrying its exit code; the message goes to stderr.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.to_string(),
    }
}

/// Output produced so far plus an optional failure.
struct Response {
    output: String,
    failure: Option<Failure>,
}

impl From<String> for Response {
    fn from(output: String) -> Self {
        Self {
            output,
            failure: None,
        }
    }
}

pub fn run<'a, I, T>(args: I, stdout: &'a mut dyn Write, stderr: &'a mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = dispatch(&cli);
    let (output, failure) = match result {
        Ok(o) => (o.output, o.failure),
        Err(f) => (String::new(), Some(f)),
    };
    if !output.is_empty() {
        let written = match &cli.global.output {
            Some(path) => std::fs::write(path, &output)
                .map_err(|e| format!("cannot write {}: {e}", path.display())),
            None => stdout
                .write_all(output.as_bytes())
                .map_err(|e| e.to_string()),
        };
        if let Err(message) = written {
            let _ = writeln!(stderr, "error: {message}");
            return EXIT_INPUT;
        }
    }
    match failure {
        Some(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
        None => EXIT_OK,
    }
}

fn dispatch(cli: &Cli) -> Result<Response, Failure> {
    let format = cli.global.format;
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(&load(input)?.0, format, !cli.global.no_oracle),
        Command::Graph { input, kind } => cmd_graph(&load(input)?.0, kind).map(Into::into),
        Command::Weights { input } => cmd_weights(&load(input)?.0, format).map(Into::into),
        Command::Subtori { input } => cmd_subtori(&load(input)?.0, format).map(Into::into),
        Command::Catalog { action } => cmd_catalog(action, format).map(Into::into),
        Command::Verify { input, all } => cmd_verify(input.as_deref(), *all, format),
    }
}

/// A readable file path, or else a catalog name.
fn load(input: &str) -> Result<(AlgebraDocument, Option<Golden>), Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("cannot read {input}: {e}")))?;
        let doc =
            AlgebraDocument::parse(&text).map_err(|e| input_error(format!("{input}: {e}")))?;
        return Ok((doc, None));
    }
    let catalog = Catalog::load().map_err(input_error)?;
    match catalog.get(input) {
        Ok(entry) => Ok((entry.document.clone(), entry.golden)),
        Err(e) => Err(input_error(format!(
            "{input} is not a readable file and {e}"
        ))),
    }
}

fn weight_system_of(doc: &AlgebraDocument) -> Result<WeightSystem, Failure> {
    doc.weight_system()
        .map_err(|e| input_error(format!("{}: {e}", doc.name)))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("reports always serialize");
    out.push('\n');
    out
}

fn cmd_analyze(doc: &AlgebraDocument, format: Format, oracle: bool) -> Result<Response, Failure> {
    let algebra = doc
        .algebra()
        .map_err(|e| input_error(format!("{}: {e}", doc.name)))?;
    let (report, mismatch) = match &algebra {
        Some(l) => match analyze(&doc.name, l, AnalyzeOptions { oracle }) {
            Ok(r) => (r, None),
            Err(AnalyzeError::VerdictMismatch(r)) => {
                let subsets: Vec<String> =
                    r.mismatches().map(|v| render_subset(&v.subset)).collect();
                let message = format!(
                    "graph criterion and derived-series oracle disagree on {}",
                    subsets.join(" ")
                );
                (*r, Some(message))
            }
            Err(AnalyzeError::Solvability(e)) => {
                return Err(input_error(format!("{}: {e}", doc.name)))
            }
        },
        None => {
            let ws = weight_system_of(doc)?;
            (
                analyze_weights(&doc.name, ws)
                    .map_err(|e| input_error(format!("{}: {e}", doc.name)))?,
                None,
            )
        }
    };
    let output = match format {
        Format::Text => render_report_text(&report),
        Format::Json => to_json(&ReportJson::new(&report)),
    };
    let mut problems: Vec<String> = mismatch.into_iter().collect();
    let failed: Vec<&str> = report
        .properties
        .iter()
        .filter(|p| p.holds == Some(false))
        .map(|p| p.name)
        .collect();
    if !failed.is_empty() {
        problems.push(format!("invariant failed: {}", failed.join(", ")));
    }
    let failure = (!problems.is_empty()).then(|| Failure {
        code: EXIT_INVARIANT,
        message: problems.join("; "),
    });
    Ok(Response { output, failure })
}

fn basis(j: usize) -> String {
    format!("X{}", j + 1)
}

fn render_report_text(r: &SolvabilityReport) -> String {
    let ws = &r.weights;
    let mut lines = Vec::new();
    lines.push(format!("algebra: {}", r.algebra_id));
    lines.push(format!("dimension: {}", r.dim));
    lines.push(format!("rank: {}", r.rank));
    let weights: Vec<String> = ws
        .weights()
        .iter()
        .enumerate()
        .map(|(j, w)| format!("{} = {w}", basis(j)))
        .collect();
    lines.push(format!("weights: {}", weights.join(", ")));
    let fundamentals: Vec<String> = ws.fundamental_indices().iter().map(|&j| basis(j)).collect();
    lines.push(format!("fundamental basis: {}", fundamentals.join(", ")));
    if !ws.is_graded() {
        lines.push("coordinates: signed".into());
    }
    if let Some(z) = r.center_dim {
        lines.push(format!("center dimension: {z}"));
    }
    let isolated: Vec<String> = r
        .sum_graph
        .isolated_vertices()
        .into_iter()
        .map(basis)
        .collect();
    lines.push(format!(
        "sum graph: {} edges, isolated {}",
        r.sum_graph.edge_count(),
        isolated.join(", ")
    ));
    let clique = match r.weight_graph.max_clique() {
        Ok(c) => {
            let members: Vec<String> = c.members.iter().map(|&j| basis(j)).collect();
            format!(", max clique {{{}}}", members.join(","))
        }
        Err(_) => String::new(),
    };
    lines.push(format!(
        "weight graph: {} edges{clique}",
        r.weight_graph.edge_count()
    ));
    lines.push(if r.weight_graph_is_tree() {
        "weight graph: tree (Heisenberg criterion)".into()
    } else {
        "weight graph: not a tree".into()
    });
    if let Some(c1) = &r.condition1 {
        lines.push(format!(
            "Condition-1 surrogate: {}",
            if c1.holds { "holds" } else { "fails" }
        ));
    }
    for v in &r.verdicts {
        let mut line = format!("subset {}: ", render_subset(&v.subset));
        match v.graph.missing_edge {
            None => line.push_str("two-step"),
            Some((a, b)) => line.push_str(&format!(
                "not two-step, sum edge {} + {} ({} + {})",
                basis(a),
                basis(b),
                ws.weight(a),
                ws.weight(b)
            )),
        }
        if let Some(o) = &v.oracle {
            line.push_str(&format!("; oracle: derived length {}", o.derived_length));
            if !v.agrees() {
                line.push_str(" (DISAGREES)");
            }
        }
        lines.push(line);
    }
    let subsets = |s: &[BTreeSet<usize>]| -> String {
        if s.is_empty() {
            return "none".into();
        }
        s.iter().map(render_subset).collect::<Vec<_>>().join(" ")
    };
    lines.push(format!(
        "two-step subsets: {}",
        subsets(&r.enumeration.subsets)
    ));
    lines.push(format!(
        "maximal two-step subsets: {}",
        subsets(&r.enumeration.maximal)
    ));
    if let Some(len) = r.full_torus_derived_length {
        let flag = if r.rigidity_obstruction() == Some(true) {
            " (rigidity obstruction)"
        } else {
            ""
        };
        lines.push(format!("full torus derived length: {len}{flag}"));
    }
    for p in &r.properties {
        let status = match p.holds {
            Some(true) => "holds",
            Some(false) => "FAILS",
            None => "not applicable",
        };
        lines.push(format!("check {}: {status}, {}", p.name, p.detail));
    }
    let mut out = lines.join("\n");
    out.push('\n');
    out
}

fn one_based(s: &BTreeSet<usize>) -> Vec<usize> {
    s.iter().map(|i| i + 1).collect()
}

#[derive(Serialize)]
struct WeightJson {
    basis: String,
    weight: String,
    coords: Vec<i64>,
}

fn weights_json(ws: &WeightSystem) -> Vec<WeightJson> {
    ws.weights()
        .iter()
        .enumerate()
        .map(|(j, w)| WeightJson {
            basis: basis(j),
            weight: w.to_string(),
            coords: w.coords().to_vec(),
        })
        .collect()
}

#[derive(Serialize)]
struct GraphJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl GraphJson {
    fn new(g: &SimpleGraph) -> Self {
        Self {
            vertices: g.vertex_count(),
            edges: g.edges().map(|(a, b)| [a + 1, b + 1]).collect(),
        }
    }
}

#[derive(Serialize)]
struct SubsetJson {
    subset: Vec<usize>,
    graph_verdict: bool,
    oracle_verdict: Option<bool>,
    derived_length: Option<usize>,
    witness: Option<[String; 2]>,
}

#[derive(Serialize)]
struct CheckJson {
    name: &'static str,
    holds: Option<bool>,
    detail: String,
}

#[derive(Serialize)]
struct ReportJson {
    algebra: String,
    dim: usize,
    rank: usize,
    graded: bool,
    weights: Vec<WeightJson>,
    fundamental_basis: Vec<usize>,
    abelian: Option<bool>,
    center_dim: Option<usize>,
    condition1: Option<bool>,
    sum_graph: GraphJson,
    isolated_vertices: Vec<usize>,
    weight_graph: GraphJson,
    weight_graph_tree: bool,
    max_clique: Option<Vec<usize>>,
    subsets: Vec<SubsetJson>,
    two_step_subsets: Vec<Vec<usize>>,
    maximal_two_step_subsets: Vec<Vec<usize>>,
    full_torus_derived_length: Option<usize>,
    rigidity_obstruction: Option<bool>,
    checks: Vec<CheckJson>,
    verdict_mismatches: Vec<Vec<usize>>,
}

impl ReportJson {
    fn new(r: &SolvabilityReport) -> Self {
        let ws = &r.weights;
        Self {
            algebra: r.algebra_id.clone(),
            dim: r.dim,
            rank: r.rank,
            graded: ws.is_graded(),
            weights: weights_json(ws),
            fundamental_basis: ws.fundamental_indices().iter().map(|j| j + 1).collect(),
            abelian: r.abelian,
            center_dim: r.center_dim,
            condition1: r.condition1.as_ref().map(|c| c.holds),
            sum_graph: GraphJson::new(&r.sum_graph),
            isolated_vertices: one_based(&r.sum_graph.isolated_vertices()),
            weight_graph: GraphJson::new(&r.weight_graph),
            weight_graph_tree: r.weight_graph_is_tree(),
            max_clique: r
                .weight_graph
                .max_clique()
                .ok()
                .map(|c| c.members.iter().map(|j| j + 1).collect()),
            subsets: r
                .verdicts
                .iter()
                .map(|v| SubsetJson {
                    subset: one_based(&v.subset),
                    graph_verdict: v.graph.two_step,
                    oracle_verdict: v.oracle.as_ref().map(|o| o.two_step),
                    derived_length: v.oracle.as_ref().map(|o| o.derived_length),
                    witness: v
                        .graph
                        .missing_edge
                        .map(|(a, b)| [ws.weight(a).to_string(), ws.weight(b).to_string()]),
                })
                .collect(),
            two_step_subsets: r.enumeration.subsets.iter().map(one_based).collect(),
            maximal_two_step_subsets: r.enumeration.maximal.iter().map(one_based).collect(),
            full_torus_derived_length: r.full_torus_derived_length,
            rigidity_obstruction: r.rigidity_obstruction(),
            checks: r
                .properties
                .iter()
                .map(|p| CheckJson {
                    name: p.name,
                    holds: p.holds,
                    detail: p.detail.clone(),
                })
                .collect(),
            verdict_mismatches: r.mismatches().map(|v| one_based(&v.subset)).collect(),
        }
    }
}

enum GraphKind {
    Sum,
    Weight,
    Fundamental(usize),
}

fn parse_kind(kind: &str) -> Result<GraphKind, Failure> {
    let bad = || {
        input_error(format!(
            "unknown graph kind {kind:?}; expected sum, weight or fundamental:I"
        ))
    };
    match kind {
        "sum" => Ok(GraphKind::Sum),
        "weight" => Ok(GraphKind::Weight),
        _ => {
            let index = kind.strip_prefix("fundamental:").ok_or_else(bad)?;
            match index.parse::<usize>() {
                Ok(i) if i >= 1 => Ok(GraphKind::Fundamental(i - 1)),
                _ => Err(bad()),
            }
        }
    }
}

fn cmd_graph(doc: &AlgebraDocument, kind: &str) -> Result<String, Failure> {
    let parsed = parse_kind(kind)?;
    let ws = weight_system_of(doc)?;
    let g = match parsed {
        GraphKind::Sum => graph::sum_graph(&ws),
        GraphKind::Weight => graph::weight_graph(&ws),
        GraphKind::Fundamental(i) => fundamental_subgraph(&ws, i).map_err(input_error)?,
    };
    Ok(g.to_dot(&doc.name, kind))
}

#[derive(Serialize)]
struct WeightsJson {
    algebra: String,
    rank: usize,
    graded: bool,
    weights: Vec<WeightJson>,
    fundamental_basis: Vec<usize>,
}

fn cmd_weights(doc: &AlgebraDocument, format: Format) -> Result<String, Failure> {
    let ws = weight_system_of(doc)?;
    Ok(match format {
        Format::Json => to_json(&WeightsJson {
            algebra: doc.name.clone(),
            rank: ws.rank(),
            graded: ws.is_graded(),
            weights: weights_json(&ws),
            fundamental_basis: ws.fundamental_indices().iter().map(|j| j + 1).collect(),
        }),
        Format::Text => {
            let mut out = format!("rank {}\n", ws.rank());
            for (j, w) in ws.weights().iter().enumerate() {
                let mark = if ws.fundamental_indices().contains(&j) {
                    " (fundamental)"
                } else {
                    ""
                };
                out.push_str(&format!("{} {w}{mark}\n", basis(j)));
            }
            out
        }
    })
}

#[derive(Serialize)]
struct SubtoriJson {
    algebra: String,
    rank: usize,
    two_step_subsets: Vec<Vec<usize>>,
    maximal: Vec<Vec<usize>>,
}

fn cmd_subtori(doc: &AlgebraDocument, format: Format) -> Result<String, Failure> {
    let ws = weight_system_of(doc)?;
    let e = enumerate_two_step_subsets(&ws).map_err(input_error)?;
    Ok(match format {
        Format::Json => to_json(&SubtoriJson {
            algebra: doc.name.clone(),
            rank: ws.rank(),
            two_step_subsets: e.subsets.iter().map(one_based).collect(),
            maximal: e.maximal.iter().map(one_based).collect(),
        }),
        Format::Text => {
            let mut out = String::new();
            for s in &e.subsets {
                let mark = if e.maximal.contains(s) {
                    " (maximal)"
                } else {
                    ""
                };
                out.push_str(&format!("{}{mark}\n", render_subset(s)));
            }
            if e.subsets.is_empty() {
                out.push_str("none\n");
            }
            out
        }
    })
}

#[derive(Serialize)]
struct CatalogEntryJson {
    name: String,
    dim: usize,
    brackets: usize,
    golden: bool,
}

fn cmd_catalog(action: &CatalogAction, format: Format) -> Result<String, Failure> {
    let catalog = Catalog::load().map_err(input_error)?;
    match action {
        CatalogAction::Show { name } => {
            Ok(catalog.get(name).map_err(input_error)?.document.to_json())
        }
        CatalogAction::List => Ok(match format {
            Format::Json => to_json(
                &catalog
                    .entries()
                    .iter()
                    .map(|e| CatalogEntryJson {
                        name: e.name.clone(),
                        dim: e.document.dim,
                        brackets: e.document.brackets.len(),
                        golden: e.golden.is_some(),
                    })
                    .collect::<Vec<_>>(),
            ),
            Format::Text => {
                let width = catalog
                    .entries()
                    .iter()
                    .map(|e| e.name.len())
                    .max()
                    .unwrap_or(0);
                let mut out = String::new();
                for e in catalog.entries() {
                    out.push_str(&format!("{:<width$}  dim {}\n", e.name, e.document.dim));
                }
                out
            }
        }),
    }
}

#[derive(Serialize)]
struct CheckLineJson<'a> {
    subject: &'a str,
    invariant: &'a str,
    outcome: &'static str,
    detail: &'a str,
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    passed: bool,
    checks: Vec<CheckLineJson<'a>>,
}

fn check_json(l: &CheckLine) -> CheckLineJson<'_> {
    let outcome = match l.outcome {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Skip => "skip",
    };
    CheckLineJson {
        subject: &l.subject,
        invariant: &l.invariant,
        outcome,
        detail: &l.detail,
    }
}

fn cmd_verify(input: Option<&str>, all: bool, format: Format) -> Result<Response, Failure> {
    let report: VerifyReport = if all {
        verify_catalog(&Catalog::load().map_err(input_error)?).map_err(input_error)?
    } else {
        let input = input.expect("clap requires an input without --all");
        let (doc, golden) = load(input)?;
        verify_document(&doc.name, &doc, golden.as_ref())
            .map_err(|e| input_error(format!("{}: {e}", doc.name)))?
    };
    let output = match format {
        Format::Text => report.render(),
        Format::Json => to_json(&VerifyJson {
            passed: report.passed(),
            checks: report.lines.iter().map(check_json).collect(),
        }),
    };
    let failed: Vec<String> = report
        .failures()
        .map(|l| format!("{} failed ({})", l.invariant, l.subject))
        .collect();
    let failure = (!failed.is_empty()).then(|| Failure {
        code: EXIT_INVARIANT,
        message: failed.join("; "),
    });
    Ok(Response { output, failure })
}
