//! Command definitions and dispatch. Exit codes: 0 on success, 1 when a
//! computation rejects its (well-formed) input, 2 when text fails to parse
//! or the invocation itself is malformed.

use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use concordance_core::braid::{
    alexander_of_closure, alexander_turks_head, conway_turks_head, turks_head_roots, BraidWord,
};
use concordance_core::graph::{GraphError, WeightedGraph};
use concordance_core::magnus::{
    first_nontrivial_degree, magnus_expand, mu_invariant, parse_longitudes,
};
use concordance_core::matrix::SymmetricMatrix;
use concordance_core::obstructions::{
    fox_milnor_test, independence_certificate, knot_determinant, ObstructionVerdict,
};
use concordance_core::scalar::{lucas, Int};
use concordance_core::turks::{cha_alexander, det_turks_head, lemma_det_int_report, DetIntReport, TurksHeadIndex};

use crate::poly::parse_poly;
use crate::report::{
    dominance_value, inertia_value, int_value, poly_value, rational_value, RunReport,
};

#[derive(Parser)]
#[command(
    name = "concordance-lab",
    version,
    about = "Exact-arithmetic calculators for knot concordance obstructions"
)]
struct Cli {
    /// Emit machine-readable json instead of flat text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Turk's-head family: determinants, lemma report, polynomials, roots.
    #[command(subcommand)]
    Turks(TurksCmd),
    /// Invariants of braid closures.
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Weighted-graph calculators on a graph text file.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Sliceness obstructions.
    #[command(subcommand)]
    Obstruct(ObstructCmd),
    /// Independence certificate for a list of odd family members.
    Independence {
        /// Comma-separated indices, e.g. 5,7,11,13
        #[arg(value_name = "N1,N2,...")]
        family: String,
    },
    /// Milnor invariants of a string link given by a longitude file.
    Milnor {
        /// Optional mode: `first-degree` reports the lowest nontrivial degree.
        #[arg(value_name = "MODE")]
        mode: Option<String>,
        /// Longitude file: `strands <m>`, then `longitude <j>: <letters>`.
        #[arg(long, value_name = "FILE")]
        file: PathBuf,
        /// Truncation degree (default 8).
        #[arg(long, value_name = "D")]
        degree: Option<usize>,
        /// Single invariant index i1,...,ir,j instead of the full table.
        #[arg(long, value_name = "I1,...,J")]
        index: Option<String>,
    },
}

#[derive(Subcommand)]
enum TurksCmd {
    /// Spanning-tree determinant with the Lucas cross-check.
    Det { n: u64 },
    /// Full determinant-lemma report (interpolation, inertia, dominance).
    Lemma { n: u64 },
    /// Alexander polynomial of the closure.
    Alexander { n: u64 },
    /// Conway polynomial of the closure.
    Conway { n: u64 },
    /// All roots of the Alexander polynomial, with residuals.
    Roots { n: u64 },
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Alexander polynomial of the braid closure (must be a knot).
    Alexander {
        /// Braid word, e.g. "1 -2 1 -2" or "strands=4 1 2 -3".
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Weighted spanning-tree count via the matrix-tree determinant.
    Count {
        file: PathBuf,
        /// Cross-check against direct enumeration (vertex-bounded).
        #[arg(long)]
        oracle: bool,
    },
    /// Inertia of the (optionally reduced) Laplacian.
    Inertia {
        file: PathBuf,
        /// Remove this vertex first, i.e. use the reduced Laplacian.
        #[arg(long, value_name = "VERTEX")]
        remove: Option<String>,
    },
    /// Gershgorin disks and diagonal dominance of the Laplacian.
    Gershgorin {
        file: PathBuf,
        /// Remove this vertex first, i.e. use the reduced Laplacian.
        #[arg(long, value_name = "VERTEX")]
        remove: Option<String>,
    },
}

#[derive(Subcommand)]
enum ObstructCmd {
    /// Fox-Milnor squareness test on an Alexander polynomial.
    FoxMilnor(FoxMilnorArgs),
    /// Fox-Milnor test for the twist-family knot with parameter m.
    Cha { m: u64 },
}

#[derive(Args)]
struct FoxMilnorArgs {
    /// Braid word whose closure supplies the polynomial.
    #[arg(
        long,
        value_name = "WORD",
        allow_hyphen_values = true,
        conflicts_with = "poly",
        required_unless_present = "poly"
    )]
    braid: Option<String>,
    /// Polynomial expression, e.g. "-1t^-1 + 3 - 1t^1".
    #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
    poly: Option<String>,
}

/// Domain errors exit 1, usage/parse errors exit 2.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn domain(e: impl fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let json = cli.json;
    match execute(cli.command) {
        Ok(report) => {
            print!("{}", report.render(json));
            0
        }
        Err(CliError::Domain(message)) => {
            eprintln!("error: {message}");
            1
        }
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn execute(command: Command) -> Result<RunReport, CliError> {
    match command {
        Command::Turks(cmd) => turks(cmd),
        Command::Braid(BraidCmd::Alexander { word }) => braid_alexander(&word),
        Command::Graph(cmd) => graph(cmd),
        Command::Obstruct(cmd) => obstruct(cmd),
        Command::Independence { family } => independence(&family),
        Command::Milnor {
            mode,
            file,
            degree,
            index,
        } => milnor(mode.as_deref(), &file, degree, index.as_deref()),
    }
}

fn family_index(n: u64) -> Result<TurksHeadIndex, CliError> {
    TurksHeadIndex::new(n).map_err(domain)
}

fn turks(cmd: TurksCmd) -> Result<RunReport, CliError> {
    match cmd {
        TurksCmd::Det { n } => {
            let idx = family_index(n)?;
            let det = det_turks_head(idx).map_err(domain)?;
            let reference = lucas(2 * n) - Int::from(2);
            Ok(RunReport::new("turks det")
                .input("n", n)
                .result("det", int_value(&det))
                .result("lucas_reference", int_value(&reference))
                .result("lucas_check", det == reference))
        }
        TurksCmd::Lemma { n } => {
            let idx = family_index(n)?;
            let report = lemma_det_int_report(idx).map_err(domain)?;
            Ok(merge_results(
                RunReport::new("turks lemma").input("n", n),
                det_report_value(&report),
            ))
        }
        TurksCmd::Alexander { n } => {
            let delta = alexander_turks_head(n).map_err(domain)?;
            let det = knot_determinant(&delta).map_err(domain)?;
            Ok(RunReport::new("turks alexander")
                .input("n", n)
                .result("alexander", poly_value(&delta))
                .result("det", int_value(&det)))
        }
        TurksCmd::Conway { n } => {
            let conway = conway_turks_head(n).map_err(domain)?;
            Ok(RunReport::new("turks conway")
                .input("n", n)
                .result("conway", poly_value(&conway)))
        }
        TurksCmd::Roots { n } => {
            let delta = alexander_turks_head(n).map_err(domain)?;
            let roots = turks_head_roots(n).map_err(domain)?;
            let mut max_residual = 0.0f64;
            let items: Vec<Value> = roots
                .iter()
                .map(|root| {
                    let residual = delta.eval_complex64(*root).norm();
                    max_residual = max_residual.max(residual);
                    json!({"re": root.re, "im": root.im, "residual": residual})
                })
                .collect();
            Ok(RunReport::new("turks roots")
                .input("n", n)
                .result("count", items.len())
                .result("roots", Value::Array(items))
                .result("max_residual", max_residual))
        }
    }
}

fn braid_alexander(word: &str) -> Result<RunReport, CliError> {
    let braid = BraidWord::parse(word).map_err(usage)?;
    let delta = alexander_of_closure(&braid).map_err(domain)?;
    let det = knot_determinant(&delta).map_err(domain)?;
    Ok(RunReport::new("braid alexander")
        .input("word", word)
        .result("strands", braid.strands())
        .result("alexander", poly_value(&delta))
        .result("det", int_value(&det)))
}

fn read_graph(file: &Path) -> Result<WeightedGraph, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    WeightedGraph::parse_text(&text).map_err(usage)
}

fn graph_matrix(
    graph: &WeightedGraph,
    remove: Option<&str>,
) -> Result<(SymmetricMatrix, String), CliError> {
    match remove {
        Some(vertex) => Ok((
            graph.reduced_laplacian(vertex).map_err(domain)?,
            format!("reduced laplacian without {vertex}"),
        )),
        None => Ok((graph.laplacian(), "laplacian".to_owned())),
    }
}

fn graph(cmd: GraphCmd) -> Result<RunReport, CliError> {
    match cmd {
        GraphCmd::Count { file, oracle } => {
            let graph = read_graph(&file)?;
            let count = graph.spanning_tree_count().map_err(domain)?;
            let mut report = RunReport::new("graph count")
                .input("file", file.display().to_string())
                .input("oracle", oracle)
                .result("vertices", graph.vertex_count())
                .result("edges", graph.edge_count())
                .result("count", rational_value(&count));
            if oracle {
                let brute = graph.spanning_tree_count_bruteforce(None).map_err(|e| {
                    domain(match e {
                        GraphError::BruteforceBoundExceeded { .. } => format!(
                            "{e}; set CONCORDANCE_LAB_BRUTEFORCE_BOUND to raise the bound"
                        ),
                        other => other.to_string(),
                    })
                })?;
                report = report
                    .result("oracle_count", rational_value(&brute))
                    .result("oracle_match", brute == count);
            }
            Ok(report)
        }
        GraphCmd::Inertia { file, remove } => {
            let graph = read_graph(&file)?;
            let (matrix, name) = graph_matrix(&graph, remove.as_deref())?;
            Ok(RunReport::new("graph inertia")
                .input("file", file.display().to_string())
                .input("matrix", name)
                .result("dim", matrix.dim())
                .result("inertia", inertia_value(&matrix.inertia()))
                .result("positive_definite", matrix.is_positive_definite()))
        }
        GraphCmd::Gershgorin { file, remove } => {
            let graph = read_graph(&file)?;
            let (matrix, name) = graph_matrix(&graph, remove.as_deref())?;
            let disks: Vec<Value> = matrix
                .gershgorin()
                .iter()
                .map(|disk| {
                    json!({
                        "center": rational_value(&disk.center),
                        "radius": rational_value(&disk.radius),
                    })
                })
                .collect();
            Ok(RunReport::new("graph gershgorin")
                .input("file", file.display().to_string())
                .input("matrix", name)
                .result("disks", Value::Array(disks))
                .result("dominance", dominance_value(&matrix.dominance()))
                .result("diagonal_positive", matrix.diagonal_all_positive()))
        }
    }
}

fn verdict_results(report: RunReport, verdict: &ObstructionVerdict) -> RunReport {
    report
        .result("alexander", poly_value(&verdict.delta))
        .result("det", int_value(&verdict.determinant))
        .result("delta_is_square", verdict.delta_is_square)
        .result("det_is_square", verdict.det_is_square)
        .result(
            "witness",
            verdict.witness.as_ref().map_or(Value::Null, poly_value),
        )
        .result(
            "obstructed",
            !verdict.delta_is_square || !verdict.det_is_square,
        )
}

fn obstruct(cmd: ObstructCmd) -> Result<RunReport, CliError> {
    match cmd {
        ObstructCmd::FoxMilnor(args) => match (args.braid, args.poly) {
            (Some(word), None) => {
                let braid = BraidWord::parse(&word).map_err(usage)?;
                let delta = alexander_of_closure(&braid).map_err(domain)?;
                let verdict = fox_milnor_test(&word, &delta).map_err(domain)?;
                Ok(verdict_results(
                    RunReport::new("obstruct fox-milnor").input("braid", word),
                    &verdict,
                ))
            }
            (None, Some(expr)) => {
                let raw = parse_poly(&expr).map_err(usage)?;
                let delta = raw.normalize_alexander().map_err(domain)?;
                let verdict = fox_milnor_test(&expr, &delta).map_err(domain)?;
                Ok(verdict_results(
                    RunReport::new("obstruct fox-milnor").input("poly", expr),
                    &verdict,
                ))
            }
            _ => unreachable!("clap enforces exactly one of --braid/--poly"),
        },
        ObstructCmd::Cha { m } => {
            if m == 0 {
                return Err(CliError::Domain(
                    "twist parameter must be at least 1".into(),
                ));
            }
            let delta = cha_alexander(m);
            let verdict = fox_milnor_test(format!("K{m}"), &delta).map_err(domain)?;
            Ok(verdict_results(
                RunReport::new("obstruct cha").input("m", m),
                &verdict,
            ))
        }
    }
}

fn parse_u64_list(text: &str, what: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| usage(format!("malformed {what} entry `{tok}`")))
        })
        .collect()
}

fn independence(family_text: &str) -> Result<RunReport, CliError> {
    let family = parse_u64_list(family_text, "family")?;
    let cert = independence_certificate(&family).map_err(domain)?;
    let reports: Vec<Value> = cert.det_reports.iter().map(det_report_value).collect();
    Ok(RunReport::new("independence")
        .input("family", family_text)
        .result("family", Value::from(cert.family.clone()))
        .result("pairwise_coprime", cert.pairwise_coprime)
        .result(
            "alexander_pairwise_coprime",
            cert.alexander_pairwise_coprime,
        )
        .result("reports", Value::Array(reports))
        .result("conclusion", cert.conclusion))
}

fn milnor(
    mode: Option<&str>,
    file: &Path,
    degree: Option<usize>,
    index: Option<&str>,
) -> Result<RunReport, CliError> {
    let first_degree_mode = match mode {
        None => false,
        Some("first-degree") => true,
        Some(other) => {
            return Err(usage(format!(
                "unknown milnor mode `{other}` (expected `first-degree`)"
            )))
        }
    };
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("cannot read {}: {e}", file.display())))?;
    let longitudes = parse_longitudes(&text).map_err(usage)?;
    let strands = longitudes.len();
    let base = |name: &str| {
        RunReport::new(name)
            .input("file", file.display().to_string())
            .result("strands", strands)
    };
    if first_degree_mode {
        if index.is_some() {
            return Err(usage("--index is not valid with `first-degree`"));
        }
        let max_degree = degree.unwrap_or(8);
        let first = first_nontrivial_degree(&longitudes, max_degree).map_err(domain)?;
        return Ok(base("milnor first-degree")
            .input("degree", max_degree)
            .result("first_nontrivial_degree", first.map_or(Value::Null, Value::from)));
    }
    if let Some(index_text) = index {
        let entries: Vec<usize> = parse_u64_list(index_text, "index")?
            .into_iter()
            .map(|v| v as usize)
            .collect();
        let mu = mu_invariant(&longitudes, &entries).map_err(domain)?;
        return Ok(base("milnor")
            .input("index", index_text)
            .result("index", Value::from(entries))
            .result("mu", int_value(&mu)));
    }
    let truncation = degree.unwrap_or(8);
    let mut invariants = Vec::new();
    for (j, longitude) in longitudes.iter().enumerate() {
        let series = magnus_expand(longitude, truncation);
        let mut terms: Vec<(Vec<u8>, Int)> = series
            .terms()
            .filter(|(monomial, _)| !monomial.is_empty())
            .map(|(monomial, coeff)| (monomial.to_vec(), coeff.clone()))
            .collect();
        terms.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        for (monomial, coeff) in terms {
            let mut idx: Vec<u64> = monomial.iter().map(|&g| u64::from(g)).collect();
            idx.push(j as u64 + 1);
            invariants.push(json!({"index": idx, "mu": int_value(&coeff)}));
        }
    }
    Ok(base("milnor")
        .input("degree", truncation)
        .result("count", invariants.len())
        .result("invariants", Value::Array(invariants)))
}

fn merge_results(report: RunReport, value: Value) -> RunReport {
    let Value::Object(map) = value else {
        unreachable!("det report renders as an object");
    };
    map.into_iter()
        .fold(report, |acc, (key, value)| acc.result(&key, value))
}

fn det_report_value(report: &DetIntReport) -> Value {
    json!({
        "n": report.n,
        "det_j": int_value(&report.det_j),
        "det_butterfly": int_value(&report.det_butterfly),
        "lucas_match": report.lucas_match,
        "det_j_odd": report.det_j_odd,
        "det_butterfly_even": report.det_butterfly_even,
        "inequality_holds": report.inequality_holds,
        "ratio_is_integer": report.ratio_is_integer,
        "t_quarter": rational_value(&report.t_quarter),
        "t_half": rational_value(&report.t_half),
        "scaled_quarter_dominance": dominance_value(&report.scaled_quarter_dominance),
        "scaled_quarter_diagonal_positive": report.scaled_quarter_diagonal_positive,
        "scaled_quarter_positive_definite": report.scaled_quarter_positive_definite,
        "half_inertia": inertia_value(&report.half_inertia),
        "minor_without_c_positive_definite": report.minor_without_c_positive_definite,
        "block_matches_template": report.block_matches_template,
        "block_determinant": rational_value(&report.block_determinant),
        "all_checks_pass": report.all_checks_pass(),
    })
}
