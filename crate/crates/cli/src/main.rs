//! Command-line front end: JSON in, JSON (or table / DOT) out.
//!
//! Exit codes: 0 success, 2 validation error (including malformed input),
//! 3 size bound exceeded, 1 internal error.

mod output;

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use tropcor_core::json as schema;
use tropcor_core::json::{
    CoverSpec, MatrixSpec, MulticurveSpec, PointSpec, TreeSpec, TypeSpec,
};
use tropcor_core::monodromy::{orbifold_signature, DynamicalPortrait, MonodromyCover};
use tropcor_core::oracle;
use tropcor_core::scan::{iterate_weights, scan_obstructions, ScanOptions};
use tropcor_core::trees::{enumerate_stable_trees, MarkingSet, TreeError};
use tropcor_core::{CombinatorialType, HurwitzConePoint, PullbackTree};

#[derive(Parser)]
#[command(name = "tropcor", version, about = "Exact tropical correspondence toolkit for sphere covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input file path, or '-' for stdin.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest accepted marking size.
    #[arg(long, global = true, default_value_t = 9)]
    max_n: usize,
    /// Largest accepted cover degree.
    #[arg(long, global = true, default_value_t = 8)]
    max_degree: usize,
    /// Seed for certificate replay probes.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a cover (and portrait, when present) and tabulate its fiber.
    ValidateCover,
    /// Orbifold signature and hyperbolicity of a cover with portrait.
    Orbifold,
    /// Stable-tree enumeration utilities.
    Trees {
        #[command(subcommand)]
        command: TreesCommand,
    },
    /// Pull a standard multicurve back through the cover.
    Pullback,
    /// Weight-transformation matrices, image classes, and stability.
    Tlt,
    /// Combinatorial types of admissible covers.
    Type {
        #[command(subcommand)]
        command: TypeCommand,
    },
    /// Cone projections of a point of a type's cone.
    Project {
        #[command(subcommand)]
        command: ProjectCommand,
    },
    /// Lift a weighted multicurve into its cone (and project it back).
    Nu,
    /// Branch matrix of the cone of a multicurve's type.
    BranchMatrix,
    /// Weak-fixedness, spectral certificate, and obstruction verdict.
    FixedReport,
    /// Scan all standard multicurves for weakly fixed cones.
    Scan {
        /// Largest number of curve classes per multicurve.
        #[arg(long)]
        max_blocks: Option<usize>,
        /// Braid word such as "2,-1"; repeatable.
        #[arg(long)]
        braid: Vec<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Iterate the weight transformation on a weighted multicurve.
    Iterate {
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Brute-force enumeration oracles.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Graph exports.
    Export {
        #[command(subcommand)]
        command: ExportCommand,
    },
}

#[derive(Subcommand)]
enum TreesCommand {
    /// Enumerate compatible split systems and count them by size.
    Enumerate(TreesEnumerateArgs),
}

#[derive(Args)]
struct TreesEnumerateArgs {
    /// Marking size; labels default to a, b, c, ...
    #[arg(long)]
    n: Option<usize>,
    /// Explicit labels, comma separated (overrides --n).
    #[arg(long)]
    labels: Option<String>,
    #[arg(long)]
    max_edges: Option<usize>,
    /// Include the split systems themselves, not only the counts.
    #[arg(long)]
    list: bool,
}

#[derive(Subcommand)]
enum TypeCommand {
    /// Build the type of a multicurve's pullback.
    Build,
    /// Validate a raw type record against a cover profile.
    Validate,
    /// Build and then contract a set of target edges.
    Contract,
}

#[derive(Subcommand)]
enum ProjectCommand {
    /// Target-curve projection (cone coordinates scaled by lcm degrees).
    Pi1,
    /// Source-curve projection pushed to the branch set; includes the lift.
    Pi2,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Enumerate realizable combinatorial types of the cover profile.
    EnumerateTypes {
        /// Bound on target-tree edges when no tree is given.
        #[arg(long)]
        max_edges: Option<usize>,
    },
}

#[derive(Subcommand)]
enum ExportCommand {
    /// DOT rendering of a tree, a tropical curve, or a combinatorial type.
    Dot {
        #[arg(long, value_enum)]
        what: ExportWhat,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExportWhat {
    Tree,
    Curve,
    Type,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn size_bound(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

macro_rules! impl_validation_failure {
    ($($ty:ty),*) => {$(
        impl From<$ty> for Failure {
            fn from(err: $ty) -> Failure {
                let text = format!("{err}");
                if size_bound_message(&text) {
                    Failure::size_bound(text)
                } else {
                    Failure::validation(text)
                }
            }
        }
    )*};
}

fn size_bound_message(text: &str) -> bool {
    text.contains("exceeds") || text.contains("limited to")
}

impl_validation_failure!(
    tropcor_core::trees::TreeError,
    tropcor_core::tropical::TropicalError,
    tropcor_core::monodromy::MonodromyError,
    tropcor_core::multicurve::MulticurveError,
    tropcor_core::pullback::PullbackError,
    tropcor_core::hurwitz::TypeError,
    tropcor_core::spectral::SpectralError,
    tropcor_core::scan::ScanError,
    tropcor_core::oracle::OracleError,
    tropcor_core::json::JsonError
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            // Tolerate closed pipes (e.g. `tropcor ... | head`).
            use std::io::Write;
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let report = json!({
                "ok": false,
                "error": failure.message,
            });
            eprintln!("{}", serde_json::to_string_pretty(&report).expect("report"));
            ExitCode::from(failure.code)
        }
    }
}

fn read_input(cli: &Cli) -> Result<String, Failure> {
    match cli.input.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::internal(format!("reading stdin: {e}")))?;
            Ok(buf)
        }
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::internal(format!("reading {path}: {e}"))),
    }
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| {
        Failure::validation(format!(
            "malformed JSON at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

fn pretty(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}

#[derive(Deserialize)]
struct CoverInput {
    #[serde(flatten)]
    cover: CoverSpec,
}

#[derive(Deserialize)]
struct CoverMulticurveInput {
    cover: CoverSpec,
    multicurve: MulticurveSpec,
    #[serde(default)]
    coords: Option<Vec<String>>,
    #[serde(default)]
    contract: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct TypeInput {
    cover: CoverSpec,
    #[serde(rename = "type")]
    candidate: TypeSpec,
}

#[derive(Deserialize)]
struct OracleInput {
    cover: CoverSpec,
    #[serde(default)]
    t1_splits: Option<Vec<Vec<String>>>,
}

fn load_cover(cli: &Cli, spec: &CoverSpec) -> Result<Arc<MonodromyCover>, Failure> {
    if spec.order.len() > cli.max_n {
        return Err(Failure::size_bound(format!(
            "marking size {} exceeds --max-n {}",
            spec.order.len(),
            cli.max_n
        )));
    }
    if spec.degree > cli.max_degree {
        return Err(Failure::size_bound(format!(
            "degree {} exceeds --max-degree {}",
            spec.degree, cli.max_degree
        )));
    }
    Ok(Arc::new(spec.to_cover()?))
}

fn require_portrait(
    spec: &CoverSpec,
    cover: &MonodromyCover,
) -> Result<DynamicalPortrait, Failure> {
    spec.to_portrait(cover)?
        .ok_or_else(|| Failure::validation("this command needs an \"iota\" portrait field"))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::ValidateCover => {
            let input: CoverInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = input.cover.to_portrait(&cover)?;
            let mut value = serde_json::to_value(schema::cover_summary(&cover))
                .map_err(|e| Failure::internal(e.to_string()))?;
            value["ok"] = json!(true);
            value["portrait_valid"] = json!(portrait.is_some());
            if let Some(p) = &portrait {
                value["step"] = json!(cover
                    .marking()
                    .labels()
                    .iter()
                    .enumerate()
                    .map(|(i, l)| (l.clone(), cover.marking().label(p.step(i)).to_string()))
                    .collect::<BTreeMap<_, _>>());
            }
            Ok(pretty(&value))
        }
        Command::Orbifold => {
            let input: CoverInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let signature = orbifold_signature(&cover, &portrait);
            let spec = schema::orbifold_spec(&cover, &signature);
            match cli.format {
                Format::Json => Ok(pretty(
                    &serde_json::to_value(&spec).map_err(|e| Failure::internal(e.to_string()))?,
                )),
                Format::Table => Ok(output::orbifold_table(&spec)),
            }
        }
        Command::Trees { command } => {
            let TreesCommand::Enumerate(args) = command;
            let labels: Vec<String> = match (&args.labels, args.n) {
                (Some(text), _) => text.split(',').map(str::to_string).collect(),
                (None, Some(n)) => default_labels(n),
                (None, None) => {
                    return Err(Failure::validation("pass --n or --labels"));
                }
            };
            if labels.len() > cli.max_n {
                return Err(Failure::size_bound(format!(
                    "marking size {} exceeds --max-n {}",
                    labels.len(),
                    cli.max_n
                )));
            }
            let marking = MarkingSet::new(labels).map_err(Failure::from)?;
            let iter = enumerate_stable_trees(&marking, args.max_edges, Some(cli.max_n))
                .map_err(|e| match e {
                    TreeError::SizeBound(n, b) => {
                        Failure::size_bound(format!("marking size {n} exceeds bound {b}"))
                    }
                    other => Failure::from(other),
                })?;
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            let mut listed = Vec::new();
            for tree in iter {
                *counts.entry(tree.edge_count()).or_insert(0) += 1;
                if args.list {
                    listed.push(TreeSpec::from_tree(&tree));
                }
            }
            let mut value = json!({
                "ok": true,
                "marking": marking.labels(),
                "counts": counts
                    .iter()
                    .map(|(k, v)| (k.to_string(), *v))
                    .collect::<BTreeMap<String, usize>>(),
                "total": counts.values().sum::<usize>(),
            });
            if args.list {
                value["trees"] =
                    serde_json::to_value(&listed).map_err(|e| Failure::internal(e.to_string()))?;
            }
            match cli.format {
                Format::Json => Ok(pretty(&value)),
                Format::Table => Ok(output::counts_table(&counts)),
            }
        }
        Command::Pullback => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let mc = input.multicurve.to_multicurve(cover.marking())?;
            let tree = PullbackTree::build(&cover, &mc)?;
            let ctype = CombinatorialType::from_pullback(&tree);
            let value = json!({
                "ok": true,
                "multicurve": MulticurveSpec::from_multicurve(&mc),
                "type": TypeSpec::from_type(&ctype),
                "source_splits": tree
                    .upstairs_tree()
                    .splits()
                    .iter()
                    .map(|s| s.side_labels(cover.upstairs_marking()))
                    .collect::<Vec<_>>(),
            });
            Ok(pretty(&value))
        }
        Command::Tlt => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let mc = input.multicurve.to_multicurve(cover.marking())?;
            let tree = PullbackTree::build(&cover, &mc)?;
            let tilde = tree.tlt_tilde_matrix();
            let matrix = tree.tlt_matrix(&portrait);
            let stability = tree.stability(&portrait)?;
            if let (Some(m), Some(c)) = (&stability.matrix, &stability.certificate) {
                tropcor_core::spectral::verify_certificate(m, c, cli.seed, 10)?;
            }
            let value = json!({
                "ok": true,
                "multicurve": MulticurveSpec::from_multicurve(&mc),
                "tilde_matrix": MatrixSpec::from_tlt(&tilde, cover.upstairs_marking()),
                "matrix": MatrixSpec::from_tlt(&matrix, cover.marking()),
                "phi_star": tree
                    .phi_star(&portrait)
                    .iter()
                    .map(|s| s.side_labels(cover.marking()))
                    .collect::<Vec<_>>(),
                "stable": stability.stable,
                "obstruction": stability.obstruction,
                "certificate": stability
                    .matrix
                    .as_ref()
                    .zip(stability.certificate.as_ref())
                    .map(|(m, c)| schema::CertificateSpec::from_certificate(m, c)),
            });
            Ok(pretty(&value))
        }
        Command::Type { command } => {
            let text = read_input(cli)?;
            match command {
                TypeCommand::Build => {
                    let input: CoverMulticurveInput = parse_json(&text)?;
                    let cover = load_cover(cli, &input.cover)?;
                    let mc = input.multicurve.to_multicurve(cover.marking())?;
                    let ctype = CombinatorialType::build(&cover, &mc)?;
                    type_report(&ctype)
                }
                TypeCommand::Validate => {
                    let input: TypeInput = parse_json(&text)?;
                    let cover = load_cover(cli, &input.cover)?;
                    let ctype = input.candidate.to_type(&cover)?;
                    type_report(&ctype)
                }
                TypeCommand::Contract => {
                    let input: CoverMulticurveInput = parse_json(&text)?;
                    let cover = load_cover(cli, &input.cover)?;
                    let mc = input.multicurve.to_multicurve(cover.marking())?;
                    let ctype = CombinatorialType::build(&cover, &mc)?;
                    let remove = input
                        .contract
                        .unwrap_or_default()
                        .iter()
                        .map(|labels| schema::split_from_labels(labels, cover.marking()))
                        .collect::<Result<std::collections::BTreeSet<_>, _>>()?;
                    let contracted = ctype.contract(&remove)?;
                    type_report(&contracted)
                }
            }
        }
        Command::Project { command } => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let mc = input.multicurve.to_multicurve(cover.marking())?;
            let ctype = Arc::new(CombinatorialType::build(&cover, &mc)?);
            let coords_list = input
                .coords
                .ok_or_else(|| Failure::validation("supply \"coords\" aligned with the blocks"))?;
            // Alignment through normalization reuses the weight machinery.
            let aligned = MulticurveSpec {
                blocks: input.multicurve.blocks.clone(),
                weights: Some(coords_list),
            }
            .to_weighted(cover.marking())?;
            let coords: BTreeMap<_, _> = (0..aligned.multicurve().len())
                .map(|i| {
                    (
                        aligned.multicurve().split_of_block(i),
                        aligned.weights()[i].clone(),
                    )
                })
                .collect();
            let point = HurwitzConePoint::new(Arc::clone(&ctype), coords)?;
            let value = match command {
                ProjectCommand::Pi1 => {
                    let image = ctype.pi1(&point)?;
                    json!({ "ok": true, "pi1": PointSpec::from_point(&image) })
                }
                ProjectCommand::Pi2 => {
                    let portrait = require_portrait(&input.cover, &cover)?;
                    let tilde = ctype.pi2_tilde(&point)?;
                    let down = ctype.pi2(&portrait, &point)?;
                    json!({
                        "ok": true,
                        "pi2_tilde": PointSpec::from_point(&tilde),
                        "pi2": PointSpec::from_point(&down),
                    })
                }
            };
            Ok(pretty(&value))
        }
        Command::Nu => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let weighted = input.multicurve.to_weighted(cover.marking())?;
            let (ctype, point) = tropcor_core::hurwitz::nu_point(&cover, &weighted)?;
            let value = json!({
                "ok": true,
                "type": TypeSpec::from_type(&ctype),
                "coords": point
                    .coords
                    .iter()
                    .map(|(s, v)| (s.key(cover.marking()), v.to_string()))
                    .collect::<BTreeMap<_, _>>(),
                "pi1": PointSpec::from_point(&ctype.pi1(&point)?),
                "pi2_tilde": PointSpec::from_point(&ctype.pi2_tilde(&point)?),
                "pi2": PointSpec::from_point(&ctype.pi2(&portrait, &point)?),
            });
            Ok(pretty(&value))
        }
        Command::BranchMatrix => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let mc = input.multicurve.to_multicurve(cover.marking())?;
            let ctype = CombinatorialType::build(&cover, &mc)?;
            let matrix = ctype.branch_matrix(&portrait);
            let weakly_fixed = ctype.is_weakly_fixed(&portrait)?;
            let mut value = json!({
                "ok": true,
                "matrix": MatrixSpec::from_tlt(&matrix, cover.marking()),
                "weakly_fixed": weakly_fixed,
                "lcm_degrees": ctype
                    .lcm_degrees()
                    .iter()
                    .map(|(s, l)| (s.key(cover.marking()), *l))
                    .collect::<BTreeMap<_, _>>(),
            });
            if weakly_fixed && !ctype.target_tree().is_one_vertex() {
                let index: Vec<_> = ctype.target_tree().splits().iter().cloned().collect();
                let square = matrix.squared(ctype.target_tree().splits());
                value["square_matrix"] = serde_json::to_value(MatrixSpec::from_square(
                    &square,
                    &index,
                    cover.marking(),
                ))
                .map_err(|e| Failure::internal(e.to_string()))?;
            }
            Ok(pretty(&value))
        }
        Command::FixedReport => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let mc = input.multicurve.to_multicurve(cover.marking())?;
            let ctype = CombinatorialType::build(&cover, &mc)?;
            let report = ctype.fixed_cone_report(&portrait)?;
            if let (Some(m), Some(c)) = (&report.matrix, &report.certificate) {
                tropcor_core::spectral::verify_certificate(m, c, cli.seed, 10)?;
            }
            let spec = schema::fixed_cone_report_spec(&report, Some(&mc), &[]);
            match cli.format {
                Format::Json => Ok(pretty(
                    &serde_json::to_value(&spec).map_err(|e| Failure::internal(e.to_string()))?,
                )),
                Format::Table => Ok(output::fixed_report_table(&spec)),
            }
        }
        Command::Scan {
            max_blocks,
            braid,
            workers,
        } => {
            let input: CoverInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let braid_words = braid
                .iter()
                .map(|text| parse_braid_word(text))
                .collect::<Result<Vec<_>, _>>()?;
            let options = ScanOptions {
                max_blocks: *max_blocks,
                braid_words,
                workers: *workers,
            };
            let report = scan_obstructions(&cover, &portrait, &options)?;
            for entry in &report.entries {
                if let (Some(m), Some(c)) = (&entry.report.matrix, &entry.report.certificate) {
                    tropcor_core::spectral::verify_certificate(m, c, cli.seed, 10)?;
                }
            }
            let spec = schema::scan_report_spec(&cover, &report);
            match cli.format {
                Format::Json => Ok(pretty(
                    &serde_json::to_value(&spec).map_err(|e| Failure::internal(e.to_string()))?,
                )),
                Format::Table => Ok(output::scan_table(&spec)),
            }
        }
        Command::Iterate { steps } => {
            let input: CoverMulticurveInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let portrait = require_portrait(&input.cover, &cover)?;
            let weighted = input.multicurve.to_weighted(cover.marking())?;
            let report = iterate_weights(&cover, &portrait, &weighted, *steps)?;
            let spec = schema::iteration_report_spec(cover.marking(), &report);
            match cli.format {
                Format::Json => Ok(pretty(
                    &serde_json::to_value(&spec).map_err(|e| Failure::internal(e.to_string()))?,
                )),
                Format::Table => Ok(output::iterate_table(&spec)),
            }
        }
        Command::Oracle { command } => {
            let OracleCommand::EnumerateTypes { max_edges } = command;
            let input: OracleInput = parse_json(&read_input(cli)?)?;
            let cover = load_cover(cli, &input.cover)?;
            let mut sections = Vec::new();
            match &input.t1_splits {
                Some(splits) => {
                    let splits = splits
                        .iter()
                        .map(|s| schema::split_from_labels(s, cover.marking()))
                        .collect::<Result<Vec<_>, _>>()?;
                    let tree = tropcor_core::trees::MarkedTree::new(
                        Arc::clone(cover.marking()),
                        splits,
                    )?;
                    let types = oracle::enumerate_profile_types(&cover, &tree)?;
                    sections.push((tree, types));
                }
                None => {
                    sections = oracle::enumerate_all_profile_types(&cover, *max_edges)?;
                }
            }
            let value = json!({
                "ok": true,
                "trees": sections
                    .iter()
                    .map(|(tree, types)| {
                        json!({
                            "t1": TreeSpec::from_tree(tree),
                            "types": types
                                .iter()
                                .map(TypeSpec::from_type)
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect::<Vec<_>>(),
            });
            Ok(pretty(&value))
        }
        Command::Export { command } => {
            let ExportCommand::Dot { what } = command;
            let text = read_input(cli)?;
            let dot = match what {
                ExportWhat::Tree => {
                    let spec: TreeSpec = parse_json(&text)?;
                    tropcor_core::dot::tree_to_dot(&spec.to_tree()?)
                }
                ExportWhat::Curve => {
                    let spec: PointSpec = parse_json(&text)?;
                    tropcor_core::dot::point_to_dot(&spec.to_point()?)
                }
                ExportWhat::Type => {
                    let input: CoverMulticurveInput = parse_json(&text)?;
                    let cover = load_cover(cli, &input.cover)?;
                    let mc = input.multicurve.to_multicurve(cover.marking())?;
                    let ctype = CombinatorialType::build(&cover, &mc)?;
                    tropcor_core::dot::type_to_dot(&ctype)
                }
            };
            Ok(dot.trim_end().to_string())
        }
    }
}

fn type_report(ctype: &CombinatorialType) -> Result<String, Failure> {
    let marking = ctype.cover().marking();
    let value = json!({
        "ok": true,
        "type": TypeSpec::from_type(ctype),
        "lcm_degrees": ctype
            .lcm_degrees()
            .iter()
            .map(|(s, l)| (s.key(marking), *l))
            .collect::<BTreeMap<_, _>>(),
    });
    Ok(pretty(&value))
}

fn parse_braid_word(text: &str) -> Result<Vec<i64>, Failure> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Failure::validation(format!("bad braid generator {t:?}")))
        })
        .collect()
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if n <= 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("p{}", i + 1)
            }
        })
        .collect()
}
