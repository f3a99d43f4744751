//! exmat: run base exchange procedures over matroid files and emit JSON
//! certificates.
//!
//! Every invocation writes exactly one JSON document to stdout; diagnostics
//! go to stderr. Exit codes: 0 the command ran and its result is valid,
//! 1 the result is not valid, 2 the input did not parse, 3 a precondition
//! failed, 4 an internal invariant broke.

mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use exmat::bijection::build_bijection;
use exmat::counterexample::{limit_witness, max_admissible_k, verify_forced_prefix};
use exmat::exchange::{
    partition_exchange, partition_exchange_one_infinite, serial_exchange_order,
    symmetric_exchange, symmetric_exchange_cofinite, ExchangeClass,
};
use exmat::models::{random_instance_spec, InstanceKind};
use exmat::oracle::{all_bases, bijection_search, check_axioms, exchange_search, AxiomViolation};
use exmat::{Basis, ElementId, ElementSet, MatroidView};
use serde_json::{json, Value};

use format::{input_digest, lib_err, CliError, MatroidFile, ResultDocument};

#[derive(Parser)]
#[command(name = "exmat", version, about = "Matroid base exchange toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MatroidArg {
    /// Matroid description file (JSON).
    #[arg(long, value_name = "FILE")]
    matroid: PathBuf,
}

#[derive(Args)]
struct BasisArgs {
    /// First basis, comma-separated labels.
    #[arg(long, value_name = "LABELS")]
    b0: Option<String>,
    /// First basis from a JSON array file.
    #[arg(long, value_name = "FILE", conflicts_with = "b0")]
    b0_file: Option<PathBuf>,
    /// Second basis, comma-separated labels.
    #[arg(long, value_name = "LABELS")]
    b1: Option<String>,
    /// Second basis from a JSON array file.
    #[arg(long, value_name = "FILE", conflicts_with = "b1")]
    b1_file: Option<PathBuf>,
}

#[derive(Args)]
struct XArg {
    /// Subset of B0 to exchange, comma-separated labels.
    #[arg(long, value_name = "LABELS")]
    x: Option<String>,
    /// Subset of B0 from a JSON array file.
    #[arg(long, value_name = "FILE", conflicts_with = "x")]
    x_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Exchange X ⊆ B0 against a subset Y of B1 so that (B0∖X)∪Y and
    /// (B1∖Y)∪X are both bases.
    Symmetric {
        #[command(flatten)]
        matroid: MatroidArg,
        #[command(flatten)]
        bases: BasisArgs,
        #[command(flatten)]
        x: XArg,
        /// Exchange everything outside X instead.
        #[arg(long)]
        cofinite: bool,
    },
    /// Exchange an ordered partition of B0 for a matching partition of B1,
    /// with every cumulative tail still a basis.
    Partition {
        #[command(flatten)]
        matroid: MatroidArg,
        #[command(flatten)]
        bases: BasisArgs,
        /// Classes as inline JSON, e.g. '[["a"],["b","c"]]'.
        #[arg(long, value_name = "JSON")]
        classes: Option<String>,
        /// Classes from a JSON file with the same shape.
        #[arg(long, value_name = "FILE", conflicts_with = "classes")]
        classes_file: Option<PathBuf>,
        /// Treat the final class as unbounded: it absorbs the remainder of
        /// B1 instead of running its own exchange.
        #[arg(long)]
        unbounded_last: bool,
    },
    /// Order both bases so that every single swap and every tail swap is a
    /// basis.
    Serial {
        #[command(flatten)]
        matroid: MatroidArg,
        #[command(flatten)]
        bases: BasisArgs,
    },
    /// Enumerate the subset bijection between the bases up to a size cap.
    Bijection {
        #[command(flatten)]
        matroid: MatroidArg,
        #[command(flatten)]
        bases: BasisArgs,
        /// Largest subset size to enumerate (default: the full rank).
        #[arg(long, value_name = "SIZE")]
        max_size: Option<usize>,
    },
    /// Check the forced chord pattern and the two-component limit witness
    /// on the n-vertex truncation of the two-tree figure graph.
    VerifyCounterexample {
        /// Number of vertices (at least 5).
        #[arg(long)]
        n: usize,
        /// Forced prefix length (default: the largest admissible value).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Verify the independence axioms by exhaustive enumeration.
    CheckAxioms {
        #[command(flatten)]
        matroid: MatroidArg,
    },
    /// Exhaustive reference oracles, useful for debugging.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Generate a seeded random matroid file on stdout. The seed comes from
    /// EXMAT_SEED (default 0).
    Gen {
        /// Instance family: uniform, graphic, or gf2.
        #[arg(long)]
        kind: String,
        /// Ground set size.
        #[arg(long)]
        size: usize,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Axiom check; same engine as check-axioms.
    Axioms {
        #[command(flatten)]
        matroid: MatroidArg,
    },
    /// List every basis.
    Bases {
        #[command(flatten)]
        matroid: MatroidArg,
    },
    /// Enumerate every valid exchange partner Y for the given X.
    ExchangeSearch {
        #[command(flatten)]
        matroid: MatroidArg,
        #[command(flatten)]
        bases: BasisArgs,
        #[command(flatten)]
        x: XArg,
    },
    /// Decide whether a size-k subset bijection exists at all.
    BijectionSearch {
        #[command(flatten)]
        matroid: MatroidArg,
        #[command(flatten)]
        bases: BasisArgs,
        /// Subset size.
        #[arg(long)]
        k: usize,
    },
}

impl Command {
    fn label(&self) -> String {
        match self {
            Command::Symmetric { .. } => "symmetric".into(),
            Command::Partition { .. } => "partition".into(),
            Command::Serial { .. } => "serial".into(),
            Command::Bijection { .. } => "bijection".into(),
            Command::VerifyCounterexample { .. } => "verify-counterexample".into(),
            Command::CheckAxioms { .. } => "check-axioms".into(),
            Command::Oracle { command } => match command {
                OracleCommand::Axioms { .. } => "oracle axioms".into(),
                OracleCommand::Bases { .. } => "oracle bases".into(),
                OracleCommand::ExchangeSearch { .. } => "oracle exchange-search".into(),
                OracleCommand::BijectionSearch { .. } => "oracle bijection-search".into(),
            },
            Command::Gen { .. } => "gen".into(),
        }
    }
}

struct Run {
    digest: String,
    certificates: Vec<Value>,
    valid: bool,
}

/// Either a result document body or, for gen, a raw document.
enum Output {
    Document(Run),
    Raw(String),
}

type CmdOut = Result<Output, (String, CliError)>;

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_labels(text: &str) -> ElementSet {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(ElementId::new)
        .collect()
}

fn resolve_set(
    name: &str,
    inline: &Option<String>,
    file: &Option<PathBuf>,
) -> Result<ElementSet, CliError> {
    match (inline, file) {
        (Some(text), None) => Ok(parse_labels(text)),
        (None, Some(path)) => {
            let labels: Vec<String> = serde_json::from_str(&read_file(path)?)
                .map_err(|e| CliError::Parse(format!("--{name}-file: {e}")))?;
            Ok(labels.iter().map(ElementId::new).collect())
        }
        _ => Err(CliError::Parse(format!(
            "provide exactly one of --{name} or --{name}-file"
        ))),
    }
}

fn resolve_bases(args: &BasisArgs) -> Result<(ElementSet, ElementSet), CliError> {
    Ok((
        resolve_set("b0", &args.b0, &args.b0_file)?,
        resolve_set("b1", &args.b1, &args.b1_file)?,
    ))
}

struct Loaded {
    file: MatroidFile,
    view: MatroidView,
}

fn load_matroid(arg: &MatroidArg) -> Result<Loaded, CliError> {
    let file = MatroidFile::parse(&read_file(&arg.matroid)?)?;
    let view = file.to_instance()?.view();
    Ok(Loaded { file, view })
}

fn certify(view: &MatroidView, which: &str, set: ElementSet) -> Result<Basis, CliError> {
    Basis::certify(view, set).map_err(|e| CliError::Precondition(format!("{which}: {e}")))
}

/// Tag an error with the digest computed so far ("" before inputs parse).
fn at(digest: impl Into<String>) -> impl Fn(CliError) -> (String, CliError) {
    let digest = digest.into();
    move |e| (digest.clone(), e)
}

fn run_symmetric(matroid: MatroidArg, bases: BasisArgs, x: XArg, cofinite: bool) -> CmdOut {
    let parse = at("");
    let loaded = load_matroid(&matroid).map_err(&parse)?;
    let (b0set, b1set) = resolve_bases(&bases).map_err(&parse)?;
    let xset = resolve_set("x", &x.x, &x.x_file).map_err(&parse)?;
    let digest = input_digest(&json!({
        "matroid": loaded.file,
        "b0": b0set,
        "b1": b1set,
        "x": xset,
        "cofinite": cofinite,
    }));
    let run = at(digest.clone());
    let b0 = certify(&loaded.view, "b0", b0set).map_err(&run)?;
    let b1 = certify(&loaded.view, "b1", b1set).map_err(&run)?;
    let cert = if cofinite {
        symmetric_exchange_cofinite(&loaded.view, &b0, &b1, &xset)
    } else {
        symmetric_exchange(&loaded.view, &b0, &b1, &xset)
    }
    .map_err(lib_err)
    .map_err(&run)?;
    Ok(Output::Document(Run {
        digest,
        certificates: vec![json!({
            "x": cert.x,
            "y": cert.y,
            "base_a": cert.base_a,
            "base_b": cert.base_b,
        })],
        valid: true,
    }))
}

fn run_partition(
    matroid: MatroidArg,
    bases: BasisArgs,
    classes: Option<String>,
    classes_file: Option<PathBuf>,
    unbounded_last: bool,
) -> CmdOut {
    let parse = at("");
    let loaded = load_matroid(&matroid).map_err(&parse)?;
    let (b0set, b1set) = resolve_bases(&bases).map_err(&parse)?;
    let text = match (classes, classes_file) {
        (Some(t), None) => t,
        (None, Some(p)) => read_file(&p).map_err(&parse)?,
        _ => {
            return Err(parse(CliError::Parse(
                "provide exactly one of --classes or --classes-file".into(),
            )))
        }
    };
    let class_labels: Vec<Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("classes: {e}")))
        .map_err(&parse)?;
    let class_sets: Vec<ElementSet> = class_labels
        .iter()
        .map(|labels| labels.iter().map(ElementId::new).collect())
        .collect();
    let digest = input_digest(&json!({
        "matroid": loaded.file,
        "b0": b0set,
        "b1": b1set,
        "classes": class_sets,
        "unbounded_last": unbounded_last,
    }));
    let run = at(digest.clone());
    let b0 = certify(&loaded.view, "b0", b0set).map_err(&run)?;
    let b1 = certify(&loaded.view, "b1", b1set).map_err(&run)?;
    let plan = if unbounded_last {
        let last = class_sets.len().saturating_sub(1);
        let marked: Vec<ExchangeClass> = class_sets
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i == last {
                    ExchangeClass::Unbounded(s.clone())
                } else {
                    ExchangeClass::Finite(s.clone())
                }
            })
            .collect();
        partition_exchange_one_infinite(&loaded.view, &b0, &b1, &marked)
    } else {
        partition_exchange(&loaded.view, &b0, &b1, &class_sets)
    }
    .map_err(lib_err)
    .map_err(&run)?;
    Ok(Output::Document(Run {
        digest,
        certificates: plan
            .pairs
            .iter()
            .enumerate()
            .map(|(i, (x, y))| json!({"index": i, "x": x, "y": y}))
            .collect(),
        valid: true,
    }))
}

fn run_serial(matroid: MatroidArg, bases: BasisArgs) -> CmdOut {
    let parse = at("");
    let loaded = load_matroid(&matroid).map_err(&parse)?;
    let (b0set, b1set) = resolve_bases(&bases).map_err(&parse)?;
    let digest = input_digest(&json!({
        "matroid": loaded.file,
        "b0": b0set,
        "b1": b1set,
    }));
    let run = at(digest.clone());
    let b0 = certify(&loaded.view, "b0", b0set).map_err(&run)?;
    let b1 = certify(&loaded.view, "b1", b1set).map_err(&run)?;
    let order = serial_exchange_order(&loaded.view, &b0, &b1)
        .map_err(lib_err)
        .map_err(&run)?;
    Ok(Output::Document(Run {
        digest,
        certificates: vec![json!({
            "e_seq": order.e_seq(),
            "f_seq": order.f_seq(),
        })],
        valid: true,
    }))
}

fn run_bijection(matroid: MatroidArg, bases: BasisArgs, max_size: Option<usize>) -> CmdOut {
    let parse = at("");
    let loaded = load_matroid(&matroid).map_err(&parse)?;
    let (b0set, b1set) = resolve_bases(&bases).map_err(&parse)?;
    let size = max_size.unwrap_or(b0set.len());
    let digest = input_digest(&json!({
        "matroid": loaded.file,
        "b0": b0set,
        "b1": b1set,
        "max_size": size,
    }));
    let run = at(digest.clone());
    let b0 = certify(&loaded.view, "b0", b0set).map_err(&run)?;
    let b1 = certify(&loaded.view, "b1", b1set).map_err(&run)?;
    let bijection = build_bijection(&loaded.view, &b0, &b1)
        .map_err(lib_err)
        .map_err(&run)?;
    let pairs = bijection
        .enumerate_graph(size)
        .map_err(lib_err)
        .map_err(&run)?;
    Ok(Output::Document(Run {
        digest,
        certificates: pairs
            .iter()
            .map(|(input, image)| json!({"input": input, "image": image}))
            .collect(),
        valid: true,
    }))
}

fn run_verify_counterexample(n: usize, k: Option<usize>) -> CmdOut {
    let parse = at("");
    if n < 5 {
        return Err(parse(CliError::Precondition(format!(
            "need n >= 5 for a meaningful truncation, got {n}"
        ))));
    }
    let k = k.unwrap_or_else(|| max_admissible_k(n));
    let digest = input_digest(&json!({"n": n, "k": k}));
    let run = at(digest.clone());
    let report = verify_forced_prefix(n, k).map_err(lib_err).map_err(&run)?;
    let witness = limit_witness(n).map_err(lib_err).map_err(&run)?;
    let valid = report.holds && !report.vacuous && witness.len() == 2;
    Ok(Output::Document(Run {
        digest,
        certificates: vec![json!({
            "n": report.n,
            "k": report.k,
            "candidate_count": report.candidate_count,
            "holds": report.holds,
            "vacuous": report.vacuous,
            "forced": {
                "s0": (0..report.k).map(|j| format!("e{j}")).collect::<Vec<_>>(),
                "s1": (0..report.k).map(|j| format!("h{j}")).collect::<Vec<_>>(),
            },
            "cuts": report.cuts,
            "limit_component_count": witness.len(),
            "limit_components": witness,
        })],
        valid,
    }))
}

fn axiom_certificates(view: &MatroidView) -> (Vec<Value>, bool) {
    let report = check_axioms(view);
    let witnesses: Vec<Value> = report
        .witnesses
        .iter()
        .map(|w| match w {
            AxiomViolation::EmptySetDependent => json!({"violation": "empty-set-dependent"}),
            AxiomViolation::DownwardClosureFails { set, subset } => {
                json!({"violation": "downward-closure", "set": set, "subset": subset})
            }
            AxiomViolation::ExchangeFails { smaller, larger } => {
                json!({"violation": "exchange", "smaller": smaller, "larger": larger})
            }
        })
        .collect();
    let valid = report.passed();
    (
        vec![json!({
            "checked": report.checked,
            "witnesses": witnesses,
            "warnings": report.warnings,
        })],
        valid,
    )
}

fn run_check_axioms(matroid: MatroidArg) -> CmdOut {
    let parse = at("");
    let loaded = load_matroid(&matroid).map_err(&parse)?;
    let digest = input_digest(&json!({"matroid": loaded.file}));
    let (certificates, valid) = axiom_certificates(&loaded.view);
    Ok(Output::Document(Run {
        digest,
        certificates,
        valid,
    }))
}

fn run_oracle(command: OracleCommand) -> CmdOut {
    let parse = at("");
    match command {
        OracleCommand::Axioms { matroid } => run_check_axioms(matroid),
        OracleCommand::Bases { matroid } => {
            let loaded = load_matroid(&matroid).map_err(&parse)?;
            let digest = input_digest(&json!({"matroid": loaded.file}));
            let bases = all_bases(&loaded.view);
            Ok(Output::Document(Run {
                digest,
                certificates: vec![json!({"count": bases.len(), "bases": bases})],
                valid: true,
            }))
        }
        OracleCommand::ExchangeSearch { matroid, bases, x } => {
            let loaded = load_matroid(&matroid).map_err(&parse)?;
            let (b0set, b1set) = resolve_bases(&bases).map_err(&parse)?;
            let xset = resolve_set("x", &x.x, &x.x_file).map_err(&parse)?;
            let digest = input_digest(&json!({
                "matroid": loaded.file,
                "b0": b0set,
                "b1": b1set,
                "x": xset,
            }));
            let run = at(digest.clone());
            let b0 = certify(&loaded.view, "b0", b0set).map_err(&run)?;
            let b1 = certify(&loaded.view, "b1", b1set).map_err(&run)?;
            let solutions = exchange_search(&loaded.view, b0.elements(), b1.elements(), &xset)
                .map_err(lib_err)
                .map_err(&run)?;
            let valid = !solutions.is_empty();
            Ok(Output::Document(Run {
                digest,
                certificates: vec![json!({"x": xset, "solutions": solutions})],
                valid,
            }))
        }
        OracleCommand::BijectionSearch { matroid, bases, k } => {
            let loaded = load_matroid(&matroid).map_err(&parse)?;
            let (b0set, b1set) = resolve_bases(&bases).map_err(&parse)?;
            let digest = input_digest(&json!({
                "matroid": loaded.file,
                "b0": b0set,
                "b1": b1set,
                "k": k,
            }));
            let run = at(digest.clone());
            let b0 = certify(&loaded.view, "b0", b0set).map_err(&run)?;
            let b1 = certify(&loaded.view, "b1", b1set).map_err(&run)?;
            let exists = bijection_search(&loaded.view, b0.elements(), b1.elements(), k)
                .map_err(lib_err)
                .map_err(&run)?;
            Ok(Output::Document(Run {
                digest,
                certificates: vec![json!({"k": k, "exists": exists})],
                valid: exists,
            }))
        }
    }
}

fn run_gen(kind: String, size: usize) -> CmdOut {
    let parse = at("");
    let kind = match kind.as_str() {
        "uniform" => InstanceKind::Uniform,
        "graphic" => InstanceKind::Graphic,
        "gf2" => InstanceKind::Gf2,
        other => {
            return Err(parse(CliError::Parse(format!(
                "unknown kind {other}; expected uniform, graphic, or gf2"
            ))))
        }
    };
    let seed = match std::env::var("EXMAT_SEED") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| CliError::Parse("EXMAT_SEED must be an unsigned integer".into()))
            .map_err(&parse)?,
        Err(std::env::VarError::NotPresent) => 0,
        Err(e) => return Err(parse(CliError::Parse(format!("EXMAT_SEED: {e}")))),
    };
    let instance = random_instance_spec(kind, size, seed)
        .map_err(lib_err)
        .map_err(&parse)?;
    Ok(Output::Raw(
        MatroidFile::from_instance(&instance).canonical_json(),
    ))
}

fn run_command(command: Command) -> CmdOut {
    match command {
        Command::Symmetric {
            matroid,
            bases,
            x,
            cofinite,
        } => run_symmetric(matroid, bases, x, cofinite),
        Command::Partition {
            matroid,
            bases,
            classes,
            classes_file,
            unbounded_last,
        } => run_partition(matroid, bases, classes, classes_file, unbounded_last),
        Command::Serial { matroid, bases } => run_serial(matroid, bases),
        Command::Bijection {
            matroid,
            bases,
            max_size,
        } => run_bijection(matroid, bases, max_size),
        Command::VerifyCounterexample { n, k } => run_verify_counterexample(n, k),
        Command::CheckAxioms { matroid } => run_check_axioms(matroid),
        Command::Oracle { command } => run_oracle(command),
        Command::Gen { kind, size } => run_gen(kind, size),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let label = cli.command.label();
    match run_command(cli.command) {
        Ok(Output::Document(run)) => {
            let doc = ResultDocument {
                command: label,
                input_digest: run.digest,
                certificates: run.certificates,
                valid: run.valid,
            };
            println!("{}", doc.to_json());
            if run.valid {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Raw(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err((digest, error)) => {
            eprintln!("error: {}", error.message());
            let doc = ResultDocument {
                command: label,
                input_digest: digest,
                certificates: vec![],
                valid: false,
            };
            println!("{}", doc.to_json());
            ExitCode::from(error.exit_code() as u8)
        }
    }
}
