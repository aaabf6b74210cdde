use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use dendrite::checks::{self, Suite};
use dendrite::dendrite_model::DendriteModel;
use dendrite::labelled_trees::{enumerate_type_codes, LabelledTree, Signature};
use dendrite::semilinear::{completion, Poset, SemiLinearOrder};

#[derive(Parser)]
#[command(
    name = "dendrite",
    version,
    about = "Orbit census, finite models and order completions for generalised Ważewski dendrites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Count (and list) the orbit types of p-tuples.
    Census {
        #[arg(long, value_parser = parse_signature)]
        signature: Signature,
        #[arg(long)]
        arity: usize,
        /// Only tuples with pairwise distinct coordinates.
        #[arg(long)]
        distinct: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Grow a finite model by random extension moves.
    Grow {
        #[arg(long, value_parser = parse_signature)]
        signature: Signature,
        #[arg(long, default_value_t = 0)]
        steps: usize,
        #[arg(long, env = "DENDRITE_SEED", default_value_t = 0)]
        seed: u64,
        /// Write the model here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete a semi-linear order by its full down-chains.
    Complete { poset: PathBuf },
    /// Run the seeded property suites.
    Check {
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long, env = "DENDRITE_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Render a model or labelled-tree JSON file as Graphviz.
    ExportDot { file: PathBuf },
}

enum Failure {
    Invalid(String),
    Io(String),
    ChecksFailed,
}

impl From<dendrite::Error> for Failure {
    fn from(e: dendrite::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    Signature::parse(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn pretty(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn census(sig: &Signature, arity: usize, distinct: bool, format: Format) -> Result<(), Failure> {
    let types = enumerate_type_codes(arity, sig, distinct)?;
    match format {
        Format::Json => {
            let list: Vec<_> = types
                .iter()
                .map(|(code, tree)| json!({ "code": code, "tree": tree }))
                .collect();
            let out = json!({
                "signature": sig,
                "arity": arity,
                "distinct": distinct,
                "count": types.len(),
                "types": list,
            });
            println!("{}", pretty(&out));
        }
        Format::Table => {
            let width = types.len().to_string().len();
            for (i, code) in types.keys().enumerate() {
                println!("{:>width$}  {code}", i + 1);
            }
            let tuples = if distinct { "distinct" } else { "all" };
            println!("S={{{sig}}} p={arity} {tuples}: {} types", types.len());
        }
    }
    Ok(())
}

fn grow(sig: Signature, steps: usize, seed: u64, out: Option<PathBuf>) -> Result<(), Failure> {
    let mut model = DendriteModel::new(sig, seed);
    model.grow(steps)?;
    model.check_invariants()?;
    let text = model.to_json() + "\n";
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn complete(path: &Path) -> Result<(), Failure> {
    let poset = Poset::from_json(&read(path)?)?;
    let order = SemiLinearOrder::new(poset)?;
    let c = completion(&order)?;
    let out = json!({
        "chains": c.chains,
        "order": c.order.poset().to_file(),
        "embedding": c.embedding,
    });
    println!("{}", pretty(&out));
    Ok(())
}

fn export_dot(path: &Path) -> Result<(), Failure> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let dot = if value.get("signature").is_some() {
        DendriteModel::from_json(&text)?.to_dot()
    } else {
        let tree = LabelledTree::from_json(&text)?;
        tree.check_structure()?;
        tree.to_dot()
    };
    print!("{dot}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Census {
            signature,
            arity,
            distinct,
            format,
        } => census(&signature, arity, distinct, format),
        Command::Grow {
            signature,
            steps,
            seed,
            out,
        } => grow(signature, steps, seed, out),
        Command::Complete { poset } => complete(&poset),
        Command::Check { suite, seed } => {
            let report = checks::run(suite, seed)?;
            println!("{}", pretty(&report));
            if report.passed {
                Ok(())
            } else {
                Err(Failure::ChecksFailed)
            }
        }
        Command::ExportDot { file } => export_dot(&file),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::ChecksFailed) => ExitCode::from(1),
    }
}
