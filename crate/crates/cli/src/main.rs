use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use matroid_forge::io;
use matroid_forge::verify::verify_instance;
use matroid_forge::{adjust, modulus, Error, Graph, Registry};

#[derive(Parser)]
#[command(name = "matroid-forge", version, about = "Exact strength, arboricity, modulus and homogenizing adjustments for weighted graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Solver backend.
    #[arg(long, default_value = "network", global = true)]
    backend: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Strength and an optimal edge set.
    Strength { graph: PathBuf },
    /// Fractional arboricity and a densest connected vertex set.
    Arboricity { graph: PathBuf },
    /// Whether strength equals arboricity.
    Homogeneous { graph: PathBuf },
    /// Cheapest weight increase making the graph homogeneous.
    Reinforce {
        graph: PathBuf,
        /// Per-edge unit costs; unlisted edges cost 1.
        #[arg(long)]
        costs: Option<PathBuf>,
    },
    /// Cheapest weight decrease making the graph homogeneous.
    Sparsify {
        graph: PathBuf,
        #[arg(long)]
        costs: Option<PathBuf>,
    },
    /// Spanning-tree 2-modulus profile.
    Modulus { graph: PathBuf },
    /// Runs the invariant suite on one instance; exits 1 if any check fails.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        costs: Option<PathBuf>,
    },
}

enum Outcome {
    Done(Value),
    Failed(Value),
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Error> {
    io::parse_graph(&read(path)?)
}

fn load_costs(path: Option<&Path>, g: &Graph) -> Result<Vec<matroid_forge::Rational>, Error> {
    match path {
        Some(p) => io::parse_costs(&read(p)?, g),
        None => Ok(io::unit_costs(g)),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let registry = Registry::default();
    let backend = registry.get(&cli.backend)?;
    let backend = backend.as_ref();
    let out = match &cli.command {
        Command::Strength { graph } => {
            let g = load_graph(graph)?;
            io::strength_json(&g, &backend.strength(&g, &g.weights())?)
        }
        Command::Arboricity { graph } => {
            let g = load_graph(graph)?;
            io::arboricity_json(&g, &backend.arboricity(&g, &g.weights())?)
        }
        Command::Homogeneous { graph } => {
            let g = load_graph(graph)?;
            io::homogeneity_json(&backend.homogeneity(&g, &g.weights())?)
        }
        Command::Reinforce { graph, costs } => {
            let g = load_graph(graph)?;
            let costs = load_costs(costs.as_deref(), &g)?;
            let plan = adjust::reinforce(backend, &g, &g.weights(), &costs)?;
            io::plan_json(&g, &plan, false)
        }
        Command::Sparsify { graph, costs } => {
            let g = load_graph(graph)?;
            let costs = load_costs(costs.as_deref(), &g)?;
            let plan = adjust::sparsify(backend, &g, &g.weights(), &costs)?;
            io::plan_json(&g, &plan, true)
        }
        Command::Modulus { graph } => {
            let g = load_graph(graph)?;
            let profile = modulus::spanning_tree_modulus(backend, &g, &g.weights())?;
            io::profile_json(&g, &profile)
        }
        Command::Verify { graph, costs } => {
            let g = load_graph(graph)?;
            let costs = load_costs(costs.as_deref(), &g)?;
            let report = verify_instance(backend, &g, &g.weights(), &costs)?;
            let value = serde_json::to_value(&report).expect("report serializes");
            return Ok(if report.ok {
                Outcome::Done(value)
            } else {
                Outcome::Failed(value)
            });
        }
    };
    Ok(Outcome::Done(out))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

/// Aligned `key  value` lines; nested objects become indented tables.
fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, val) in map {
                match val {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}\n"));
                        text(val, indent + 2, out);
                    }
                    Value::Array(items) if items.iter().any(Value::is_object) => {
                        out.push_str(&format!("{pad}{k}\n"));
                        for (i, item) in items.iter().enumerate() {
                            out.push_str(&format!("{pad}  [{i}]\n"));
                            text(item, indent + 4, out);
                        }
                    }
                    _ => out.push_str(&format!("{pad}{k:<width$}  {}\n", scalar(val))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn render(format: Format, v: &Value) -> String {
    match format {
        Format::Json => io::render(v),
        Format::Text => {
            let mut s = String::new();
            text(v, 0, &mut s);
            s
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Done(v)) => {
            print!("{}", render(cli.format, &v));
            ExitCode::SUCCESS
        }
        Ok(Outcome::Failed(v)) => {
            print!("{}", render(cli.format, &v));
            ExitCode::from(1)
        }
        Err(e) => {
            eprint!("{}", io::render(&io::error_json(&e)));
            ExitCode::from(2)
        }
    }
}
