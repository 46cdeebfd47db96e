use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use raagqi_core::error::Error;
use raagqi_core::geom::{self, ConvexDomain, DEFAULT_BALL_CAP};
use raagqi_core::graph::SimplicialGraph;
use raagqi_core::qi::{self, Verdict};
use raagqi_core::words::{Letter, NormalForm};
use raagqi_core::{fixtures, report};

const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "raagqi",
    about = "Quasi-isometry and commensurability decisions for right-angled Artin groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphArg {
    /// Graph file (edge list or JSON; '-' for stdin)
    graph: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a defining graph (separating stars, weak type II, type II, weak type I)
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        /// Include witnesses for each false predicate
        #[arg(long)]
        explain: bool,
    },
    /// Report outer-automorphism generators read off the graph
    Out {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Per-vertex branch classes, tuples and prime partitions
    Prime {
        #[command(flatten)]
        graph: GraphArg,
    },
    /// Prime graph and commensurability index via the halfspace pocset
    PrimeGraph {
        #[command(flatten)]
        graph: GraphArg,
        /// Write the prime graph in DOT format
        #[arg(long, value_name = "FILE")]
        emit_dot: Option<PathBuf>,
        /// Write the dual cube complex as JSON
        #[arg(long, value_name = "FILE")]
        emit_complex: Option<PathBuf>,
    },
    /// Decide quasi-isometry / commensurability of two graphs
    Qi {
        graph1: PathBuf,
        graph2: PathBuf,
        /// Convex-domain budget for the special-subgroup search fallback
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Special subgroup over a convex domain of group elements
    Special {
        #[command(flatten)]
        graph: GraphArg,
        /// Domain as JSON: a list of words, each a list of [label, 1|-1]
        /// letters (inline or a file path)
        #[arg(long)]
        domain: String,
    },
    /// Cayley ball of a given radius
    Ball {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(short, long)]
        radius: usize,
        /// Element cap guarding the enumeration
        #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
        cap: usize,
    },
    /// List the built-in fixture graphs, or print one as JSON
    Fixtures { name: Option<String> },
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::Malformed { line: 0, msg: e.to_string() })?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Malformed {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })
    }
}

fn load_graph(path: &PathBuf) -> Result<SimplicialGraph, Error> {
    SimplicialGraph::parse(&read_input(path)?)
}

fn parse_domain(g: &SimplicialGraph, spec: &str) -> Result<Vec<NormalForm>, Error> {
    let text = if std::path::Path::new(spec).exists() {
        fs::read_to_string(spec).map_err(|e| Error::Malformed { line: 0, msg: e.to_string() })?
    } else {
        spec.to_string()
    };
    let words: Vec<Vec<(String, i8)>> =
        serde_json::from_str(&text).map_err(|e| Error::Malformed {
            line: e.line(),
            msg: format!("domain: {e}"),
        })?;
    words
        .into_iter()
        .map(|letters| {
            let word = letters
                .into_iter()
                .map(|(label, sign)| {
                    if sign != 1 && sign != -1 {
                        return Err(Error::Malformed {
                            line: 0,
                            msg: format!("letter sign must be 1 or -1, got {sign}"),
                        });
                    }
                    Ok(Letter { vertex: g.vertex(&label)?, inverse: sign == -1 })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            raagqi_core::words::normal_form(g, &word)
        })
        .collect()
}

fn emit(value: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    if writeln!(std::io::stdout().lock(), "{text}").is_err() {
        // Downstream closed the pipe; nothing left to report.
        std::process::exit(0);
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Classify { graph, explain } => {
            let g = load_graph(&graph.graph)?;
            emit(&report::classify_json(&g, explain)?);
        }
        Command::Out { graph } => {
            let g = load_graph(&graph.graph)?;
            emit(&report::out_json(&g));
        }
        Command::Prime { graph } => {
            let g = load_graph(&graph.graph)?;
            emit(&report::prime_json(&g)?);
        }
        Command::PrimeGraph { graph, emit_dot, emit_complex } => {
            let g = load_graph(&graph.graph)?;
            let bundle = report::prime_graph_bundle(&g)?;
            if let Some(path) = emit_dot {
                fs::write(&path, bundle.result.prime_graph.to_dot()).map_err(|e| {
                    Error::Internal(format!("writing {}: {e}", path.display()))
                })?;
            }
            if let Some(path) = emit_complex {
                let complex = report::complex_json(&g, &bundle);
                fs::write(
                    &path,
                    serde_json::to_string_pretty(&complex).expect("serializable") + "\n",
                )
                .map_err(|e| Error::Internal(format!("writing {}: {e}", path.display())))?;
            }
            emit(&report::prime_graph_json(&bundle));
        }
        Command::Qi { graph1, graph2, budget } => {
            let g1 = load_graph(&graph1)?;
            let g2 = load_graph(&graph2)?;
            let decision = qi::qi_equivalent_with_search(&g1, &g2, budget)?;
            emit(&report::qi_json(&decision));
            return Ok(match decision.verdict {
                Verdict::Yes => 0,
                Verdict::No => 1,
                Verdict::Unknown => 2,
            });
        }
        Command::Special { graph, domain } => {
            let g = load_graph(&graph.graph)?;
            let elements = parse_domain(&g, &domain)?;
            let domain = ConvexDomain::new(&g, elements, DEFAULT_BALL_CAP)?;
            let result = geom::special_subgroup(&g, &domain)?;
            emit(&report::special_json(&g, &result));
        }
        Command::Ball { graph, radius, cap } => {
            let g = load_graph(&graph.graph)?;
            let ball = geom::ball(&g, radius, cap)?;
            emit(&report::ball_json(&g, radius, &ball));
        }
        Command::Fixtures { name } => match name {
            Some(name) => {
                let fixture = fixtures::by_name(&name)
                    .ok_or_else(|| Error::UnknownVertex(format!("fixture '{name}'")))?;
                emit(&report::graph_json(&fixture.graph));
            }
            None => {
                let list: Vec<_> = fixtures::registry()
                    .iter()
                    .map(|f| {
                        json!({
                            "name": f.name,
                            "vertices": f.graph.vertex_count(),
                            "edges": f.graph.edge_count(),
                        })
                    })
                    .collect();
                emit(&json!({ "schema": report::SCHEMA, "fixtures": list }));
            }
        },
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not usage errors.
            if err.use_stderr() {
                eprint!("{err}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_PARSE,
            };
            ExitCode::from(code)
        }
    }
}
