use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cayley_closure::{
    check_equal, check_geq, expansion_trace, graph_export, ClosureBudget, ClosureResult, Group,
    Mode, Presentation, Status,
};
use clap::{Args, Parser, Subcommand};

/// Word problems for inverse and F-inverse monoids presented over groups.
#[derive(Debug, Parser)]
#[command(name = "cayley-closure", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Presentation file, or `-` for stdin.
    presentation: PathBuf,

    /// Maximum number of expansion rounds.
    #[arg(long, value_name = "N", default_value_t = 64)]
    budget_rounds: usize,

    /// Stop expanding once a graph has more than N vertices.
    #[arg(long, value_name = "N", default_value_t = 10_000)]
    budget_vertices: usize,

    /// Write DOT output to PATH.
    #[arg(long, value_name = "PATH")]
    dot: Option<PathBuf>,

    /// Emit one DOT graph per expansion round.
    #[arg(long)]
    rounds: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a word or term and summarize its element.
    Eval {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Semi-decide u = v.
    Eq {
        #[command(flatten)]
        common: Common,
        u: String,
        v: String,
    },
    /// Semi-decide u >= w in the natural order.
    Geq {
        #[command(flatten)]
        common: Common,
        u: String,
        w: String,
    },
    /// Export the Schützenberger graph of a word or term as DOT.
    Graph {
        #[command(flatten)]
        common: Common,
        term: String,
    },
    /// Print the size of every expansion round.
    Trace {
        #[command(flatten)]
        common: Common,
        term: String,
    },
}

const USAGE_ERROR: u8 = 3;

const INV_CAVEAT: &str = "note: inv verdicts assume the presented inverse monoid is E-unitary";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(USAGE_ERROR)
        }
    }
}

fn load(path: &Path) -> Result<Presentation, String> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("reading stdin: {e}"))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    Presentation::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn status_name(status: Status) -> &'static str {
    match status {
        Status::Stabilized => "STABILIZED",
        Status::BudgetExhausted => "BUDGET_EXHAUSTED",
    }
}

fn status_code(result: &ClosureResult) -> u8 {
    match result.status {
        Status::Stabilized => 0,
        Status::BudgetExhausted => 2,
    }
}

fn summary(group: &Group, result: &ClosureResult) -> String {
    format!(
        "STATUS={} ROUNDS={} VERTICES={} EDGES={} COMPONENTS={}",
        status_name(result.status),
        result.rounds_used,
        result.graph.vertex_count(),
        result.graph.edge_count(),
        result.graph.components(group).len()
    )
}

fn write_dot(path: &Path, dots: &[String]) -> Result<(), String> {
    fs::write(path, dots.concat()).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli) -> Result<u8, String> {
    let common = match &cli.command {
        Command::Eval { common, .. }
        | Command::Eq { common, .. }
        | Command::Geq { common, .. }
        | Command::Graph { common, .. }
        | Command::Trace { common, .. } => common,
    };
    let budget = ClosureBudget::new(common.budget_rounds, common.budget_vertices)
        .map_err(|e| e.to_string())?;
    let p = load(&common.presentation)?;
    let ctx = p.context().clone().with_budget(budget);
    let group = ctx.group();
    let term = |text: &str| p.parse_term(text).map_err(|e| format!("`{text}`: {e}"));
    let caveat = || {
        if p.mode() == Mode::EUnitary && p.builtin().is_none() {
            eprintln!("{INV_CAVEAT}");
        }
    };
    let mut out = io::stdout().lock();
    let mut emit = |line: &str| writeln!(out, "{line}").map_err(|e| e.to_string());

    match &cli.command {
        Command::Eval { term: text, .. } => {
            let t = term(text)?;
            let export =
                graph_export(&ctx, &t, &budget, common.rounds).map_err(|e| e.to_string())?;
            emit(&format!(
                "ELEMENT={} {}",
                group.format_elem(&group.eval_term(&t)),
                summary(group, &export.result)
            ))?;
            if let Some(path) = &common.dot {
                write_dot(path, &export.dots)?;
            }
            Ok(status_code(&export.result))
        }
        Command::Eq { u, v, .. } => {
            let decision =
                check_equal(&ctx, &term(u)?, &term(v)?, &budget).map_err(|e| e.to_string())?;
            emit(&decision.to_string())?;
            caveat();
            Ok(decision.verdict.exit_code() as u8)
        }
        Command::Geq { u, w, .. } => {
            let decision =
                check_geq(&ctx, &term(u)?, &term(w)?, &budget).map_err(|e| e.to_string())?;
            emit(&decision.to_string())?;
            caveat();
            Ok(decision.verdict.exit_code() as u8)
        }
        Command::Graph { term: text, .. } => {
            let t = term(text)?;
            let export =
                graph_export(&ctx, &t, &budget, common.rounds).map_err(|e| e.to_string())?;
            match &common.dot {
                Some(path) => {
                    write_dot(path, &export.dots)?;
                    emit(&summary(group, &export.result))?;
                }
                None => {
                    for dot in &export.dots {
                        write!(io::stdout(), "{dot}").map_err(|e| e.to_string())?;
                    }
                    eprintln!("{}", summary(group, &export.result));
                }
            }
            Ok(status_code(&export.result))
        }
        Command::Trace { term: text, .. } => {
            let t = term(text)?;
            let (stats, result) = expansion_trace(&ctx, &t, &budget).map_err(|e| e.to_string())?;
            for s in &stats {
                emit(&format!(
                    "ROUND={} VERTICES={} EDGES={} COMPONENTS={}",
                    s.round, s.vertices, s.edges, s.components
                ))?;
            }
            emit(&summary(group, &result))?;
            if let Some(path) = &common.dot {
                let export = graph_export(&ctx, &t, &budget, true).map_err(|e| e.to_string())?;
                write_dot(path, &export.dots)?;
            }
            Ok(status_code(&result))
        }
    }
}
