mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use graphstar::algebra::{
    compose, compose_leibniz, coproduct_prime, coproduct_reduced, merger, GraphVector, TensorVector,
};
use graphstar::characters::{antipode, antipode_geometric, load_weights, solve_weights, SolveConfig, SolveOutcome};
use graphstar::evaluator::{bch_oracle, bch_report, Bivector, Polynomial, StarProduct};
use graphstar::exec::Mode;
use graphstar::graph::{enumerate_class, Restriction};
use graphstar::verify::{self, Suite, SuiteReport};

use config::{graph_arg, normalization_pair, Config, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] graphstar::Error),
    #[error("{0}: {1}")]
    Io(PathBuf, std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "graphstar", version, about = "Admissible graphs, their pre-Lie and Hopf operations, weight solving and star-products")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// key=value settings file (max_order, restrict, normalize, out, format, suite)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// full, forest or constant (zero in-degree)
    #[arg(long, global = true)]
    restrict: Option<String>,
    /// graph=value, repeatable; the graph is a catalog name or graph text
    #[arg(long, global = true)]
    normalize: Vec<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// text or json
    #[arg(long, global = true)]
    format: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List G(n, m) in canonical order
    Enumerate {
        n: usize,
        m: usize,
        /// overrides --restrict; defaults to full
        restriction: Option<String>,
    },
    /// Insertion composition g1 ∘ g2
    Compose {
        g1: String,
        g2: String,
        /// raw insertion counts instead of the automorphism-weighted composition
        #[arg(long)]
        leibniz: bool,
    },
    /// Reduced coproduct of a graph with three boundary points
    Coproduct {
        g: String,
        /// restrict to prime subgraphs and quotients
        #[arg(long)]
        prime: bool,
    },
    /// Antipode, by the recursive formula unless --geometric
    Antipode {
        g: String,
        #[arg(long)]
        geometric: bool,
    },
    /// Merger Γ/b0^L − Γ/b0^R of a graph with three boundary points
    Merge { g: String },
    /// Solve the associativity constraints order by order
    Solve,
    /// Star product of two polynomials
    Star {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Run a verification suite (appendix, duality, prelie, moyal, jacobi, assoc, antipode, trees, all)
    Verify { suite: Option<String> },
    /// log(e^x e^y) in the Lyndon basis, optionally next to x1^n ⋆ x2
    Bch {
        #[arg(long, default_value_t = 3)]
        order: usize,
        #[arg(long, requires = "weights")]
        alpha: Option<PathBuf>,
        #[arg(long, requires = "alpha")]
        weights: Option<PathBuf>,
    },
}

fn build_config(g: &GlobalArgs) -> Result<Config, CliError> {
    let mut c = Config::default();
    if let Some(path) = &g.config {
        c.load_file(path)?;
    }
    if let Some(n) = g.max_order {
        c.max_order = n;
    }
    if let Some(r) = &g.restrict {
        c.restriction = r.parse::<Restriction>()?;
    }
    for pair in &g.normalize {
        let (graph, value) = normalization_pair(pair)?;
        c.normalization.retain(|(h, _)| *h != graph);
        c.normalization.push((graph, value));
    }
    if let Some(out) = &g.out {
        c.out = Some(out.clone());
    }
    if let Some(f) = &g.format {
        c.format = f.parse().map_err(CliError::Usage)?;
    }
    c.validate()?;
    Ok(c)
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))
}

fn emit(config: &Config, text: &str) -> Result<(), CliError> {
    match &config.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io("<stdout>".into(), e))
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn render_vector(config: &Config, v: &GraphVector) -> String {
    match config.format {
        Format::Text => v.to_string(),
        Format::Json => pretty(&serde_json::to_value(v).expect("vector serializes")),
    }
}

fn render_tensor(config: &Config, v: &TensorVector) -> String {
    match config.format {
        Format::Text => v.to_string(),
        Format::Json => pretty(&serde_json::to_value(v).expect("tensor serializes")),
    }
}

fn solve_text(outcome: &SolveOutcome) -> Result<String, CliError> {
    let mut s = String::new();
    for e in &outcome.report {
        s += &format!("order {}: {}\n", e.order, e.status);
    }
    for (g, w) in outcome.weights.table()? {
        s += &format!("W({g}) = {w}\n");
    }
    Ok(s)
}

fn cmd_solve(config: &Config) -> Result<ExitCode, CliError> {
    let solve = SolveConfig {
        max_order: config.max_order,
        restriction: config.restriction,
        normalization: config.normalization.clone(),
        ..SolveConfig::default()
    };
    let outcome = solve_weights(&solve)?;
    let infeasible = outcome.is_infeasible();
    // the weights actually usable downstream: the forest fallback when the
    // requested class has no solution
    let written = match (&outcome.fallback, infeasible) {
        (Some(f), true) => f.as_ref(),
        _ => &outcome,
    };
    let weights_json = pretty(&written.to_json()?);
    match &config.out {
        Some(path) => {
            std::fs::write(path, &weights_json).map_err(|e| CliError::Io(path.clone(), e))?;
            let report = match config.format {
                Format::Text => solve_text(&outcome)?,
                Format::Json => pretty(&json!({ "report": outcome.to_json()?["report"], "weights": path })),
            };
            print!("{report}");
        }
        None => print!(
            "{}",
            match config.format {
                Format::Text => solve_text(&outcome)?,
                Format::Json => weights_json,
            }
        ),
    }
    if infeasible {
        eprintln!(
            "solver: order {} infeasible in the {} class{}",
            outcome.report.iter().find(|e| e.status.to_string() == "infeasible").map_or(0, |e| e.order),
            config.restriction,
            if outcome.fallback.is_some() { "; forest weights written instead" } else { "" }
        );
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_star(config: &Config, alpha: &PathBuf, weights: &PathBuf, order: usize, f: &str, g: &str) -> Result<(), CliError> {
    let alpha = Bivector::from_json(&read(alpha)?)?;
    let w = load_weights(&read(weights)?)?;
    let (f, g) = (Polynomial::parse(f, alpha.dim())?, Polynomial::parse(g, alpha.dim())?);
    let series = StarProduct::new(&alpha, &w, order)?.apply(&f, &g)?;
    let text = match config.format {
        Format::Text => format!("{series}\n"),
        Format::Json => pretty(&json!({
            "order": order,
            "coefficients": series.coeffs().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })),
    };
    emit(config, &text)
}

fn report_json(r: &SuiteReport) -> serde_json::Value {
    json!({
        "suite": r.suite.name(),
        "passed": r.passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name, "passed": c.passed, "expected": c.expected, "got": c.got,
        })).collect::<Vec<_>>(),
    })
}

fn cmd_verify(config: &Config, suite: Option<&str>) -> Result<ExitCode, CliError> {
    let name = suite.or(config.suite.as_deref()).unwrap_or("all");
    let suites: Vec<Suite> = if name == "all" { Suite::ALL.to_vec() } else { vec![name.parse::<Suite>()?] };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(verify::run(s, Mode::default())?);
    }
    let text = match config.format {
        Format::Text => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(""),
        Format::Json => pretty(&serde_json::Value::Array(reports.iter().map(report_json).collect())),
    };
    emit(config, &text)?;
    Ok(if reports.iter().all(SuiteReport::passed) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let config = build_config(&cli.global)?;
    match cli.command {
        Command::Enumerate { n, m, restriction } => {
            let r: Restriction = match (restriction, &cli.global.restrict) {
                (Some(r), _) => r.parse::<Restriction>()?,
                (None, Some(_)) => config.restriction,
                (None, None) => Restriction::Full,
            };
            if m == 0 || m > 6 || n > 6 {
                return Err(CliError::Usage("enumerate supports 1 <= m <= 6 and n <= 6".into()));
            }
            let graphs = enumerate_class(n, m, r);
            let text = match config.format {
                Format::Text => graphs.iter().map(|g| format!("{g}\n")).collect(),
                Format::Json => pretty(&serde_json::to_value(&graphs).expect("graphs serialize")),
            };
            emit(&config, &text)?;
        }
        Command::Compose { g1, g2, leibniz } => {
            let (a, b) = (GraphVector::basis(graph_arg(&g1)?), GraphVector::basis(graph_arg(&g2)?));
            let v = if leibniz { compose_leibniz(&a, &b) } else { compose(&a, &b) };
            emit(&config, &render_vector(&config, &v))?;
        }
        Command::Coproduct { g, prime } => {
            let g = graph_arg(&g)?;
            let t = if prime { coproduct_prime(&g)? } else { coproduct_reduced(&g)? };
            emit(&config, &render_tensor(&config, &t))?;
        }
        Command::Antipode { g, geometric } => {
            let g = graph_arg(&g)?;
            let s = if geometric { antipode_geometric(&g)? } else { antipode(&g)? };
            let text = match config.format {
                Format::Text => format!("{}{}", s.graphs, if s.tensors.is_zero() { String::new() } else { s.tensors.to_string() }),
                Format::Json => pretty(&json!({ "graphs": s.graphs, "tensors": s.tensors })),
            };
            emit(&config, &text)?;
        }
        Command::Merge { g } => {
            let v = merger(&graph_arg(&g)?)?;
            emit(&config, &render_vector(&config, &v))?;
        }
        Command::Solve => return cmd_solve(&config),
        Command::Star { alpha, weights, order, f, g } => cmd_star(&config, &alpha, &weights, order, &f, &g)?,
        Command::Verify { suite } => return cmd_verify(&config, suite.as_deref()),
        Command::Bch { order, alpha, weights } => {
            if !(1..=5).contains(&order) {
                return Err(CliError::Usage("bch supports orders 1..=5".into()));
            }
            let text = match (alpha, weights) {
                (Some(a), Some(w)) => {
                    bch_report(&load_weights(&read(&w)?)?, &Bivector::from_json(&read(&a)?)?, order)?
                }
                _ => bch_oracle(order).to_string(),
            };
            emit(&config, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("GRAPHSTAR_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Usage(format!("GRAPHSTAR_THREADS={value:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
