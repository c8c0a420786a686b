//! normcheck: parse and execute norm models, explore their state graphs for
//! stuck duties, and decide SDL formula sets.
//!
//! Exit status: 0 analysis completed with a clean result, 1 usage or input
//! error, 2 analysis completed but an `--expect` assertion (or a trace)
//! failed, 3 a resource cap was exceeded. Verdicts go to stdout, diagnostics
//! to stderr.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use norm_core::{ground_model, GroundModel, Model};
use norm_engine::{
    detect_conflicts, explore, run, ConflictReport, ExploreConfig, ExploreError, RunOutcome,
    StateGraph,
};
use sdl_logic::{chisholm_report, consistent, sdl_parse_set, TableauConfig, TableauError};

mod dot;
mod output;

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_EXPECT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Overrides exploration and tableau budgets when set.
const NODE_CAP_ENV: &str = "NORMCHECK_NODE_CAP";

#[derive(Parser)]
#[command(name = "normcheck", version, about = "Toolchain for a frame-based normative language")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model and check it is well-formed.
    Validate { model: PathBuf },
    /// Execute a trace against a model and report events and duty statuses.
    Run {
        model: PathBuf,
        trace: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build the bounded reachable state graph and detect stuck duties.
    Explore {
        model: PathBuf,
        #[arg(long)]
        horizon: usize,
        /// Write the graph in DOT format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// Fail (status 2) if any conflict is found.
        #[arg(long, value_enum)]
        expect: Option<ExpectConflicts>,
    },
    /// Standard Deontic Logic commands.
    #[command(subcommand)]
    Sdl(SdlCommand),
}

#[derive(Subcommand)]
enum SdlCommand {
    /// Decide satisfiability of a formula file (one formula per line).
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        expect: Option<ExpectVerdict>,
        #[arg(long)]
        json: bool,
    },
    /// Report all four scope encodings of the lending rules.
    Chisholm {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExpectConflicts {
    None,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum ExpectVerdict {
    Sat,
    Unsat,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Validate { model } => cmd_validate(&model),
        Command::Run { model, trace, json } => cmd_run(&model, &trace, json),
        Command::Explore { model, horizon, dot, json, expect } => {
            cmd_explore(&model, horizon, dot.as_deref(), json, expect)
        }
        Command::Sdl(SdlCommand::Check { file, expect, json }) => cmd_sdl_check(&file, expect, json),
        Command::Sdl(SdlCommand::Chisholm { json }) => cmd_sdl_chisholm(json),
    };
    ExitCode::from(status)
}

fn read_file(path: &std::path::Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })
}

/// Parses and statically checks a model file; prints diagnostics to stderr.
fn load_model(path: &std::path::Path) -> Result<Model, u8> {
    let text = read_file(path)?;
    match norm_parser::parse_model(&text) {
        Ok((model, warnings)) => {
            for w in warnings {
                eprintln!("{}: {w}", path.display());
            }
            Ok(model)
        }
        Err(diags) => {
            for d in diags {
                eprintln!("{}: {d}", path.display());
            }
            Err(EXIT_INPUT)
        }
    }
}

fn load_ground_model(path: &std::path::Path) -> Result<GroundModel, u8> {
    let model = load_model(path)?;
    let diags = norm_core::check_wellformed(&model);
    for d in &diags {
        eprintln!("{}: {d}", path.display());
    }
    if diags.iter().any(|d| d.is_error()) {
        return Err(EXIT_INPUT);
    }
    ground_model(&model).map_err(|_| EXIT_INPUT)
}

fn node_cap() -> Result<Option<usize>, u8> {
    match std::env::var(NODE_CAP_ENV) {
        Err(_) => Ok(None),
        Ok(raw) => raw.parse::<usize>().map(Some).map_err(|_| {
            eprintln!("error: {NODE_CAP_ENV} must be a non-negative integer, got `{raw}`");
            EXIT_INPUT
        }),
    }
}

fn cmd_validate(path: &std::path::Path) -> u8 {
    let text = match read_file(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let (model, mut diags) = match norm_parser::parse_model(&text) {
        Ok((model, warnings)) => (Some(model), warnings),
        Err(diags) => (None, diags),
    };
    let mut errors = diags.iter().filter(|d| d.is_error()).count();
    for d in &diags {
        eprintln!("{}: {d}", path.display());
    }
    if let Some(model) = &model {
        let semantic = norm_core::check_wellformed(model);
        errors += semantic.iter().filter(|d| d.is_error()).count();
        for d in &semantic {
            eprintln!("{}: {d}", path.display());
        }
        diags.clear();
        if errors == 0 {
            println!(
                "ok: {} declarations, {} initial facts",
                model.declaration_count(),
                model.initial.len()
            );
        }
    }
    if errors == 0 {
        EXIT_OK
    } else {
        EXIT_INPUT
    }
}

fn cmd_run(model_path: &std::path::Path, trace_path: &std::path::Path, json: bool) -> u8 {
    let gm = match load_ground_model(model_path) {
        Ok(gm) => gm,
        Err(code) => return code,
    };
    let trace_text = match read_file(trace_path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let trace = match norm_parser::parse_trace(&trace_text, gm.model()) {
        Ok(trace) => trace,
        Err(diags) => {
            for d in diags {
                eprintln!("{}: {d}", trace_path.display());
            }
            return EXIT_INPUT;
        }
    };

    let result = run(&gm, &gm.model().initial_state(), &trace.acts);
    if json {
        println!("{}", serde_json::to_string_pretty(&output::run_json(&gm, &trace.acts, &result)).unwrap());
    } else {
        output::print_run(&trace.acts, &result);
    }
    match result.outcome {
        RunOutcome::Completed => EXIT_OK,
        RunOutcome::FailedAt { .. } => EXIT_EXPECT,
    }
}

fn cmd_explore(
    model_path: &std::path::Path,
    horizon: usize,
    dot_path: Option<&std::path::Path>,
    json: bool,
    expect: Option<ExpectConflicts>,
) -> u8 {
    let gm = match load_ground_model(model_path) {
        Ok(gm) => gm,
        Err(code) => return code,
    };
    let mut config = ExploreConfig::new(horizon);
    match node_cap() {
        Ok(Some(cap)) => config.node_cap = cap,
        Ok(None) => {}
        Err(code) => return code,
    }

    let graph: StateGraph = match explore(&gm, &gm.model().initial_state(), &config) {
        Ok(graph) => graph,
        Err(ExploreError::NodeCapExceeded { cap }) => {
            eprintln!("error: exploration exceeded the cap of {cap} states");
            return EXIT_RESOURCE;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let conflicts: Vec<ConflictReport> = match detect_conflicts(&gm, &graph) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };

    if let Some(path) = dot_path {
        if let Err(e) = std::fs::write(path, dot::render(&graph)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }

    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&output::explore_json(&gm, &graph, &conflicts)).unwrap()
        );
    } else {
        output::print_explore(&graph, &conflicts);
    }

    if expect.is_some() && !conflicts.is_empty() {
        EXIT_EXPECT
    } else {
        EXIT_OK
    }
}

fn tableau_config() -> Result<TableauConfig, u8> {
    let mut config = TableauConfig::kd();
    if let Some(cap) = node_cap()? {
        config.node_budget = cap;
    }
    Ok(config)
}

fn cmd_sdl_check(path: &std::path::Path, expect: Option<ExpectVerdict>, json: bool) -> u8 {
    let text = match read_file(path) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let gamma = match sdl_parse_set(&text) {
        Ok(gamma) => gamma,
        Err(diags) => {
            for d in diags {
                eprintln!("{}: {d}", path.display());
            }
            return EXIT_INPUT;
        }
    };
    let config = match tableau_config() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let result = match consistent(&gamma, &config) {
        Ok(result) => result,
        Err(TableauError::BudgetExceeded(cap)) => {
            eprintln!("error: tableau exceeded its budget of {cap} rule applications");
            return EXIT_RESOURCE;
        }
    };

    if json {
        println!("{}", serde_json::to_string_pretty(&output::verdict_json(&result)).unwrap());
    } else {
        output::print_verdict(&result);
    }

    let satisfiable = result.is_satisfiable();
    match expect {
        Some(ExpectVerdict::Sat) if !satisfiable => EXIT_EXPECT,
        Some(ExpectVerdict::Unsat) if satisfiable => EXIT_EXPECT,
        _ => EXIT_OK,
    }
}

fn cmd_sdl_chisholm(json: bool) -> u8 {
    let config = match tableau_config() {
        Ok(c) => c,
        Err(code) => return code,
    };
    let rows = match chisholm_report(&config) {
        Ok(rows) => rows,
        Err(TableauError::BudgetExceeded(cap)) => {
            eprintln!("error: tableau exceeded its budget of {cap} rule applications");
            return EXIT_RESOURCE;
        }
    };

    if json {
        let value: Vec<serde_json::Value> = rows.iter().map(output::chisholm_row_json).collect();
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        output::print_chisholm(&rows);
    }

    // Clean means: exactly the mixed (wide, narrow) reading is contradictory.
    let clean = rows.iter().all(|row| {
        let mixed = row.encoding.label() == "(wide, narrow)";
        row.result.is_satisfiable() != mixed
    });
    if clean {
        EXIT_OK
    } else {
        EXIT_EXPECT
    }
}
