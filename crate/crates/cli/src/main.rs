use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use msset_cli::output::{render_csv, render_json};
use msset_cli::paper::verify_paper;
use msset_cli::{parse, run, Ctx};
use serde_json::json;

/// Marked simplicial and bisimplicial sets from the command line.
#[derive(Parser)]
#[command(name = "msset", version)]
struct Cli {
    /// Default horizontal bound of bisimplicial tables.
    #[arg(long, global = true, default_value_t = 3)]
    pbound: usize,
    /// Default vertical bound of bisimplicial tables.
    #[arg(long, global = true, default_value_t = 3)]
    qbound: usize,
    /// Default truncation of J and minimum nerve dimension.
    #[arg(long, global = true, default_value_t = 3)]
    jtrunc: usize,
    /// Emit CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads for `verify-paper`.
    #[arg(long, global = true, env = "MSSET_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and type-check a workspace without running commands.
    Check {
        file: PathBuf,
        /// Print the workspace in canonical form.
        #[arg(long)]
        print: bool,
    },
    /// Run every command of a workspace.
    Run { file: PathBuf },
    /// Run the built-in reference fixtures.
    VerifyPaper {
        /// Seed of the random corpus used by the adjunction fixture.
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { bounds: [cli.pbound, cli.qbound], jtrunc: cli.jtrunc };
    let load = |file: &PathBuf| -> Result<msset_cli::Workspace, String> {
        let text = std::fs::read_to_string(file).map_err(|e| format!("{}: {e}", file.display()))?;
        parse(&text, ctx).map_err(|e| format!("{}:{e}", file.display()))
    };
    match cli.command {
        Cmd::Check { file, print } => match load(&file) {
            Ok(ws) => {
                if print {
                    print!("{ws}");
                } else {
                    let n = ws.program.statements.len();
                    let commands = ws.commands().count();
                    emit(cli.csv, &json!({ "ok": true, "statements": n, "commands": commands }), Vec::new());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(USAGE_ERROR)
            }
        },
        Cmd::Run { file } => {
            let ws = match load(&file) {
                Ok(ws) => ws,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(USAGE_ERROR);
                }
            };
            match run(&ws, ctx) {
                Ok(outcome) => {
                    let rows = outcome
                        .results
                        .iter()
                        .map(|r| (r["line"].to_string(), r["command"].as_str().unwrap_or_default().to_string(), r.clone()))
                        .collect();
                    emit(cli.csv, &outcome.to_json(), rows);
                    if outcome.failed {
                        ExitCode::from(1)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(USAGE_ERROR)
                }
            }
        }
        Cmd::VerifyPaper { seed } => {
            let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let criteria = verify_paper(seed, threads);
            let passed = criteria.iter().all(|c| c.pass);
            let rows = criteria
                .iter()
                .map(|c| (c.id.to_string(), c.name.to_string(), serde_json::to_value(c).unwrap()))
                .collect();
            emit(cli.csv, &json!({ "seed": seed, "criteria": criteria, "passed": passed }), rows);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn emit(csv: bool, report: &serde_json::Value, rows: Vec<(String, String, serde_json::Value)>) {
    if csv {
        let rows = if rows.is_empty() { vec![(String::new(), String::new(), report.clone())] } else { rows };
        print!("{}", render_csv(&rows));
    } else {
        print!("{}", render_json(report));
    }
}
