use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use qalink::cli::{cmd_catalog, cmd_certify, cmd_cf, cmd_classify, cmd_det, load_catalog, DetMethod};
use qalink::qa::DEFAULT_BUDGET;
use qalink::Error;

/// Rational tangles, Montesinos links and quasi-alternating certificates.
/// Every command prints line-delimited JSON.
#[derive(Parser)]
#[command(name = "qalink", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a presentation such as "M(1; 5/2, 3/1, 3/2)" or "P(2, 1, -3)".
    Classify { presentation: String },
    /// Link determinant.
    Det {
        presentation: String,
        #[arg(long, value_enum, default_value = "formula")]
        method: DetMethod,
    },
    /// Continued fraction expansion and T-sequences of a slope "beta/alpha".
    Cf { fraction: String },
    /// Search for a quasi-alternating certificate.
    Certify {
        presentation: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Resolve first at this crossing of the drawing (expression preorder).
        #[arg(long)]
        at: Option<usize>,
    },
    /// Classify the catalog named by QALINK_CATALOG, or the bundled one.
    Catalog {
        #[arg(long)]
        check: bool,
    },
}

fn run(cmd: Command) -> Result<(Vec<Value>, bool), Error> {
    let one = |v: Value| (vec![v], true);
    Ok(match cmd {
        Command::Classify { presentation } => one(cmd_classify(&presentation)?),
        Command::Det { presentation, method } => one(cmd_det(&presentation, method)?),
        Command::Cf { fraction } => one(cmd_cf(&fraction)?),
        Command::Certify { presentation, budget, at } => one(cmd_certify(&presentation, budget, at)?),
        Command::Catalog { check } => {
            let lines = cmd_catalog(&load_catalog()?, check)?;
            let ok = lines.last().and_then(|s| s.get("failures")).is_none_or(|f| f == 0);
            (lines, ok)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((lines, ok)) => {
            for line in lines {
                println!("{line}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let (code, pos) = match &err {
                Error::Parse { pos, .. } => (2, Some(*pos)),
                Error::OracleDisagreement(_) => (3, None),
                _ => (1, None),
            };
            let mut line = json!({ "error": err.to_string() });
            if let Some(pos) = pos {
                line["position"] = json!(pos);
            }
            println!("{line}");
            ExitCode::from(code)
        }
    }
}
