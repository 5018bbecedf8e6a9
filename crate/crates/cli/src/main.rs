use std::process::ExitCode;

use ample_cli::calc::{CalcOp, Calculator};
use ample_cli::measure::run_measure;
use ample_cli::models::{parse_model, MODEL_HELP};
use ample_cli::suites::{run_suite, Suite, SuiteOptions};
use ample_cli::{depth_ceiling, CliError, Output};
use clap::{Parser, Subcommand};

/// Exact computations in ample groupoids: full groups, convolution algebras
/// and invariant measures.
#[derive(Parser, Debug)]
#[command(name = "ample", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Calculators on tables `{b<-a,…}`, bisections `Z(b<-a)+…` and algebra
    /// elements `(c)*Z(b<-a) + …` of the shift model.
    Calc {
        #[arg(value_enum)]
        op: CalcOp,
        operands: Vec<String>,
        /// Alphabet size of the shift.
        #[arg(long, default_value_t = 2)]
        k: u8,
        /// Largest order searched by `order`.
        #[arg(long, default_value_t = 1024)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a model admits an invariant probability measure.
    Measure {
        #[arg(long, help = format!("one of: {MODEL_HELP}"))]
        model: String,
        /// Resolution of the clopen basis; defaults depend on the model.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of cases, or the suite's main size parameter.
        #[arg(long)]
        n: Option<usize>,
        /// Tail bound for enumerations in the compactified-integer models.
        #[arg(long)]
        tail: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn execute(cmd: Command) -> Result<(Output, bool), CliError> {
    let ceiling = depth_ceiling()?;
    match cmd {
        Command::Calc { op, operands, k, cap, json } => {
            let calc = Calculator { k, ceiling, cap };
            Ok((calc.run(op, &operands)?, json))
        }
        Command::Measure { model, depth, json } => Ok((run_measure(&parse_model(&model)?, depth, ceiling)?, json)),
        Command::Verify { suite, seed, n, tail, depth, model, json } => {
            let opts = SuiteOptions { seed, n, tail, depth, model, ceiling };
            let r = run_suite(suite, &opts)?;
            let out = Output {
                text: r.render_text(),
                json: serde_json::to_value(&r).expect("serialisable"),
                success: r.passed(),
            };
            Ok((out, json))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok((out, json)) => {
            println!("{}", out.render(json));
            ExitCode::from(out.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
