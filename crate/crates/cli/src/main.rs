mod args;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gbent::search::{run_search, Mode, SearchSpec};
use gbent::suites::{run_suite, Suite, SuiteParams};
use gbent::{Error, GbfTable, Level};
use serde_json::{json, Value};

use args::{AnalyzeArgs, Cli, Command, InputArgs, ModeName, SearchArgs, SuiteName, VerifyArgs};

const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible(_) | Error::Disagreement(_) | Error::Io(_) => FAILED,
            _ => BAD_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: BAD_INPUT,
        message: message.into(),
    }
}

fn parse_table(text: &str) -> Result<GbfTable, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        serde_json::from_str(text).map_err(|e| bad_input(format!("malformed JSON table: {e}")))
    } else {
        Ok(GbfTable::parse(text)?)
    }
}

fn read_input(input: &InputArgs) -> Result<GbfTable, Failure> {
    if let Some(path) = &input.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad_input(format!("{}: {e}", path.display())))?;
        return parse_table(&text);
    }
    match input.tt.as_ref().or(input.table.as_ref()) {
        Some(t) => parse_table(t),
        None => Err(bad_input("no truth table given (positional, --tt or --file)")),
    }
}

fn print(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("serializable");
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn analyze(a: &AnalyzeArgs) -> Result<(), Failure> {
    let f = read_input(&a.input)?;
    if a.gray_only {
        gray(&f);
    } else {
        print(&report::analyze(&f, a.approx)?);
    }
    Ok(())
}

fn gray(f: &GbfTable) {
    print(&json!({ "input": report::input_section(f), "gray": report::gray_section(f) }));
}

fn suite_of(s: SuiteName) -> Suite {
    match s {
        SuiteName::Identities => Suite::Identities,
        SuiteName::K2 => Suite::K2,
        SuiteName::K3 => Suite::K3,
        SuiteName::K4 => Suite::K4,
        SuiteName::K4Z4 => Suite::K4Z4,
        SuiteName::Gsemibent => Suite::Gsemibent,
        SuiteName::Inductive => Suite::Inductive,
        SuiteName::Gray => Suite::Gray,
        SuiteName::Regularity => Suite::Regularity,
    }
}

fn verify(a: &VerifyArgs) -> Result<(), Failure> {
    let suite = suite_of(a.suite);
    if let (Some(k), Some(fixed)) = (a.k, suite.fixed_level()) {
        if k != fixed {
            return Err(bad_input(format!("suite {suite} runs at k = {fixed}, got --k {k}")));
        }
    }
    let report = run_suite(
        suite,
        SuiteParams {
            n: a.n,
            k: a.k,
            samples: a.samples,
            seed: a.seed,
        },
    )?;
    print(&serde_json::to_value(&report).expect("serializable"));
    if report.passed() {
        Ok(())
    } else {
        Err(Failure {
            code: FAILED,
            message: format!(
                "{} discrepancies; first: {}",
                report.discrepancies,
                report.first_witness.unwrap_or_default()
            ),
        })
    }
}

fn search(a: &SearchArgs) -> Result<(), Failure> {
    let k = Level::new(a.k)?;
    let mode = match a.mode {
        ModeName::Exhaustive => Mode::Exhaustive,
        ModeName::Random => Mode::Random {
            count: a.count,
            seed: a.seed,
        },
        ModeName::Construct => Mode::Construct {
            family: a.family.parse()?,
            count: a.count,
            seed: a.seed,
        },
    };
    let spec = SearchSpec {
        n: a.n,
        k,
        mode,
        predicate: a.predicate.parse()?,
        output: a.out.clone(),
    };
    let summary = run_search(&spec)?;
    print(&serde_json::to_value(summary).expect("serializable"));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Gray(input) => read_input(input).map(|f| gray(&f)),
        Command::Verify(a) => verify(a),
        Command::Search(a) => search(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("gbent: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
