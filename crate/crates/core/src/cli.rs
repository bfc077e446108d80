//! The `softupdate` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::corpus;
use crate::crosscheck::{self, Operation};
use crate::netspec::{self, Environment};
use crate::sweep;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "softupdate", version, about = "Exact Jeffrey and Pearl updating over netspec models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a named value or query from a netspec file.
    Eval {
        file: PathBuf,
        query: String,
        /// Also print the result as decimals with this many digits.
        #[arg(long, value_name = "N")]
        decimal: Option<usize>,
        /// Print the intermediate steps of an update.
        #[arg(long)]
        explain: bool,
        /// Keep zero-weight terms in ket sums.
        #[arg(long)]
        show_zeros: bool,
    },
    /// Print target probabilities under both rules as evidence strength varies.
    Sweep {
        file: PathBuf,
        /// Channel whose binary codomain carries the evidence.
        #[arg(long)]
        channel: String,
        #[arg(long)]
        prior: String,
        /// Element of the prior's space to report.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 100)]
        steps: u32,
        #[arg(long, value_name = "N")]
        decimal: Option<usize>,
    },
    /// Run the bundled example networks against their known results.
    Examples,
    /// Compare the calculus with brute-force enumeration on random instances.
    Check {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        instances: usize,
    },
}

/// Parses `args` (program name first) and runs the command, returning the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval {
            file,
            query,
            decimal,
            explain,
            show_zeros,
        } => eval(&file, &query, decimal, explain, show_zeros, out),
        Command::Sweep {
            file,
            channel,
            prior,
            target,
            steps,
            decimal,
        } => run_sweep(&file, &channel, &prior, &target, steps, decimal, out),
        Command::Examples => examples(out),
        Command::Check { seed, instances } => check(seed, instances, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "{message}");
            code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn failed(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FAILURE,
        message: message.into(),
    }
}

fn load(file: &PathBuf) -> Result<Environment, Failure> {
    let source = std::fs::read_to_string(file).map_err(|e| usage(format!("{}: {e}", file.display())))?;
    netspec::load(&source).map_err(|diags| {
        usage(
            diags
                .iter()
                .map(|d| format!("{}:{d}", file.display()))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })
}

fn eval(
    file: &PathBuf,
    query: &str,
    decimal: Option<usize>,
    explain: bool,
    show_zeros: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let env = load(file)?;
    if !env.contains(query) {
        return Err(usage(format!("{}: no value or query named `{query}`", file.display())));
    }
    let value = env.evaluate(query).map_err(|e| failed(e.to_string()))?;
    let report = if explain {
        env.explain(query).map_err(|e| failed(e.to_string()))?
    } else {
        None
    };
    let mut text = match &report {
        Some(r) => r.render(),
        None => value.render(show_zeros),
    };
    if let Some(digits) = decimal {
        text.push('\n');
        text.push_str(&value.render_decimal(digits, show_zeros));
    }
    let _ = writeln!(out, "{text}");
    Ok(EXIT_OK)
}

fn run_sweep(
    file: &PathBuf,
    channel: &str,
    prior: &str,
    target: &str,
    steps: u32,
    decimal: Option<usize>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let env = load(file)?;
    for name in [channel, prior] {
        if !env.contains(name) {
            return Err(usage(format!("{}: no value or query named `{name}`", file.display())));
        }
    }
    let c = env.channel(channel).map_err(|e| usage(e.to_string()))?;
    let p = env.state(prior).map_err(|e| usage(e.to_string()))?;
    let rows = sweep::sweep(&p, &c, target, steps).map_err(|e| failed(e.to_string()))?;
    let _ = write!(out, "{}", sweep::to_csv(&rows, decimal));
    Ok(EXIT_OK)
}

fn examples(out: &mut dyn Write) -> Result<i32, Failure> {
    let mut all_ok = true;
    for f in corpus::FILES {
        let status = match netspec::load(f.source) {
            Ok(env) => match env.query_names().find_map(|q| env.evaluate(q).err()) {
                None => "ok".to_string(),
                Some(e) => format!("evaluation failed: {e}"),
            },
            Err(d) => format!("rejected: {}", d[0]),
        };
        let ok = status == "ok";
        all_ok &= ok;
        let _ = writeln!(out, "{}  load {:<28} {status}", mark(ok), f.name);
    }
    let malformed = match netspec::parse(corpus::MALFORMED.source) {
        Err(d) => (true, d[0].to_string()),
        Ok(_) => (false, "accepted".to_string()),
    };
    all_ok &= malformed.0;
    let _ = writeln!(
        out,
        "{}  load {:<28} {}",
        mark(malformed.0),
        corpus::MALFORMED.name,
        malformed.1
    );
    for o in corpus::run_all() {
        all_ok &= o.passed;
        let _ = writeln!(
            out,
            "{}  {:<32} {}:{}\n      expected {}\n      actual   {}",
            mark(o.passed),
            o.example.label,
            o.example.file,
            o.example.query,
            o.expected,
            o.actual
        );
    }
    let _ = writeln!(out, "{}", if all_ok { "all examples pass" } else { "some examples FAILED" });
    Ok(if all_ok { EXIT_OK } else { EXIT_FAILURE })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn check(seed: u64, instances: usize, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = crosscheck::run(seed, instances);
    let _ = writeln!(out, "seed {seed}, {instances} instances");
    for op in Operation::ALL {
        let bad = report.mismatches.iter().filter(|m| m.operation == op).count();
        let _ = writeln!(
            out,
            "{}  {:<12} {} comparisons, {bad} mismatches",
            mark(bad == 0),
            op.name(),
            report.compared[op as usize]
        );
    }
    for m in report.mismatches.iter().take(10) {
        let _ = writeln!(out, "  {m}");
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
