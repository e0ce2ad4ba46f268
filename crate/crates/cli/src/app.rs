//! Command-line interface.
//!
//! Exit codes: 0 success, 1 counterexample-class theorem failure, 2 input or
//! parse error, 3 internal integrity error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use fixlocus::automorphism::{
    detect_order, fixed_hypersurface_part, FixedPart, DEFAULT_ITER_BOUND, DEFAULT_ORDER_DEGREE_CAP,
    DEFAULT_ROOT_OF_UNITY_BOUND,
};
use fixlocus::factor::DEFAULT_DEGREE_CAP;
use fixlocus::theorem::{check_fix_equals_hypersurface, verify_ruled_witness, ReportOptions, DEFAULT_SEED};

use crate::corpus;
use crate::dsl::print_document;
use crate::report::{analyze, order_json, order_text, render_text, specialness_text, Report};
use crate::subject::{load, select, subjects, CliError, Subject};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "fixlocus", version, about = "Fixed hypersurfaces of polynomial automorphisms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every check on a map and print the report.
    Analyze {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        opts: Opts,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Print the hypersurface part of the fixed locus and whether it is all of Fix(f).
    Fix {
        #[command(flatten)]
        target: Target,
    },
    /// Print the Jacobian determinant and the specialness verdict.
    Jacobian {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        opts: Opts,
    },
    /// Detect a finite order up to the iteration bound.
    Order {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        opts: Opts,
    },
    /// Verify the ruled witnesses attached to a map.
    WitnessVerify {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        opts: Opts,
    },
    /// Print a document in canonical form.
    Print {
        /// A file path or `corpus:<name>`.
        source: String,
    },
    /// Work with the built-in corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCommand {
    /// List the entries.
    List,
    /// Analyze every entry; exits 1 iff a theorem verdict fails.
    RunAll {
        #[command(flatten)]
        opts: Opts,
        /// Emit a JSON array of reports.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct Target {
    /// A file path or `corpus:<name>`.
    source: String,
    /// Map to use when the document defines several.
    #[arg(long)]
    map: Option<String>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Opts {
    /// Seed for every randomized check.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest m tried when looking for f^m = id.
    #[arg(long, default_value_t = DEFAULT_ITER_BOUND, value_parser = clap::value_parser!(u32).range(1..))]
    iter_bound: u32,
    /// Abort order detection once an iterate exceeds this total degree.
    #[arg(long, default_value_t = DEFAULT_ORDER_DEGREE_CAP)]
    degree_cap: u32,
    /// Total degree above which irreducibility is reported as unknown.
    #[arg(long, default_value_t = DEFAULT_DEGREE_CAP)]
    factor_degree_cap: u32,
    /// Largest k tried when looking for lambda^k = 1.
    #[arg(long, default_value_t = DEFAULT_ROOT_OF_UNITY_BOUND)]
    root_bound: u32,
}

impl From<Opts> for ReportOptions {
    fn from(o: Opts) -> Self {
        ReportOptions {
            seed: o.seed,
            iter_bound: o.iter_bound,
            order_degree_cap: o.degree_cap,
            factor_degree_cap: o.factor_degree_cap,
            root_bound: o.root_bound,
        }
    }
}

fn subject(target: &Target) -> Result<Subject, CliError> {
    let loaded = load(&target.source)?;
    select(&loaded.doc, target.map.as_deref())
}

fn status_code(report: &Report) -> i32 {
    if report.has_failure() {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    let w = |out: &mut dyn Write, s: &str| {
        let _ = out.write_all(s.as_bytes());
    };
    match command {
        Command::Analyze { target, opts, json } => {
            let report = analyze(&subject(&target)?, &opts.into())?;
            if json {
                w(out, &format!("{}\n", report.to_json()));
            } else {
                w(out, &render_text(&report));
            }
            Ok(status_code(&report))
        }
        Command::Fix { target } => {
            let s = subject(&target)?;
            let text = match fixed_hypersurface_part(s.forward()) {
                FixedPart::WholeSpace => "whole space (identity map)\n".to_string(),
                FixedPart::Unit => "no hypersurface in Fix(f)\n".to_string(),
                FixedPart::Hypersurface(h) => {
                    let equal = match s.automorphism() {
                        Some(f) => match check_fix_equals_hypersurface(f) {
                            Some(true) => "yes",
                            _ => "no",
                        },
                        None => "n/a (no certified inverse)",
                    };
                    format!("hypersurface: {}\nFix = V(h): {equal}\n", s.poly_string(&h))
                }
            };
            w(out, &text);
            Ok(EXIT_OK)
        }
        Command::Jacobian { target, opts } => {
            let s = subject(&target)?;
            let det = s.forward().jacobian_determinant();
            let spec = s.forward().classify(opts.root_bound)?;
            w(out, &format!("determinant: {}\njacobian: {}\n", s.poly_string(&det), specialness_text(&spec)));
            Ok(EXIT_OK)
        }
        Command::Order { target, opts } => {
            let s = subject(&target)?;
            let order = detect_order(s.forward(), opts.iter_bound, opts.degree_cap);
            w(out, &format!("{}\n", order_text(&order_json(order, &opts.into()))));
            Ok(EXIT_OK)
        }
        Command::WitnessVerify { target, opts } => {
            let s = subject(&target)?;
            if s.witnesses.is_empty() {
                w(out, &format!("map `{}` has no witnesses\n", s.name));
                return Ok(EXIT_OK);
            }
            let mut all = true;
            for named in &s.witnesses {
                let check = verify_ruled_witness(&named.witness, opts.seed)?;
                all &= check.verified();
                let mut failed = Vec::new();
                if !check.image_in_target {
                    failed.push("image not contained in the target");
                }
                if !check.nonconstant_in_t {
                    failed.push("constant in t");
                }
                if !check.dominant {
                    failed.push("not dominant at the sampled points");
                }
                let status = if failed.is_empty() { "verified".to_string() } else { format!("FAILED: {}", failed.join(", ")) };
                w(
                    out,
                    &format!(
                        "{}: {status} (target {}, rank test probabilistic, {} attempt(s))\n",
                        named.name,
                        s.poly_string(&named.witness.target),
                        check.attempts
                    ),
                );
            }
            Ok(if all { EXIT_OK } else { EXIT_INPUT })
        }
        Command::Print { source } => {
            let loaded = load(&source)?;
            w(out, &print_document(&loaded.doc));
            Ok(EXIT_OK)
        }
        Command::Corpus { command: CorpusCommand::List } => {
            for e in corpus::ENTRIES {
                let doc = crate::dsl::parse_document(e.text).map_err(|error| CliError::Parse {
                    origin: format!("corpus:{}", e.name),
                    error,
                })?;
                let note = doc.notes().next().unwrap_or("");
                w(out, &format!("{:<14} {note}\n", e.name));
            }
            Ok(EXIT_OK)
        }
        Command::Corpus { command: CorpusCommand::RunAll { opts, json } } => {
            let reports = run_all(&opts.into())?;
            if json {
                w(out, &format!("{}\n", serde_json::to_string_pretty(&reports).expect("reports serialize")));
            } else {
                for r in &reports {
                    let count = |s: &str| r.theorem_verdicts.iter().filter(|v| v.status == s).count();
                    let head = if r.has_failure() { "FAIL" } else { "ok" };
                    w(
                        out,
                        &format!(
                            "{head:<4} {:<14} pass {} / fail {} / inconclusive {} / not-applicable {}\n",
                            r.name,
                            count("pass"),
                            count("fail"),
                            count("inconclusive"),
                            count("not-applicable")
                        ),
                    );
                }
            }
            Ok(if reports.iter().any(Report::has_failure) { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
        }
    }
}

/// Reports for every corpus entry, in entry-name order.
pub fn run_all(opts: &ReportOptions) -> Result<Vec<Report>, CliError> {
    let mut reports = Vec::new();
    for e in corpus::ENTRIES {
        let doc = crate::dsl::parse_document(e.text)
            .map_err(|error| CliError::Parse { origin: format!("corpus:{}", e.name), error })?;
        for s in subjects(&doc)? {
            reports.push(analyze(&s, opts)?);
        }
    }
    Ok(reports)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e.exit_code() {
                3 => EXIT_INTEGRITY,
                _ => EXIT_INPUT,
            }
        }
    }
}
