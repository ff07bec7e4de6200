//! `uninorm`: command-line front end for the uninorm toolkit.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use uninorm_core::normalize::RewriteTrace;
use uninorm_core::realization::GridFormat;
use uninorm_core::{
    certify_isomorphism, eval_uninorm, normalize, parse_element, parse_term_any, realize, run_laws, sample_grid,
    Element, Fault, Law, Term,
};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    InvalidTerm(String),
    /// The report was printed already.
    #[error("property failure")]
    Property,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Property => 1,
            CliError::Usage(_) => 2,
            CliError::InvalidTerm(_) => 3,
        }
    }
}

impl From<uninorm_core::Error> for CliError {
    fn from(e: uninorm_core::Error) -> Self {
        if e.is_invalid_term() || matches!(e, uninorm_core::Error::NotRealizable(_)) {
            CliError::InvalidTerm(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "uninorm", version, about = "Exact arithmetic for group-like uninorms")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Term in the DSL or its JSON mirror.
    #[arg(long, global = true, conflicts_with = "term_file")]
    term: Option<String>,
    #[arg(long, global = true)]
    term_file: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, global = true, env = "UNINORM_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, hide = true)]
    debug_break_neg: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a term, and optionally an element of it.
    Parse {
        #[arg(long)]
        a: Option<String>,
    },
    /// Evaluate an operation on elements.
    Eval {
        #[arg(long, value_enum)]
        op: Op,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Run the law suite.
    Check,
    /// List the idempotents.
    Idempotents,
    /// Rewrite to canonical form.
    Normalize,
    /// Check that the normalizing rewrites are isomorphisms.
    Certify,
    /// Sample the realized uninorm on the unit square.
    Grid {
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Immediate successor of an element.
    Succ {
        #[arg(long)]
        a: String,
    },
    /// Immediate predecessor of an element.
    Pred {
        #[arg(long)]
        a: String,
    },
    /// Structural facts: kind, group part, gaps, realizability, idempotents.
    Analyze,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Op {
    Mul,
    Neg,
    Res,
    Compare,
    Unit,
    Idempotent,
    Invertible,
    Inverse,
    /// The realized uninorm at two points of [0,1].
    Real,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Csv,
    Pgm,
    Json,
}

impl From<Format> for GridFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => GridFormat::Csv,
            Format::Pgm => GridFormat::Pgm,
            Format::Json => GridFormat::Json,
        }
    }
}

fn load_term(c: &Common) -> CliResult<Term> {
    let text = match (&c.term, &c.term_file) {
        (Some(t), _) => t.clone(),
        (None, Some(path)) => fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path.display(), e)))?,
        (None, None) => return Err(CliError::Usage("one of --term or --term-file is required".into())),
    };
    Ok(parse_term_any(&text)?)
}

fn element(t: &Term, text: Option<&String>, name: &str) -> CliResult<Element> {
    let text = text.ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
    parse_element(t, text).map_err(|e| CliError::Usage(format!("--{name}: {e}")))
}

fn real(text: Option<&String>, name: &str) -> CliResult<f64> {
    let text = text.ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("--{name}: not a number: {text}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Runs one invocation and returns what goes to stdout.
fn run(cli: &Cli) -> CliResult<String> {
    let c = &cli.common;
    let t = load_term(c)?;
    let mut out = String::new();
    match &cli.command {
        Command::Parse { a } => {
            let e = a.as_ref().map(|a| element(&t, Some(a), "a")).transpose()?;
            if c.json {
                out = pretty(&json!({
                    "term": t.to_string(),
                    "tree": serde_json::from_str::<Value>(&uninorm_core::term_to_json(&t)).expect("valid json"),
                    "element": e.as_ref().map(ToString::to_string),
                }));
            } else {
                writeln!(out, "{t}").unwrap();
                if let Some(e) = e {
                    writeln!(out, "{e}").unwrap();
                }
            }
        }
        Command::Eval { op, a, b } => {
            let (a, b) = (a.as_ref(), b.as_ref());
            let value: String = match op {
                Op::Mul => t.mul(&element(&t, a, "a")?, &element(&t, b, "b")?)?.to_string(),
                Op::Res => t.res(&element(&t, a, "a")?, &element(&t, b, "b")?)?.to_string(),
                Op::Neg => t.neg(&element(&t, a, "a")?)?.to_string(),
                Op::Compare => match t.compare(&element(&t, a, "a")?, &element(&t, b, "b")?)? {
                    std::cmp::Ordering::Less => "<".into(),
                    std::cmp::Ordering::Equal => "=".into(),
                    std::cmp::Ordering::Greater => ">".into(),
                },
                Op::Unit => t.unit_element().to_string(),
                Op::Idempotent => t.is_idempotent(&element(&t, a, "a")?)?.to_string(),
                Op::Invertible => t.is_invertible(&element(&t, a, "a")?)?.to_string(),
                Op::Inverse => match t.inverse(&element(&t, a, "a")?)? {
                    Some(i) => i.to_string(),
                    None => "none".into(),
                },
                Op::Real => {
                    let v = eval_uninorm(&t, real(a, "a")?, real(b, "b")?)?;
                    uninorm_core::realization::format_g(v, 12)
                }
            };
            if c.json {
                out = pretty(&json!({ "term": t.to_string(), "op": format!("{op:?}").to_lowercase(), "value": value }));
            } else {
                writeln!(out, "{value}").unwrap();
            }
        }
        Command::Check => {
            let fault = if c.debug_break_neg { Fault::BreakNeg } else { Fault::None };
            let report = run_laws(&t, &Law::ALL, c.samples, c.seed, fault);
            out = if c.json { pretty(&to_json(&report)) } else { report.to_string() };
            if !report.passed() {
                print!("{out}");
                return Err(CliError::Property);
            }
        }
        Command::Idempotents => {
            let census = t.idempotent_census();
            if c.json {
                out = pretty(&to_json(&census));
            } else {
                for e in &census.elements {
                    writeln!(out, "{e}").unwrap();
                }
                writeln!(out, "positive={} negative={}", census.positive, census.negative).unwrap();
            }
        }
        Command::Normalize => {
            let n = normalize(&t)?;
            if c.json {
                out = pretty(&json!({
                    "form": n.form.to_string(),
                    "segments": to_json(&n.form.segments),
                    "trace": to_json(&n.trace),
                }));
            } else {
                writeln!(out, "form: {}", n.form).unwrap();
                writeln!(out, "term: {}", n.trace.target).unwrap();
                write_trace(&mut out, &n.trace);
            }
        }
        Command::Certify => {
            let n = normalize(&t)?;
            let report = certify_isomorphism(&t, &n.trace.target, &n.trace, c.samples, c.seed);
            if c.json {
                out = pretty(&to_json(&report));
            } else {
                writeln!(out, "source: {}", report.source).unwrap();
                writeln!(out, "target: {}", report.target).unwrap();
                writeln!(out, "seed: {}  samples: {}  steps: {}", report.seed, report.samples, n.trace.steps.len()).unwrap();
                for check in &report.checks {
                    let status = if check.violations == 0 { "PASS" } else { "FAIL" };
                    write!(out, "{:<14} {}  {} violations", check.property, status, check.violations).unwrap();
                    if let Some(ce) = &check.counterexample {
                        write!(out, "  counterexample: {ce}").unwrap();
                    }
                    writeln!(out).unwrap();
                }
            }
            if !report.passed() {
                print!("{out}");
                return Err(CliError::Property);
            }
        }
        Command::Grid { resolution, format, out: path } => {
            let grid = sample_grid(&realize(&t)?, *resolution)?;
            let body = grid.render((*format).into());
            match path {
                Some(p) => {
                    fs::write(p, &body).map_err(|e| CliError::Usage(format!("cannot write {}: {}", p.display(), e)))?;
                    writeln!(out, "wrote {} ({:?}, {}x{})", p.display(), format, resolution, resolution).unwrap();
                }
                None => out = body,
            }
        }
        Command::Succ { a } | Command::Pred { a } => {
            let e = element(&t, Some(a), "a")?;
            let r = if matches!(cli.command, Command::Succ { .. }) {
                t.successor(&e)?
            } else {
                t.predecessor(&e)?
            };
            if c.json {
                out = pretty(&json!({ "term": t.to_string(), "a": e.to_string(), "value": r.to_string(), "gap": r != e }));
            } else {
                writeln!(out, "{r}").unwrap();
            }
        }
        Command::Analyze => {
            let facts = t.analyze();
            if c.json {
                out = pretty(&to_json(&facts));
            } else {
                writeln!(out, "term: {}", facts.term).unwrap();
                let kind = facts.kind.map_or("leaf".to_string(), |k| format!("{k:?}"));
                writeln!(out, "kind: {kind}  depth: {}", facts.depth).unwrap();
                writeln!(out, "group part: {}  discrete: {}", facts.group_part, facts.group_part_discrete).unwrap();
                writeln!(out, "dense: {}  proper gapped node: {}", facts.dense, facts.proper_gapped_node).unwrap();
                match &facts.gap_outside_group_part {
                    Some(w) => writeln!(out, "gap outside group part: {w}").unwrap(),
                    None => writeln!(out, "gap outside group part: none").unwrap(),
                }
                writeln!(out, "realizable: {}", facts.realizability.realizable).unwrap();
                for line in &facts.realizability.trace {
                    writeln!(out, "  {line}").unwrap();
                }
                let census = &facts.idempotents;
                writeln!(out, "idempotents: positive={} negative={}", census.positive, census.negative).unwrap();
            }
        }
    }
    Ok(out)
}

fn write_trace(out: &mut String, trace: &RewriteTrace) {
    for (i, s) in trace.steps.iter().enumerate() {
        writeln!(out, "{:>3}. {}  [{}]  -> {}", i + 1, s.step, s.bijection, s.result).unwrap();
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            if !matches!(e, CliError::Property) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.code())
        }
    }
}
