//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and returns the text
//! for standard output and standard error together with the exit code:
//! `0` success, `1` verification failure, `2` usage error, `3` resource or
//! overflow error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::arith::{self, DivisorFunctions};
use crate::counting::{self, CountResult};
use crate::jof::{self, Jof, TargetTuple};
use crate::systems::{self, AnySystem, SystemDocument, Verdict};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sumsys", version, about = "Enumerate, build, verify and count sum systems")]
struct Cli {
    /// Output format. JSON by default; CSV by default for `table`.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    /// Classical divisor function d_j.
    D,
    /// Non-trivial divisor function c_j.
    C,
    /// Associated divisor function c_j^(r).
    Assoc,
    /// (e - mu)^{*j}, square-free ordered factorisations with sign.
    Sqfree,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Number of m-part sum systems for N, or of JOFs for a fixed tuple.
    #[command(group(ArgGroup::new("target").required(true).args(["n", "tuple"])))]
    Count {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, requires = "n", conflicts_with = "all_m")]
        m: Option<u32>,
        /// Every m from 1 to Omega(N).
        #[arg(long, requires = "n")]
        all_m: bool,
        /// Also report M_m(N) = N_m(N) / m!.
        #[arg(long, requires = "n")]
        unordered: bool,
        /// Comma-separated cardinalities n1,n2,...
        #[arg(long)]
        tuple: Option<String>,
    },
    /// List the JOFs of a tuple in lexicographic order.
    Enumerate {
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build the sum system of a JOF given as `j:f,...` or `[[j,f],...]`.
    Build {
        #[arg(long)]
        jof: String,
        #[arg(long)]
        centred: bool,
        #[arg(long)]
        sum_and_distance: bool,
    },
    /// Verify a system JSON file.
    Verify {
        #[arg(long)]
        file: PathBuf,
    },
    /// The N_m(N) grid for N = 1..=max-n, m = 1..=max-m.
    Table {
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        max_m: u32,
    },
    /// Evaluate a divisor function.
    DivisorFn {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        j: u32,
        #[arg(long, allow_negative_numbers = true)]
        r: Option<i64>,
        #[arg(long)]
        n: u64,
    },
    /// Residuals of the sum-over-divisors relations for N_m and M_m.
    Check {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = std::result::Result<(String, i32), Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli) {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => {
            let code = match e {
                Error::Domain(_) | Error::Parse(_) => EXIT_USAGE,
                Error::Overflow(_) | Error::CapExceeded { .. } | Error::Consistency(_) => {
                    EXIT_RESOURCE
                }
            };
            Outcome {
                code,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output is serialisable");
    s.push('\n');
    s
}

fn dispatch(cli: Cli) -> CmdResult {
    let format = cli.format;
    if format == Some(Format::Csv) && !matches!(cli.command, Command::Table { .. }) {
        return Err(Failure::Usage("csv output is only available for `table`".into()));
    }
    let plain = format == Some(Format::Plain);
    match cli.command {
        Command::Count {
            n,
            m,
            all_m,
            unordered,
            tuple,
        } => match (n, tuple) {
            (_, Some(t)) => count_tuple(&t, plain),
            (Some(n), None) => count_n(n, m, all_m, unordered, plain),
            (None, None) => unreachable!("clap requires --n or --tuple"),
        },
        Command::Enumerate { tuple, limit } => enumerate(&tuple, limit, plain),
        Command::Build {
            jof,
            centred,
            sum_and_distance,
        } => build(&jof, centred, sum_and_distance, plain),
        Command::Verify { file } => verify(&file, plain),
        Command::Table { max_n, max_m } => table(max_n, max_m, format.unwrap_or(Format::Csv)),
        Command::DivisorFn { kind, j, r, n } => divisor_fn(kind, j, r, n, plain),
        Command::Check { n, m } => check(n, m, plain),
    }
}

#[derive(Serialize)]
struct CountDoc {
    #[serde(rename = "N")]
    n: u64,
    m: u32,
    count: i128,
    method: counting::Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    unordered: Option<i128>,
}

fn count_doc(n: u64, m: u32, unordered: bool) -> std::result::Result<CountDoc, Failure> {
    let CountResult { value, method } = counting::count_m_part(n, m)?;
    let unordered = if unordered {
        Some(counting::count_unordered(n, m)?.value)
    } else {
        None
    };
    Ok(CountDoc {
        n,
        m,
        count: value,
        method,
        unordered,
    })
}

fn count_n(n: u64, m: Option<u32>, all_m: bool, unordered: bool, plain: bool) -> CmdResult {
    let docs = match (m, all_m) {
        (Some(m), false) => vec![count_doc(n, m, unordered)?],
        (None, true) => {
            let omega = arith::big_omega(n)?;
            (1..=omega)
                .map(|m| count_doc(n, m, unordered))
                .collect::<std::result::Result<Vec<_>, _>>()?
        }
        _ => return Err(Failure::Usage("count --n needs --m M or --all-m".into())),
    };
    let out = if plain {
        let mut s = String::new();
        for d in &docs {
            match (all_m, d.unordered) {
                (false, None) => writeln!(s, "{}", d.count),
                (false, Some(u)) => writeln!(s, "{} {u}", d.count),
                (true, None) => writeln!(s, "{} {}", d.m, d.count),
                (true, Some(u)) => writeln!(s, "{} {} {u}", d.m, d.count),
            }
            .expect("writing to a String");
        }
        s
    } else if all_m {
        to_json(&docs)
    } else {
        to_json(&docs[0])
    };
    Ok((out, EXIT_OK))
}

fn count_tuple(t: &str, plain: bool) -> CmdResult {
    let tuple: TargetTuple = t.parse()?;
    let count = jof::count_for_tuple(&tuple)?;
    let out = if plain {
        format!("{count}\n")
    } else {
        to_json(&json!({
            "tuple": tuple,
            "N": tuple.product(),
            "m": tuple.len(),
            "count": count,
            "method": counting::Method::ClosedForm,
        }))
    };
    Ok((out, EXIT_OK))
}

fn enumerate(t: &str, limit: Option<usize>, plain: bool) -> CmdResult {
    let tuple: TargetTuple = t.parse()?;
    let (jofs, truncated) = match limit {
        Some(k) => {
            let mut jofs = jof::enumerate_prefix(&tuple, k.saturating_add(1))?;
            let truncated = jofs.len() > k;
            jofs.truncate(k);
            (jofs, truncated)
        }
        None => (jof::enumerate(&tuple)?, false),
    };
    let specs: Vec<String> = jofs.iter().map(Jof::to_string).collect();
    let out = if plain {
        specs.iter().map(|s| format!("{s}\n")).collect()
    } else {
        to_json(&json!({
            "tuple": tuple,
            "count": specs.len(),
            "truncated": truncated,
            "jofs": specs,
        }))
    };
    Ok((out, EXIT_OK))
}

fn plain_components(components: &[Vec<i64>]) -> String {
    components
        .iter()
        .map(|c| {
            let mut line = c.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
            line.push('\n');
            line
        })
        .collect()
}

fn build(spec: &str, centred: bool, sum_and_distance: bool, plain: bool) -> CmdResult {
    let jof = Jof::parse_any(spec)?;
    let doc = if sum_and_distance {
        SystemDocument::from(&systems::to_sum_and_distance(&systems::build_centred(&jof)?))
    } else if centred {
        SystemDocument::from(&systems::build_centred(&jof)?)
    } else {
        SystemDocument::from(&systems::build_sum_system(&jof)?)
    };
    let out = if plain {
        plain_components(&doc.components)
    } else {
        to_json(&doc)
    };
    Ok((out, EXIT_OK))
}

fn verify(path: &PathBuf, plain: bool) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: SystemDocument = serde_json::from_str(&text)
        .map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", path.display()))))?;
    let n = doc.n;
    let (kind, verdict): (&str, Verdict) = match AnySystem::try_from(doc)? {
        AnySystem::Sum(s) => ("sum-system", systems::verify_sum_system(&s)?),
        AnySystem::Centred(c) => ("centred", systems::verify_centred(&c)?),
        AnySystem::SumAndDistance(b) => {
            ("sum-and-distance", systems::verify_centred(&b.to_centred()?)?)
        }
    };
    let failures: Vec<String> = verdict.failures.iter().map(ToString::to_string).collect();
    let code = if verdict.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    let out = if plain {
        if verdict.passed() {
            "verified\n".to_string()
        } else {
            failures.iter().map(|f| format!("failed: {f}\n")).collect()
        }
    } else {
        to_json(&json!({
            "kind": kind,
            "N": n,
            "verified": verdict.passed(),
            "failures": failures,
        }))
    };
    Ok((out, code))
}

fn table(max_n: u64, max_m: u32, format: Format) -> CmdResult {
    let cells = counting::count_table(max_n, max_m)?;
    let out = match format {
        Format::Json => to_json(&cells),
        Format::Csv | Format::Plain => {
            let sep = if format == Format::Csv { "," } else { " " };
            let mut s = if format == Format::Csv {
                String::from("N,m,count\n")
            } else {
                String::new()
            };
            for c in &cells {
                writeln!(s, "{}{sep}{}{sep}{}", c.n, c.m, c.count).expect("writing to a String");
            }
            s
        }
    };
    Ok((out, EXIT_OK))
}

fn divisor_fn(kind: Kind, j: u32, r: Option<i64>, n: u64, plain: bool) -> CmdResult {
    let reg = DivisorFunctions::global();
    if r.is_some() && !matches!(kind, Kind::Assoc) {
        return Err(Failure::Usage("--r only applies to --kind assoc".into()));
    }
    let (name, f) = match kind {
        Kind::D => ("d", reg.classical(j)?),
        Kind::C => ("c", reg.nontrivial(j)?),
        Kind::Assoc => {
            let r = r.ok_or_else(|| Failure::Usage("--kind assoc needs --r R".into()))?;
            ("assoc", reg.associated(j, r)?)
        }
        Kind::Sqfree => ("sqfree", reg.squarefree_ordered(j)?),
    };
    let value = f.eval(n)?;
    let out = if plain {
        format!("{value}\n")
    } else {
        let mut doc = json!({ "kind": name, "j": j, "n": n, "value": value });
        if let Some(r) = r {
            doc["r"] = json!(r);
        }
        to_json(&doc)
    };
    Ok((out, EXIT_OK))
}

fn check(n: u64, m: u32, plain: bool) -> CmdResult {
    let report = counting::divisor_sum_check(n, m)?;
    let code = if report.holds() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    let residuals = report.residuals();
    let out = if plain {
        format!(
            "{} {} {} {}\n",
            residuals[0], residuals[1], residuals[2], residuals[3]
        )
    } else {
        to_json(&json!({
            "report": report,
            "residuals": residuals,
            "holds": report.holds(),
        }))
    };
    Ok((out, code))
}
