//! Command-line front end: argument parsing, dispatch and report rendering.
//!
//! Exit codes: 0 success, 2 precondition violation, 3 property failure,
//! 4 parse error.

mod suites;

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use unramified::field::FqField;
use unramified::function_field::{parse_place, parse_symbol, residue};
use unramified::kato::{unramified, KatoComplex, SupportPolicy, MAX_DEGREE_ENV};
use unramified::spectral::FilteredComplex;
use unramified::Error;

pub use suites::{run_suite, SuiteReport, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_PROPERTY: i32 = 3;
pub const EXIT_PARSE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "unramified", version, about = "Unramified cohomology of F_q(t) and friends")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unramified cohomology H^i_ur(F_q(t), Z/m(i)).
    Unramified {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        i: i64,
        /// Largest place degree to try (default: $UNRAMIFIED_MAX_D or 6).
        #[arg(long = "max-degree", short = 'D')]
        max_degree: Option<usize>,
    },
    /// Residue of a Milnor symbol at a place.
    Residue {
        #[arg(long, default_value_t = 7)]
        q: u64,
        #[arg(long, default_value_t = 2)]
        m: u64,
        /// A monic irreducible polynomial in t, or "inf".
        #[arg(long)]
        at: String,
        /// For example "{t, t-1}".
        symbol: String,
    },
    /// Homology of a truncated Kato complex.
    Kato {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        i: i64,
        #[arg(long)]
        j: i64,
        #[arg(long = "max-degree", short = 'D', default_value_t = 2)]
        max_degree: usize,
    },
    /// Pages of the spectral sequence of a filtered complex given as JSON.
    Pages {
        /// Path to the complex, or "-" for stdin.
        input: String,
        /// Last finite page to print.
        #[arg(long, default_value_t = 2)]
        r: usize,
    },
    /// Run a seeded property suite.
    Verify {
        /// One of complex, reciprocity, steinberg, lemma42, pages, units, snf.
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Restrict to one field order.
        #[arg(long)]
        q: Option<u64>,
        /// Restrict to one modulus.
        #[arg(long)]
        m: Option<u64>,
        /// Support bound for the complex suite.
        #[arg(long = "max-degree", short = 'D', default_value_t = 2)]
        max_degree: usize,
    },
}

/// Everything a report needs to be reproduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub q: Option<u64>,
    pub m: Option<u64>,
    pub i: Option<i64>,
    pub j: Option<i64>,
    pub max_degree: Option<usize>,
    pub r: Option<usize>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub suite: Option<String>,
    pub place: Option<String>,
    pub symbol: Option<String>,
    pub input: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Core(Error),
    UnknownSuite(String),
    Io(String),
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::UnknownSuite(_) => "UnknownSuite",
            CliError::Io(_) => "IoError",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Parse { .. }) => EXIT_PARSE,
            _ => EXIT_PRECONDITION,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::UnknownSuite(s) => format!("unknown suite {s:?}; expected one of {}", SUITES.join(", ")),
            CliError::Io(s) => s.clone(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Rendered {
    code: i32,
    json: Value,
    text: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let config = config_of(&cli.command);
    match dispatch(&cli.command) {
        Ok(rendered) => {
            let stdout = match cli.format {
                Format::Json => {
                    let report = json!({ "config": config, "result": rendered.json });
                    format!("{}\n", serde_json::to_string_pretty(&report).expect("JSON values serialize"))
                }
                Format::Text => {
                    let mut s = config_line(&config);
                    s.push_str(&rendered.text);
                    s
                }
            };
            Outcome {
                code: rendered.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = format!("error: {}: {}\n", e.name(), e.message());
            let stdout = match cli.format {
                Format::Json => {
                    let mut error = json!({ "name": e.name(), "message": e.message() });
                    if let CliError::Core(Error::Parse { column, .. }) = &e {
                        error["column"] = json!(column);
                    }
                    let report = json!({ "config": config, "error": error });
                    format!("{}\n", serde_json::to_string_pretty(&report).expect("JSON values serialize"))
                }
                Format::Text => String::new(),
            };
            Outcome {
                code: e.exit_code(),
                stdout,
                stderr,
            }
        }
    }
}

fn config_of(command: &Command) -> RunConfig {
    match command {
        Command::Unramified { q, m, i, max_degree } => RunConfig {
            command: "unramified".into(),
            q: Some(*q),
            m: Some(*m),
            i: Some(*i),
            max_degree: Some(max_degree.unwrap_or_else(|| {
                SupportPolicy::from_env().map(|p| p.max_degree).unwrap_or_default()
            })),
            ..Default::default()
        },
        Command::Residue { q, m, at, symbol } => RunConfig {
            command: "residue".into(),
            q: Some(*q),
            m: Some(*m),
            place: Some(at.clone()),
            symbol: Some(symbol.clone()),
            ..Default::default()
        },
        Command::Kato { q, m, i, j, max_degree } => RunConfig {
            command: "kato".into(),
            q: Some(*q),
            m: Some(*m),
            i: Some(*i),
            j: Some(*j),
            max_degree: Some(*max_degree),
            ..Default::default()
        },
        Command::Pages { input, r } => RunConfig {
            command: "pages".into(),
            r: Some(*r),
            input: Some(input.clone()),
            ..Default::default()
        },
        Command::Verify { suite, seed, trials, q, m, max_degree } => RunConfig {
            command: "verify".into(),
            q: *q,
            m: *m,
            max_degree: Some(*max_degree),
            seed: Some(*seed),
            trials: Some(*trials),
            suite: Some(suite.clone()),
            ..Default::default()
        },
    }
}

fn config_line(c: &RunConfig) -> String {
    let mut parts = vec![format!("command={}", c.command)];
    let mut push = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            parts.push(format!("{k}={v}"));
        }
    };
    push("suite", c.suite.clone());
    push("q", c.q.map(|x| x.to_string()));
    push("m", c.m.map(|x| x.to_string()));
    push("i", c.i.map(|x| x.to_string()));
    push("j", c.j.map(|x| x.to_string()));
    push("D", c.max_degree.map(|x| x.to_string()));
    push("r", c.r.map(|x| x.to_string()));
    push("seed", c.seed.map(|x| x.to_string()));
    push("trials", c.trials.map(|x| x.to_string()));
    push("at", c.place.as_ref().map(|x| format!("{x:?}")));
    push("symbol", c.symbol.as_ref().map(|x| format!("{x:?}")));
    push("input", c.input.clone());
    format!("# {}\n", parts.join(" "))
}

fn group_text(factors: &[u64]) -> String {
    if factors.is_empty() {
        "0".into()
    } else {
        factors.iter().map(|f| format!("Z/{f}")).collect::<Vec<_>>().join(" + ")
    }
}

fn dispatch(command: &Command) -> Result<Rendered, CliError> {
    match command {
        Command::Unramified { q, m, i, max_degree } => cmd_unramified(*q, *m, *i, *max_degree),
        Command::Residue { q, m, at, symbol } => cmd_residue(*q, *m, at, symbol),
        Command::Kato { q, m, i, j, max_degree } => cmd_kato(*q, *m, *i, *j, *max_degree),
        Command::Pages { input, r } => cmd_pages(input, *r),
        Command::Verify { suite, seed, trials, q, m, max_degree } => {
            let report = run_suite(suite, *seed, *trials, *q, *m, *max_degree)?;
            let code = if report.failed() == 0 { EXIT_OK } else { EXIT_PROPERTY };
            let mut text = format!(
                "{}: {}/{} passed\n",
                report.suite, report.passed, report.trials
            );
            for f in &report.failures {
                let _ = writeln!(text, "  trial {} failed: {}", f.trial, f.reason);
                let _ = writeln!(text, "    {}", f.instance);
            }
            Ok(Rendered {
                code,
                json: serde_json::to_value(&report).expect("plain data serializes"),
                text,
            })
        }
    }
}

fn cmd_unramified(q: u64, m: u64, i: i64, max_degree: Option<usize>) -> Result<Rendered, CliError> {
    let policy = match max_degree {
        Some(d) => SupportPolicy::new(d),
        None => SupportPolicy::from_env()?,
    };
    let group = unramified(q, m, i, policy)?;
    let mut text = format!(
        "H^{i}_ur(F_{q}(t), Z/{m}({i})) = {}\norder: {}\ninvariant factors: {:?}\n",
        group_text(&group.factors),
        group.order(),
        group.factors
    );
    match group.stabilized_at {
        Some(d) => {
            let _ = writeln!(text, "stabilized at D = {d} (bound {})", policy.max_degree);
        }
        None => {
            let _ = writeln!(text, "no support search needed");
        }
    }
    if let Some(note) = &group.note {
        let _ = writeln!(text, "note: {note}");
    }
    for s in &group.stages {
        let _ = writeln!(
            text,
            "  D = {}: {} places, {}x{} differential, {}",
            s.max_degree,
            s.places,
            s.rows,
            s.cols,
            group_text(&s.factors)
        );
    }
    let mut json = serde_json::to_value(&group).expect("plain data serializes");
    json["order"] = json!(group.order());
    json["max_degree_env"] = json!(MAX_DEGREE_ENV);
    Ok(Rendered { code: EXIT_OK, json, text })
}

fn cmd_residue(q: u64, m: u64, at: &str, symbol: &str) -> Result<Rendered, CliError> {
    let field = FqField::of_order(q)?;
    let x = parse_symbol(&field, symbol, m)?;
    let place = parse_place(&field, at)?;
    let r = residue(&field, &x, &place)?;
    let value = r.value(&field);
    let trivial = value == 0;
    let class = match r.n {
        0 => format!("{value} in Z/{m}"),
        1 => format!("class of g^{value} in κ(v)^×/{m}"),
        n => format!("0 in K_{n}(κ(v))/{m}"),
    };
    let text = format!(
        "residue at {}: {class} ({})\n",
        place.display(&field),
        if trivial { "trivial" } else { "nontrivial" }
    );
    let json = json!({
        "place": place.display(&field).to_string(),
        "place_degree": place.degree(),
        "residue_degree": r.n,
        "value": value,
        "modulus": m,
        "trivial": trivial,
        "invariant_factors": [m],
    });
    Ok(Rendered { code: EXIT_OK, json, text })
}

fn cmd_kato(q: u64, m: u64, i: i64, j: i64, max_degree: usize) -> Result<Rendered, CliError> {
    let c = KatoComplex::build(q, m, i, j, max_degree)?;
    let h1 = c.homology(1)?.factors_u64();
    let h0 = c.homology(0)?.factors_u64();
    let text = format!(
        "C^{{{i},{j}}} over F_{q}, m = {m}, D = {max_degree}: {} -> {}\nH_1 = {}  {:?}\nH_0 = {}  {:?}\n",
        c.rank(1)?,
        c.rank(0)?,
        group_text(&h1),
        h1,
        group_text(&h0),
        h0
    );
    let json = json!({
        "ranks": [c.rank(0)?, c.rank(1)?],
        "places": c.support().len(),
        "homology": { "1": h1, "0": h0 },
    });
    Ok(Rendered { code: EXIT_OK, json, text })
}

fn cmd_pages(input: &str, r: usize) -> Result<Rendered, CliError> {
    let raw = if input == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| CliError::Io(e.to_string()))?
    } else {
        std::fs::read_to_string(input).map_err(|e| CliError::Io(format!("{input}: {e}")))?
    };
    let value: Value = serde_json::from_str(&raw).map_err(|e| {
        CliError::Core(Error::Parse {
            column: e.column().saturating_sub(1),
            message: e.to_string(),
        })
    })?;
    let complex = FilteredComplex::from_json(&value)?;
    let mut pages = Vec::new();
    let mut text = String::new();
    let infinity = complex.infinity_page();
    let indices: Vec<usize> = (1..=r.max(1)).chain([infinity]).collect();
    for &k in &indices {
        let page = complex.page(k)?;
        let label = if k == infinity { "E_inf".to_string() } else { format!("E_{k}") };
        let _ = writeln!(text, "{label}:");
        let mut entries = Vec::new();
        for (p, q, factors) in page.summary() {
            if !factors.is_empty() {
                let _ = writeln!(text, "  ({p},{q}): {}", group_text(&factors));
            }
            entries.push(json!({ "p": p, "q": q, "invariant_factors": factors }));
        }
        pages.push(json!({ "r": k, "label": label, "entries": entries }));
    }
    let cohomology = (0..=complex.length() as i64)
        .map(|n| complex.cohomology(n).map(|h| h.factors_u64()))
        .collect::<Result<Vec<_>, _>>()?;
    for (n, h) in cohomology.iter().enumerate() {
        let _ = writeln!(text, "H^{n} = {}", group_text(h));
    }
    let converges = complex.convergence_holds()?;
    let _ = writeln!(text, "counting convergence: {converges}");
    let json = json!({ "pages": pages, "cohomology": cohomology, "convergence": converges });
    let code = if converges { EXIT_OK } else { EXIT_PROPERTY };
    Ok(Rendered { code, json, text })
}
