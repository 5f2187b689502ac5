//! The `trigsum` command line: exact evaluation, oracle verification
//! campaigns, coefficient tables and timing.
//!
//! [`run`] is the whole program; `main` only forwards `std::env::args` and
//! exits with the returned code (0 success, 1 verification failure, 2 usage).

pub mod family;
pub mod verify;

use std::fs;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trigsum_core::cotangent::cot_sum_polynomial;
use trigsum_core::exact::{to_decimal, Rational};
use trigsum_core::genfunc::{sigma, sigma_minus};
use trigsum_core::oracle;
use trigsum_core::walks::{cycle_closed_walks, path_closed_walks};

use family::{expand, fraction, human, parse_token, Erratum, Grid, Params, Parsed, Token};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "trigsum",
    version,
    about = "Exact trigonometric power sums, checked against an interval oracle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one sum exactly.
    Eval(EvalArgs),
    /// Compare closed forms with the oracle over a parameter grid.
    Verify(VerifyArgs),
    /// Emit coefficient or walk-count tables.
    Table(TableArgs),
    /// Time the closed form (and optionally the oracle).
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Family token, e.g. C, S, barbero, alt-c, cot, path-walks.
    #[arg(long)]
    family: String,
    /// Half-exponent (also accepted as --p for the Merca sums).
    #[arg(long, visible_alias = "p")]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Also print a decimal expansion with this many fractional digits.
    #[arg(long)]
    digits: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated family tokens; errata names select documented deviations.
    #[arg(long, value_delimiter = ',')]
    family: Vec<String>,
    #[arg(long, default_value_t = 0)]
    m_min: u32,
    #[arg(long, default_value_t = 10)]
    m_max: u32,
    #[arg(long, default_value_t = 1)]
    n_min: u32,
    #[arg(long, default_value_t = 8)]
    n_max: u32,
    /// Largest q for the q-families (default 2n+1 for each n).
    #[arg(long)]
    q_max: Option<u32>,
    /// Largest k for the cotangent families.
    #[arg(long, default_value_t = 12)]
    k_max: u32,
    /// Worker threads (default: TRIGSUM_JOBS, else all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Also reproduce the documented errata; exit 0 only if each one shows up.
    #[arg(long)]
    expect_known_errata: bool,
    /// List every case, not only mismatches.
    #[arg(long)]
    all: bool,
    #[arg(long)]
    json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Sigma,
    SigmaMinus,
    WalksPath,
    WalksCycle,
    CotPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    /// `index value` lines, as in an OEIS b-file
    Bfile,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    kind: TableKind,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 10)]
    k_max: u32,
    #[arg(long, default_value_t = 1)]
    m_min: u32,
    #[arg(long, default_value_t = 10)]
    m_max: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Shorthand for --format json.
    #[arg(long)]
    json: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long)]
    family: String,
    #[arg(long, visible_alias = "p")]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// Also run the oracle and check the values agree.
    #[arg(long)]
    with_oracle: bool,
    /// Run each path this many times and report the fastest.
    #[arg(long, default_value_t = 1)]
    repeat: u32,
    #[arg(long)]
    json: bool,
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a),
        Command::Bench(a) => cmd_bench(a),
    };
    match result {
        Ok(output) => {
            if let Some(path) = &output.path {
                if let Err(e) = fs::write(path, &output.text) {
                    let _ = writeln!(err, "trigsum: cannot write {path}: {e}");
                    return EXIT_USAGE;
                }
                let _ = writeln!(err, "wrote {path}");
            } else {
                let _ = out.write_all(output.text.as_bytes());
            }
            if let Some(note) = &output.note {
                let _ = writeln!(err, "{note}");
            }
            output.code
        }
        Err(msg) => {
            let _ = writeln!(err, "trigsum: {msg}");
            EXIT_USAGE
        }
    }
}

struct Output {
    text: String,
    path: Option<String>,
    code: i32,
    note: Option<String>,
}

impl Output {
    fn stdout(text: String) -> Self {
        Output {
            text,
            path: None,
            code: EXIT_OK,
            note: None,
        }
    }
}

fn single_token(s: &str) -> Result<Token, String> {
    match parse_token(s)? {
        Parsed::Family(t) => Ok(t),
        _ => Err(format!(
            "'{s}' names a documented erratum; use it with verify --expect-known-errata"
        )),
    }
}

fn rational_json(v: &Rational) -> Value {
    json!({"num": v.numer().to_string(), "den": v.denom().to_string()})
}

fn cmd_eval(a: EvalArgs) -> Result<Output, String> {
    let token = single_token(&a.family)?;
    let case = token.case(Params {
        m: a.m,
        n: a.n,
        q: a.q,
        k: a.k,
    })?;
    let value = case.closed_form().map_err(|e| e.to_string())?;
    let decimal = a.digits.map(|d| to_decimal(&value, d));
    let text = if a.json {
        let mut obj = json!({
            "family": case.family_name(),
            "params": case.params_json(),
            "value": rational_json(&value),
        });
        if let Some(d) = &decimal {
            obj["decimal"] = json!(d);
        }
        format!("{obj}\n")
    } else {
        let mut s = format!("{}\n", human(&value));
        if let Some(d) = decimal {
            s.push_str(&format!("{d}\n"));
        }
        s
    };
    Ok(Output::stdout(text))
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, String> {
    let from_env = std::env::var("TRIGSUM_JOBS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    let n = jobs.or(from_env).unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map_err(|e| format!("cannot start worker pool: {e}"))
}

fn cmd_verify(a: VerifyArgs) -> Result<Output, String> {
    if a.m_min > a.m_max || a.n_min > a.n_max {
        return Err("empty parameter range".into());
    }
    let mut tokens = Vec::new();
    let mut errata = Vec::new();
    for name in &a.family {
        match parse_token(name)? {
            Parsed::Family(t) => tokens.push(t),
            Parsed::Erratum(e) => errata.push(e),
            Parsed::AllErrata => errata.extend(Erratum::ALL),
        }
    }
    if !errata.is_empty() && !a.expect_known_errata {
        return Err("errata names require --expect-known-errata".into());
    }
    if a.expect_known_errata && errata.is_empty() {
        errata.extend(Erratum::ALL);
    }
    if tokens.is_empty() && errata.is_empty() {
        return Err(format!(
            "no families selected; known: {}",
            family::token_names().join(", ")
        ));
    }
    errata.sort();
    errata.dedup();
    let grid = Grid {
        m_min: a.m_min,
        m_max: a.m_max,
        n_min: a.n_min,
        n_max: a.n_max,
        q_max: a.q_max,
        k_max: a.k_max,
    };
    let cases: Vec<_> = tokens.iter().flat_map(|t| expand(*t, &grid)).collect();
    let pool = thread_pool(a.jobs)?;
    let errata_opt = (!errata.is_empty()).then_some(errata.as_slice());
    let report = pool.install(|| verify::build_report(&cases, errata_opt));
    let text = if a.json {
        serde_json::to_string_pretty(&report).map_err(|e| e.to_string())? + "\n"
    } else {
        verify::render_text(&report, a.all)
    };
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    };
    let note = a.out.as_ref().map(|_| {
        format!(
            "total {}, mismatches {}",
            report.summary.total, report.summary.mismatches
        )
    });
    Ok(Output {
        text,
        path: a.out,
        code,
        note,
    })
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn build_table(a: &TableArgs) -> Result<Table, String> {
    let n = a.n;
    Ok(match a.kind {
        TableKind::Sigma | TableKind::SigmaMinus => {
            if n == 0 {
                return Err("--n must be positive".into());
            }
            let f = if a.kind == TableKind::Sigma {
                sigma
            } else {
                sigma_minus
            };
            Table {
                columns: vec!["k", "n", "value"],
                rows: (0..=a.k_max)
                    .map(|k| vec![json!(k), json!(n), json!(fraction(&f(k, n)))])
                    .collect(),
            }
        }
        TableKind::WalksPath | TableKind::WalksCycle => {
            let mut rows = Vec::new();
            for m in a.m_min..=a.m_max {
                let count = if a.kind == TableKind::WalksPath {
                    path_closed_walks(n, m)
                } else {
                    cycle_closed_walks(n, m)
                }
                .map_err(|e| e.to_string())?;
                rows.push(vec![json!(n), json!(m), json!(count.to_string())]);
            }
            Table {
                columns: vec!["n", "m", "count"],
                rows,
            }
        }
        TableKind::CotPoly => {
            let poly = cot_sum_polynomial(n).map_err(|e| e.to_string())?;
            Table {
                columns: vec!["degree", "coefficient"],
                rows: poly
                    .coefficients
                    .iter()
                    .enumerate()
                    .map(|(j, c)| vec![json!(j), json!(fraction(c))])
                    .collect(),
            }
        }
    })
}

fn cmd_table(a: TableArgs) -> Result<Output, String> {
    let table = build_table(&a)?;
    let format = if a.json { TableFormat::Json } else { a.format };
    let text = match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.columns).map_err(|e| e.to_string())?;
            for row in &table.rows {
                w.write_record(row.iter().map(cell_text))
                    .map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
        }
        TableFormat::Json => {
            let records: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    let obj = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.clone()));
                    Value::Object(obj.collect())
                })
                .collect();
            serde_json::to_string_pretty(&records).map_err(|e| e.to_string())? + "\n"
        }
        TableFormat::Bfile => {
            // index is the first varying column, value the last
            let index_col = match a.kind {
                TableKind::WalksPath | TableKind::WalksCycle => 1,
                _ => 0,
            };
            table
                .rows
                .iter()
                .map(|row| {
                    format!(
                        "{} {}\n",
                        cell_text(&row[index_col]),
                        cell_text(row.last().unwrap())
                    )
                })
                .collect()
        }
    };
    Ok(Output {
        text,
        path: a.out,
        code: EXIT_OK,
        note: None,
    })
}

/// Value and minimum wall time in microseconds over `repeat` runs.
fn fastest<T>(repeat: u32, mut f: impl FnMut() -> Result<T, String>) -> Result<(T, u64), String> {
    let mut best = None;
    for _ in 0..repeat {
        let start = Instant::now();
        let value = f()?;
        let micros = start.elapsed().as_micros() as u64;
        if best.as_ref().is_none_or(|(_, b)| micros < *b) {
            best = Some((value, micros));
        }
    }
    Ok(best.expect("at least one run"))
}

fn cmd_bench(a: BenchArgs) -> Result<Output, String> {
    let token = single_token(&a.family)?;
    let case = token.case(Params {
        m: a.m,
        n: a.n,
        q: a.q,
        k: a.k,
    })?;
    case.validate().map_err(|e| e.to_string())?;
    let repeat = a.repeat.max(1);
    let (closed, micros_closed) =
        fastest(repeat, || case.closed_form().map_err(|e| e.to_string()))?;
    let mut oracle_result = None;
    if a.with_oracle {
        let run = || oracle::evaluate(&case.target()).map_err(|e| format!("oracle failed: {e}"));
        oracle_result = Some(fastest(repeat, run)?);
    }
    let equal = oracle_result.as_ref().map(|(v, _)| *v == closed);
    let code = if equal == Some(false) {
        EXIT_MISMATCH
    } else {
        EXIT_OK
    };
    let text = if a.json {
        let mut obj = json!({
            "spec": case.to_string(),
            "micros_closed": micros_closed,
        });
        if let Some((_, micros)) = &oracle_result {
            obj["micros_oracle"] = json!(micros);
            obj["equal"] = json!(equal);
        }
        format!("{obj}\n")
    } else {
        let mut s = format!("{case}\nclosed form  {micros_closed:>12} us\n");
        if let Some((_, micros)) = &oracle_result {
            let ratio = *micros as f64 / micros_closed.max(1) as f64;
            s.push_str(&format!(
                "oracle       {micros:>12} us\nratio        {ratio:>12.1}\n"
            ));
            s.push_str(&format!("equal        {:>12}\n", equal.unwrap_or(false)));
        }
        s
    };
    Ok(Output {
        text,
        path: None,
        code,
        note: None,
    })
}
