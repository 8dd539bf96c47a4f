//! `bchparams`: parameters of primitive BCH codes from the command line.
//!
//! Exit status: 0 on success, 1 when a verification finds a mismatch,
//! 2 on invalid or over-scale input.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bch_params::cosets::{classify_a, classify_b, coset_of, in_h, is_leader};
use bch_params::formulas::BchResult;
use bch_params::gf::{build_field, generator_poly, DEFAULT_BUDGET};
use bch_params::params::evaluate;
use bch_params::qadic::to_digits;
use bch_params::table::{generate, TableOptions, TableRow};
use bch_params::verify::{self, Level};
use bch_params::{CodeIndex, Error};

#[derive(Parser)]
#[command(name = "bchparams", version, about = "Dimension and Bose distance of primitive BCH codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Field {
    /// Alphabet size, a prime power.
    #[arg(long)]
    q: u64,
    /// Extension degree; the code length is q^m - 1.
    #[arg(long)]
    m: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension and Bose distance of one code.
    Params {
        #[command(flatten)]
        field: Field,
        /// Designed distance.
        #[arg(long)]
        delta: u64,
        /// Offset of the zero window; 1 is narrow sense.
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Parameter table over a range of designed distances.
    Table {
        #[command(flatten)]
        field: Field,
        /// First designed distance [default: 2].
        #[arg(long)]
        from: Option<u64>,
        /// Last designed distance [default: q^(floor((2m-1)/3)+1)].
        #[arg(long)]
        to: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Keep one row per designed distance.
        #[arg(long)]
        no_merge: bool,
        /// Search each code for its minimum distance.
        #[arg(long)]
        with_distance: bool,
        /// Candidate codewords examined per distance search.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check the closed forms against enumeration and construction.
    Verify {
        #[command(flatten)]
        field: Field,
        #[arg(long, value_enum, default_value_t = LevelArg::All)]
        level: LevelArg,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
    },
    /// Inspect the cyclotomic coset of an integer.
    Coset {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        a: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Generator polynomial of a code.
    Genpoly {
        #[command(flatten)]
        field: Field,
        #[arg(long)]
        delta: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Formulas,
    Partitions,
    Lemmas,
    Codes,
    All,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Formulas => Level::Formulas,
            LevelArg::Partitions => Level::Partitions,
            LevelArg::Lemmas => Level::Lemmas,
            LevelArg::Codes => Level::Codes,
            LevelArg::All => Level::All,
        }
    }
}

enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    let result = match cli.command {
        Command::Params { field, delta, b, format } => cmd_params(&mut out, field, delta, b, format),
        Command::Table {
            field,
            from,
            to,
            format,
            no_merge,
            with_distance,
            budget,
        } => {
            let opts = TableOptions {
                merge: !no_merge,
                distance_budget: with_distance.then_some(budget),
            };
            cmd_table(&mut out, field, from, to, format, opts)
        }
        Command::Verify { field, level, format } => cmd_verify(&mut out, field, level.into(), format),
        Command::Coset { field, a, format } => cmd_coset(&mut out, field, a, format),
        Command::Genpoly { field, delta, b, format } => cmd_genpoly(&mut out, field, delta, b, format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn index(f: Field) -> Result<CodeIndex, Failure> {
    Ok(CodeIndex::new(f.q, f.m)?)
}

/// Writes `records` as CSV, a JSON array, or a GitHub table. Nested lists
/// become space-separated cells in the flat formats.
fn emit<T: Serialize>(out: &mut impl Write, records: &[T], format: Format) -> Outcome {
    if format == Format::Json {
        serde_json::to_writer_pretty(&mut *out, records)?;
        writeln!(out)?;
        return Ok(());
    }
    let rows: Vec<serde_json::Map<String, serde_json::Value>> = records
        .iter()
        .map(|r| match serde_json::to_value(r) {
            Ok(serde_json::Value::Object(map)) => Ok(map),
            Ok(_) => Err(Failure::Input("record is not an object".into())),
            Err(e) => Err(e.into()),
        })
        .collect::<Result<_, _>>()?;
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let keys: Vec<&str> = first.keys().map(|k| k.as_str()).collect();
    let cells = |row: &serde_json::Map<String, serde_json::Value>| -> Vec<String> {
        keys.iter().map(|k| md_cell(&row[*k])).collect()
    };
    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(&keys)?;
        for row in &rows {
            w.write_record(cells(row))?;
        }
        w.flush()?;
    } else {
        writeln!(out, "| {} |", keys.join(" | "))?;
        writeln!(out, "|{}", "---|".repeat(keys.len()))?;
        for row in &rows {
            writeln!(out, "| {} |", cells(row).join(" | "))?;
        }
    }
    Ok(())
}

fn md_cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => items.iter().map(md_cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct ParamsRecord {
    q: u64,
    m: u32,
    delta: u64,
    b: u64,
    n: u64,
    k: u64,
    #[serde(rename = "d_B")]
    d_b: u64,
    source: String,
}

fn params_record(idx: &CodeIndex, delta: u64, b: u64, r: &BchResult) -> ParamsRecord {
    ParamsRecord {
        q: idx.q(),
        m: idx.m(),
        delta,
        b,
        n: r.n,
        k: r.dimension,
        d_b: r.bose,
        source: r.source.to_string(),
    }
}

fn cmd_params(out: &mut impl Write, field: Field, delta: u64, b: u64, format: Format) -> Outcome {
    let idx = index(field)?;
    let r = evaluate(delta, b, &idx)?;
    emit(out, &[params_record(&idx, delta, b, &r)], format)
}

fn cmd_table(
    out: &mut impl Write,
    field: Field,
    from: Option<u64>,
    to: Option<u64>,
    format: Format,
    opts: TableOptions,
) -> Outcome {
    let idx = index(field)?;
    let lo = from.unwrap_or(2);
    let hi = to.unwrap_or_else(|| idx.closed_form_bound().min(idx.n()));
    let rows: Vec<TableRow> = generate(&idx, lo, hi, opts)?;
    if rows.is_empty() && format == Format::Csv {
        // Keep the header so consumers see the schema.
        writeln!(out, "q,m,delta_lo,delta_hi,n,k,d_B,d,source")?;
        return Ok(());
    }
    emit(out, &rows, format)
}

fn cmd_verify(out: &mut impl Write, field: Field, level: Level, format: Format) -> Outcome {
    let idx = index(field)?;
    let reports = verify::run(&idx, level)?;
    #[derive(Serialize)]
    struct Line {
        suite: &'static str,
        checked: u64,
        failed: u64,
        status: &'static str,
    }
    let lines: Vec<Line> = reports
        .iter()
        .map(|r| Line {
            suite: r.suite,
            checked: r.checked,
            failed: r.failed,
            status: if r.passed() { "PASS" } else { "FAIL" },
        })
        .collect();
    emit(out, &lines, format)?;
    match reports.iter().find_map(|r| r.first_failure.as_ref().map(|c| (r.suite, c))) {
        Some((suite, c)) => Err(Failure::Mismatch(format!("{suite}: {c}"))),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct CosetRecordOut {
    a: u64,
    leader: u64,
    size: u32,
    elements: Vec<u64>,
    digits: String,
    is_leader: bool,
    in_s: bool,
    in_h: Option<bool>,
    class: Option<String>,
}

fn cmd_coset(out: &mut impl Write, field: Field, a: u64, format: Format) -> Outcome {
    let idx = index(field)?;
    let c = coset_of(a, &idx)?;
    let q = idx.q();
    let leader = a == 0 || is_leader(a, &idx);
    let in_s = a != 0 && a % q != 0 && !leader;
    let h_member = if idx.is_even() && a != 0 {
        Some(in_h(a, &idx)?)
    } else {
        None
    };
    let record = CosetRecordOut {
        a,
        leader: c.leader,
        size: c.size,
        elements: c.elements.clone(),
        digits: to_digits(a, &idx)?.to_string(),
        is_leader: leader,
        in_s,
        in_h: h_member,
        class: coset_class(a, &idx),
    };
    emit(out, &[record], format)
}

/// `A_k(i)` / `B_k(i)` label when `a` lies in a classified slice.
fn coset_class(a: u64, idx: &CodeIndex) -> Option<String> {
    if idx.m() < 4 || a == 0 {
        return None;
    }
    let k = idx.digit_len(a) as i64 - 1 - idx.h() as i64;
    if k < idx.min_k() || k > idx.max_k() {
        return None;
    }
    if idx.is_even() {
        classify_b(a, k, idx).ok().flatten().map(|i| format!("B_{k}({i})"))
    } else {
        classify_a(a, k, idx).ok().flatten().map(|i| format!("A_{k}({i})"))
    }
}

#[derive(Serialize)]
struct GenpolyRecord {
    q: u64,
    m: u32,
    delta: u64,
    b: u64,
    n: u64,
    degree: usize,
    k: u64,
    /// Ascending coefficients in [0, q-1].
    coefficients: Vec<u32>,
    /// Base-p digits of each coefficient, for composite q.
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficient_digits: Option<Vec<Vec<u32>>>,
    polynomial: String,
    ext_modulus: Vec<u32>,
}

fn cmd_genpoly(out: &mut impl Write, field: Field, delta: u64, b: u64, format: Format) -> Outcome {
    let idx = index(field)?;
    let fs = build_field(&idx)?;
    let g = generator_poly(delta, b, &fs)?;
    let degree = g.degree().unwrap_or(0);
    let k = idx.n() - degree as u64;
    let expected = evaluate(delta, b, &idx)?.dimension;
    if expected != k {
        return Err(Failure::Mismatch(format!(
            "q={} m={} delta={delta} b={b}: dimension {expected} but deg g gives {k}",
            idx.q(),
            idx.m()
        )));
    }
    let coefficient_digits = (fs.s() > 1).then(|| {
        g.coeffs()
            .iter()
            .map(|c| fs.base.element_digits(*c))
            .collect()
    });
    let record = GenpolyRecord {
        q: idx.q(),
        m: idx.m(),
        delta,
        b,
        n: idx.n(),
        degree,
        k,
        coefficients: g.coeffs().to_vec(),
        coefficient_digits,
        polynomial: g.to_string(),
        ext_modulus: fs.ext_modulus.clone(),
    };
    emit(out, &[record], format)
}
