//! Command-line front end: `eval`, `power`, `check`, and `paper-examples`
//! over the expression language, with human, JSON, and CSV output.
//!
//! Exit codes are part of the interface: `0` means success (and, for
//! `check`, that every inequality holds), `1` means a mathematical check
//! failed, `2` means the input was rejected. [`run_from`] is the whole CLI
//! as a pure-ish function over explicit streams, so tests and fuzzing drive
//! it in-process; [`run`] wires it to the real process environment.

use std::ffi::OsString;
use std::io::{BufRead, IsTerminal, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dsl::{self, ElaborateError, ElaborateWarning, ParseError, SourceSpan};
use crate::golden::golden_rows;
use crate::invariants::{report, InvariantReport};
use crate::power::{ratio_table, PowerError, MAX_TABLE_LIMIT};
use crate::render::{self, Style};
use crate::space::{EllipticRanks, Strictness, ValidationError};

/// Write-and-ignore: output failures (closed pipes, full disks) must not
/// turn into panics inside a tool that promises never to crash.
macro_rules! outln {
    ($dst:expr) => {{ let _ = writeln!($dst); }};
    ($dst:expr, $($arg:tt)*) => {{ let _ = writeln!($dst, $($arg)*); }};
}

macro_rules! out {
    ($dst:expr, $($arg:tt)*) => {{ let _ = write!($dst, $($arg)*); }};
}

#[derive(Parser, Debug)]
#[command(
    name = "elliptic-calc",
    version,
    about = "Exact calculator for rank tables of formal elliptic spaces",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression and print its full invariant report
    Eval(ExprArgs),
    /// Compute the dominating powers p0 and p with the ratio table
    Power(PowerArgs),
    /// Check the hilali, mirror, and dichotomy conditions; exit 1 on failure
    Check(ExprArgs),
    /// Replay the embedded golden table of known values
    PaperExamples(GoldenArgs),
}

#[derive(Args, Debug)]
struct ExprArgs {
    /// Space expression, e.g. "S2 * S4 ^ 3" or "{pi: {3: 2}, h: {0: 1, 3: 2}}"
    #[arg(
        value_name = "EXPR",
        required_unless_present = "stdin",
        conflicts_with = "stdin"
    )]
    expr: Option<String>,

    /// Output format (default: human; batch mode is always JSON)
    #[arg(long, value_enum, value_name = "FORMAT")]
    format: Option<Format>,

    /// Accept rank tables rejected by default: not simply connected, or
    /// total homotopy rank above total homology rank
    #[arg(long)]
    permissive: bool,

    /// Append approximate decimals (6 significant digits) to exact ratios;
    /// human format only
    #[arg(long)]
    approx: bool,

    /// Read one expression per line from standard input and emit one JSON
    /// object per line; exit with the worst per-line status
    #[arg(long)]
    stdin: bool,
}

#[derive(Args, Debug)]
struct PowerArgs {
    #[command(flatten)]
    common: ExprArgs,

    /// Number of ratio-table rows to print
    #[arg(
        long,
        value_name = "N",
        default_value_t = 10,
        value_parser = clap::value_parser!(u64).range(1..=MAX_TABLE_LIMIT)
    )]
    table_limit: u64,
}

#[derive(Args, Debug)]
struct GoldenArgs {
    /// Output format (default: human)
    #[arg(long, value_enum, value_name = "FORMAT")]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

/// Entry point for the binary: resolves color from `ELLIPTIC_CALC_COLOR`
/// and the terminal, then runs against the real streams.
pub fn run() -> i32 {
    let color = render::resolve_color(
        std::env::var("ELLIPTIC_CALC_COLOR").ok().as_deref(),
        std::io::stdout().is_terminal(),
    );
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_from(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
        color,
    )
}

/// The CLI over explicit streams. Returns the process exit code and never
/// panics, whatever the arguments or input bytes.
pub fn run_from<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    color: bool,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    out!(stdout, "{e}");
                    0
                }
                _ => {
                    out!(stderr, "{e}");
                    2
                }
            }
        }
    };
    let style = Style { color };
    match cli.command {
        Command::Eval(args) => expr_command(&args, None, stdin, stdout, stderr, &style),
        Command::Power(args) => expr_command(
            &args.common,
            Some(args.table_limit),
            stdin,
            stdout,
            stderr,
            &style,
        ),
        Command::Check(args) => check_command(&args, stdin, stdout, stderr, &style),
        Command::PaperExamples(args) => golden_command(&args, stdout, &style),
    }
}

// ---------------------------------------------------------------------------
// Input handling shared by eval / power / check

enum InputError {
    Parse(ParseError),
    Elaborate(ElaborateError),
}

impl InputError {
    fn kind(&self) -> &'static str {
        match self {
            InputError::Parse(e) => match e.kind {
                dsl::ParseErrorKind::InputTooLong => "InputTooLong",
                dsl::ParseErrorKind::UnknownToken => "UnknownToken",
                dsl::ParseErrorKind::NumberTooLarge => "NumberTooLarge",
                dsl::ParseErrorKind::CapExceeded => "CapExceeded",
                dsl::ParseErrorKind::SphereDimension => "SphereDimension",
                dsl::ParseErrorKind::MissingCloseParen => "MissingCloseParen",
                dsl::ParseErrorKind::EmptyProduct => "EmptyProduct",
                dsl::ParseErrorKind::ChainedCaret => "ChainedCaret",
                dsl::ParseErrorKind::DuplicateDegree => "DuplicateDegree",
                dsl::ParseErrorKind::UnexpectedToken => "UnexpectedToken",
                dsl::ParseErrorKind::UnexpectedEnd => "UnexpectedEnd",
            },
            InputError::Elaborate(e) => match e.error {
                ValidationError::SphereDimension => "SphereDimension",
                ValidationError::DegreeTooLarge { .. } => "DegreeTooLarge",
                ValidationError::EmptyProduct => "EmptyProduct",
                ValidationError::NotPathConnected { .. } => "NotPathConnected",
                ValidationError::HomotopyDegreeZero => "HomotopyDegreeZero",
                ValidationError::PointMustBeTrivial { .. } => "PointMustBeTrivial",
                ValidationError::NotSimplyConnected { .. } => "NotSimplyConnected",
                ValidationError::HilaliViolating { .. } => "HilaliViolating",
            },
        }
    }

    fn message(&self) -> String {
        match self {
            InputError::Parse(e) => e.to_string(),
            InputError::Elaborate(e) => e.to_string(),
        }
    }

    fn span(&self) -> Option<SourceSpan> {
        match self {
            InputError::Parse(e) => Some(e.span),
            InputError::Elaborate(e) => e.span,
        }
    }
}

fn evaluate(
    expr: &str,
    strictness: Strictness,
) -> Result<(EllipticRanks, Vec<ElaborateWarning>), InputError> {
    let ast = dsl::parse(expr).map_err(InputError::Parse)?;
    dsl::elaborate(&ast, strictness).map_err(InputError::Elaborate)
}

fn strictness_of(args: &ExprArgs) -> Strictness {
    if args.permissive {
        Strictness::Permissive
    } else {
        Strictness::Strict
    }
}

fn render_input_error(input: &str, err: &InputError) -> String {
    let message = format!("error: {}", err.message());
    match err.span() {
        Some(span) => render::annotate_span(input, &message, span),
        None => message,
    }
}

fn emit_warnings(input: &str, warnings: &[ElaborateWarning], stderr: &mut dyn Write) {
    for w in warnings {
        let message = format!("warning: {w}");
        match w.span {
            Some(span) => outln!(stderr, "{}", render::annotate_span(input, &message, span)),
            None => outln!(stderr, "{message}"),
        }
    }
}

// ---------------------------------------------------------------------------
// JSON plumbing

#[derive(Serialize)]
struct JsonSpan {
    start: usize,
    end: usize,
}

#[derive(Serialize)]
struct JsonErrorBody {
    kind: &'static str,
    message: String,
    span: Option<JsonSpan>,
}

#[derive(Serialize)]
struct JsonError {
    error: JsonErrorBody,
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).unwrap_or_else(|_| {
        r#"{"error":{"kind":"Internal","message":"serialization failed","span":null}}"#.into()
    })
}

fn json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).unwrap_or_else(|_| {
        r#"{"error":{"kind":"Internal","message":"serialization failed","span":null}}"#.into()
    })
}

fn input_error_json(err: &InputError) -> String {
    json_line(&JsonError {
        error: JsonErrorBody {
            kind: err.kind(),
            message: err.message(),
            span: err.span().map(|s| JsonSpan {
                start: s.start,
                end: s.end,
            }),
        },
    })
}

fn power_error_json(err: &PowerError) -> String {
    let kind = match err {
        PowerError::IterationCapReached => "IterationCapReached",
        PowerError::TableLimitOutOfRange { .. } => "TableLimitOutOfRange",
    };
    json_line(&JsonError {
        error: JsonErrorBody {
            kind,
            message: err.to_string(),
            span: None,
        },
    })
}

// ---------------------------------------------------------------------------
// eval / power (single and batch)

/// `eval` when `table_limit` is `None`, `power` when it is `Some`.
fn expr_command(
    args: &ExprArgs,
    table_limit: Option<u64>,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    style: &Style,
) -> i32 {
    if args.stdin {
        return batch(args, table_limit, BatchKind::Report, stdin, stdout, stderr);
    }
    let Some(expr) = args.expr.as_deref() else {
        outln!(stderr, "error: an expression is required");
        return 2;
    };
    let (space, warnings) = match evaluate(expr, strictness_of(args)) {
        Ok(ok) => ok,
        Err(e) => {
            outln!(stderr, "{}", render_input_error(expr, &e));
            return 2;
        }
    };
    emit_warnings(expr, &warnings, stderr);
    match table_limit {
        None => {
            let r = report(&space);
            match args.format.unwrap_or(Format::Human) {
                Format::Human => out!(stdout, "{}", render::eval_human(&r, args.approx, style)),
                Format::Json => outln!(stdout, "{}", json_pretty(&r)),
                Format::Csv => {
                    outln!(stderr, "{CSV_UNAVAILABLE}");
                    return 2;
                }
            }
            0
        }
        Some(limit) => {
            let table = match ratio_table(&space, limit) {
                Ok(table) => table,
                Err(e) => {
                    outln!(stderr, "error: {e}");
                    return 2;
                }
            };
            match args.format.unwrap_or(Format::Human) {
                Format::Human => out!(
                    stdout,
                    "{}",
                    render::power_human(space.label(), &table, args.approx, style)
                ),
                Format::Json => outln!(stdout, "{}", json_pretty(&table)),
                Format::Csv => out!(stdout, "{}", table.to_csv()),
            }
            0
        }
    }
}

const CSV_UNAVAILABLE: &str =
    "error: csv output is only available for table-producing commands (power, paper-examples)";

// ---------------------------------------------------------------------------
// check

fn all_checks_hold(r: &InvariantReport) -> bool {
    r.hilali_holds && r.mirror_holds && r.dichotomy_consistent
}

fn check_command(
    args: &ExprArgs,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
    style: &Style,
) -> i32 {
    if args.stdin {
        return batch(args, None, BatchKind::Check, stdin, stdout, stderr);
    }
    let Some(expr) = args.expr.as_deref() else {
        outln!(stderr, "error: an expression is required");
        return 2;
    };
    let (space, warnings) = match evaluate(expr, strictness_of(args)) {
        Ok(ok) => ok,
        Err(e) => {
            outln!(stderr, "{}", render_input_error(expr, &e));
            return 2;
        }
    };
    emit_warnings(expr, &warnings, stderr);
    let r = report(&space);
    match args.format.unwrap_or(Format::Human) {
        Format::Human => out!(stdout, "{}", render::check_human(&r, style)),
        Format::Json => outln!(stdout, "{}", json_pretty(&r)),
        Format::Csv => {
            outln!(stderr, "{CSV_UNAVAILABLE}");
            return 2;
        }
    }
    if all_checks_hold(&r) {
        0
    } else {
        1
    }
}

// ---------------------------------------------------------------------------
// batch mode

#[derive(Clone, Copy, PartialEq, Eq)]
enum BatchKind {
    /// Emit the invariant report (or power report) per line; lines fail only
    /// on input errors.
    Report,
    /// Emit the invariant report per line and raise exit 1 when any check
    /// fails on any line.
    Check,
}

fn batch(
    args: &ExprArgs,
    table_limit: Option<u64>,
    kind: BatchKind,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    if matches!(args.format, Some(Format::Human) | Some(Format::Csv)) {
        outln!(
            stderr,
            "error: batch mode emits one JSON object per line; pass --format json or omit --format"
        );
        return 2;
    }
    let strictness = strictness_of(args);
    let mut exit = 0;
    let mut lineno = 0u64;
    let mut buf = Vec::new();
    loop {
        buf.clear();
        match stdin.read_until(b'\n', &mut buf) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                outln!(stderr, "error: failed reading standard input: {e}");
                return 2;
            }
        }
        lineno += 1;
        let line = String::from_utf8_lossy(&buf);
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match evaluate(line, strictness) {
            Err(e) => {
                outln!(stdout, "{}", input_error_json(&e));
                exit = exit.max(2);
            }
            Ok((space, warnings)) => {
                for w in &warnings {
                    outln!(stderr, "line {lineno}: warning: {w}");
                }
                match table_limit {
                    Some(limit) => match ratio_table(&space, limit) {
                        Ok(table) => outln!(stdout, "{}", json_line(&table)),
                        Err(e) => {
                            outln!(stdout, "{}", power_error_json(&e));
                            exit = exit.max(2);
                        }
                    },
                    None => {
                        let r = report(&space);
                        outln!(stdout, "{}", json_line(&r));
                        if kind == BatchKind::Check && !all_checks_hold(&r) {
                            exit = exit.max(1);
                        }
                    }
                }
            }
        }
    }
    exit
}

// ---------------------------------------------------------------------------
// paper-examples

fn golden_command(args: &GoldenArgs, stdout: &mut dyn Write, style: &Style) -> i32 {
    let rows = golden_rows();
    match args.format.unwrap_or(Format::Human) {
        Format::Human => out!(stdout, "{}", render::golden_human(&rows, style)),
        Format::Json => outln!(stdout, "{}", json_pretty(&rows)),
        Format::Csv => out!(stdout, "{}", render::golden_csv(&rows)),
    }
    if rows.iter().all(|row| row.pass) {
        0
    } else {
        1
    }
}
