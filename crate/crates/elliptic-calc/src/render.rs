//! Terminal output: the human layouts for reports and tables, ANSI color
//! resolution, caret-annotated syntax errors, and the opt-in approximate
//! decimals that accompany exact ratios.
//!
//! Everything here returns `String`s; the CLI decides which stream they go
//! to. JSON and CSV stay byte-identical whether or not color is enabled —
//! color exists only in the human layouts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::dsl::SourceSpan;
use crate::golden::GoldenRow;
use crate::invariants::InvariantReport;
use crate::power::PowerReport;

/// ANSI toggle threaded through the human renderers.
#[derive(Clone, Copy, Debug)]
pub struct Style {
    pub color: bool,
}

impl Style {
    pub fn plain() -> Style {
        Style { color: false }
    }

    fn green(&self, text: &str) -> String {
        if self.color {
            format!("\x1b[32m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn red(&self, text: &str) -> String {
        if self.color {
            format!("\x1b[31m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn verdict(&self, good: bool, text: &str) -> String {
        if good {
            self.green(text)
        } else {
            self.red(text)
        }
    }
}

/// Decide whether to emit ANSI color from the `ELLIPTIC_CALC_COLOR`
/// environment value and the nature of standard output. `never` wins
/// unconditionally; `auto`, unset, and anything unrecognized color exactly
/// when standard output is a terminal.
pub fn resolve_color(env: Option<&str>, stdout_is_tty: bool) -> bool {
    match env {
        Some("never") => false,
        _ => stdout_is_tty,
    }
}

/// Decimal rendering with six significant digits, round-half-up. Used only
/// next to exact values, never instead of them.
pub fn approx_decimal(ratio: &BigRational) -> String {
    if ratio.is_zero() {
        return "0".to_string();
    }
    let sign = if ratio.is_negative() { "-" } else { "" };
    let n = ratio.numer().abs();
    let d = ratio.denom().clone();
    let int_part = &n / &d;
    let decimals = if int_part.is_zero() {
        // Walk to the first significant digit, then keep five more.
        let mut scaled = n.clone();
        let mut leading = 0usize;
        while scaled < d {
            scaled *= 10;
            leading += 1;
        }
        leading + 5
    } else {
        let int_digits = int_part.to_string().len();
        6usize.saturating_sub(int_digits)
    };
    let scale = BigInt::from(10u32).pow(decimals as u32);
    let rounded = (&n * &scale * 2u32 + &d) / (&d * 2u32);
    let digits = rounded.to_string();
    if decimals == 0 {
        return format!("{sign}{digits}");
    }
    if digits.len() <= decimals {
        let zeros = "0".repeat(decimals - digits.len());
        format!("{sign}0.{zeros}{digits}")
    } else {
        let (int_str, frac_str) = digits.split_at(digits.len() - decimals);
        format!("{sign}{int_str}.{frac_str}")
    }
}

fn ratio_cell(ratio: &BigRational, approx: bool) -> String {
    let exact = format!("{}/{}", ratio.numer(), ratio.denom());
    if approx {
        format!("{exact} (~{})", approx_decimal(ratio))
    } else {
        exact
    }
}

/// The `eval` block: header, polynomials, totals with their true relation,
/// Euler characteristics, ratio, and the three check lines.
pub fn eval_human(r: &InvariantReport, approx: bool, style: &Style) -> String {
    let mut out = String::new();
    out.push_str(&format!("space: {}\n", r.label));
    out.push_str(&format!(
        "simply connected: {}\n",
        if r.simply_connected { "yes" } else { "no" }
    ));
    out.push_str(&format!("P_pi(t) = {}\n", r.homotopy_poincare));
    out.push_str(&format!("P(t) = {}\n", r.poincare));
    let rel = match r.pi_total.cmp(&r.h_total) {
        std::cmp::Ordering::Less => "<",
        std::cmp::Ordering::Equal => "=",
        std::cmp::Ordering::Greater => ">",
    };
    out.push_str(&format!(
        "P_pi(1) = {} {} P(1) = {}\n",
        r.pi_total, rel, r.h_total
    ));
    out.push_str(&format!("chi_pi = {}, chi = {}\n", r.chi_pi, r.chi));
    let mut ratio_line = format!("ratio: {}/{}", r.ratio.numer(), r.ratio.denom());
    if approx {
        ratio_line.push_str(&format!(" (~{})", approx_decimal(&r.ratio)));
    }
    out.push_str(&ratio_line);
    out.push('\n');
    out.push_str(&check_human(r, style));
    out
}

/// The three check lines, one per invariant, with the exact numbers.
pub fn check_human(r: &InvariantReport, style: &Style) -> String {
    let mut out = String::new();
    if r.hilali_holds {
        let rel = if r.hilali_strict { "<" } else { "<=" };
        out.push_str(&format!(
            "hilali: {} ({} {} {})\n",
            style.verdict(true, "holds"),
            r.pi_total,
            rel,
            r.h_total
        ));
    } else {
        out.push_str(&format!(
            "hilali: {} ({} > {})\n",
            style.verdict(false, "fails"),
            r.pi_total,
            r.h_total
        ));
    }
    if r.mirror_holds {
        out.push_str(&format!(
            "mirror: {} ({} <= 0 <= {})\n",
            style.verdict(true, "holds"),
            r.chi_pi,
            r.chi
        ));
    } else {
        out.push_str(&format!(
            "mirror: {} (chi_pi = {}, chi = {})\n",
            style.verdict(false, "fails"),
            r.chi_pi,
            r.chi
        ));
    }
    out.push_str(&format!(
        "dichotomy: {} (chi_pi = {}, chi = {})\n",
        style.verdict(
            r.dichotomy_consistent,
            if r.dichotomy_consistent {
                "holds"
            } else {
                "fails"
            }
        ),
        r.chi_pi,
        r.chi
    ));
    out
}

/// The `power` block: thresholds, prediction, and the aligned ratio table.
pub fn power_human(label: &str, report: &PowerReport, approx: bool, style: &Style) -> String {
    let mut out = String::new();
    out.push_str(&format!("space: {label}\n"));
    out.push_str(&format!("p0 = {}, p = {}\n", report.p0, report.p));
    match report.predicted_p0 {
        Some(n) => out.push_str(&format!("predicted p0 = {n}\n")),
        None => out.push_str("predicted p0 = n/a (P_pi(1) > P(1))\n"),
    }
    let header = ["n", "n*a", "b^n", "ratio", "strict"];
    let mut cells: Vec<[String; 5]> = Vec::with_capacity(report.table.len());
    for row in &report.table {
        cells.push([
            row.n.to_string(),
            row.na.to_string(),
            row.bn.to_string(),
            ratio_cell(&row.ratio, approx),
            if row.strict_holds { "yes" } else { "no" }.to_string(),
        ]);
    }
    let mut widths: [usize; 5] = header.map(str::len);
    for row in &cells {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    let mut line = String::new();
    for (i, (head, width)) in header.iter().zip(widths).enumerate() {
        if i > 0 {
            line.push_str("  ");
        }
        line.push_str(&format!("{head:<width$}"));
    }
    out.push_str(line.trim_end());
    out.push('\n');
    for (row, report_row) in cells.iter().zip(&report.table) {
        let mut line = String::new();
        for (i, (cell, width)) in row.iter().zip(widths).enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            if i == 4 {
                // Last column: color after padding is irrelevant, pad first.
                line.push_str(&style.verdict(report_row.strict_holds, &format!("{cell:<width$}")));
            } else {
                line.push_str(&format!("{cell:<width$}"));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// The `paper-examples` block: one line per row plus a tally.
pub fn golden_human(rows: &[GoldenRow], style: &Style) -> String {
    let mut out = String::new();
    let mut failures = 0usize;
    for row in rows {
        let marker = if row.pass {
            style.verdict(true, "[ok]")
        } else {
            failures += 1;
            style.verdict(false, "[MISMATCH]")
        };
        out.push_str(&format!("{row} {marker}\n"));
    }
    if failures == 0 {
        out.push_str(&format!("all {} rows match\n", rows.len()));
    } else {
        out.push_str(&format!("{failures} of {} rows MISMATCH\n", rows.len()));
    }
    out
}

fn csv_quote(field: &str) -> String {
    if field.contains(['"', ',', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// CSV form of the golden table: `subject,quantity,expected,computed,pass`.
pub fn golden_csv(rows: &[GoldenRow]) -> String {
    let mut out = String::from("subject,quantity,expected,computed,pass\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_quote(&row.subject),
            csv_quote(&row.quantity),
            csv_quote(&row.expected),
            csv_quote(&row.computed),
            row.pass
        ));
    }
    out
}

/// A message followed by the offending source line with a caret run under
/// the span. Spans sit on character boundaries by construction; the caret
/// column counts characters, which is as close as a plain terminal gets.
pub fn annotate_span(input: &str, message: &str, span: SourceSpan) -> String {
    let start = span.start.min(input.len());
    let line_start = input[..start].rfind('\n').map_or(0, |i| i + 1);
    let line_end = input[start..].find('\n').map_or(input.len(), |i| start + i);
    let line = &input[line_start..line_end];
    let column = input[line_start..start].chars().count();
    let span_end = span.end.clamp(start, line_end);
    let caret_len = input[start..span_end].chars().count().max(1);
    format!(
        "{message}\n  {line}\n  {}{}",
        " ".repeat(column),
        "^".repeat(caret_len)
    )
}
