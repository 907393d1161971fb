//! Machine-readable output: reports and tables as JSON and CSV.
//!
//! Every big integer serializes as a decimal string, so consumers never
//! face 64-bit overflow; ratios serialize as {"num", "den"} string pairs.
//! Run with `cargo run --example reports_as_json`.

use elliptic_calc::dsl::{elaborate, parse};
use elliptic_calc::golden::golden_rows;
use elliptic_calc::invariants::report;
use elliptic_calc::power::ratio_table;
use elliptic_calc::render::golden_csv;
use elliptic_calc::space::Strictness;

fn main() {
    let ast = parse("S2 * S4").unwrap();
    let (space, _) = elaborate(&ast, Strictness::Strict).unwrap();

    // The invariant report, pretty-printed.
    let r = report(&space);
    let json = serde_json::to_string_pretty(&r).unwrap();
    println!("{json}");
    println!();

    // Exact values survive the round trip as strings.
    let value: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(value["label"], "S2 * S4");
    assert_eq!(value["pi_total"], "4");
    assert_eq!(value["chi"], "4");
    assert_eq!(value["ratio"]["num"], "1");
    assert_eq!(value["ratio"]["den"], "1");
    assert_eq!(value["poincare"]["0"], "1");
    assert_eq!(value["poincare"]["6"], "1");

    // No precision ceiling: the 300th power has b^n far beyond u64, and the
    // JSON still carries it exactly.
    let big = report(&space.power(300));
    assert_eq!(big.h_total.to_string().len(), 181);
    let value = serde_json::to_value(&big).unwrap();
    assert_eq!(value["h_total"].as_str().unwrap().len(), 181);
    println!("S2 * S4 to the 300th: P(1) has 181 decimal digits, carried exactly");
    println!();

    // Power reports serialize with the full ratio table.
    let table = ratio_table(&space, 3).unwrap();
    let value = serde_json::to_value(&table).unwrap();
    assert_eq!(value["p0"], 2);
    assert_eq!(value["p"], 1);
    assert_eq!(value["predicted_p0"], 2);
    assert_eq!(value["table"][1]["bn"], "16");
    println!("{}", serde_json::to_string_pretty(&table).unwrap());
    println!();

    // ...and as CSV for spreadsheets.
    print!("{}", table.to_csv());
    println!();

    // The golden table is serializable too; its CSV head:
    let rows = golden_rows();
    let csv = golden_csv(&rows);
    for line in csv.lines().take(5) {
        println!("{line}");
    }
    println!("... ({} rows)", rows.len());
}
