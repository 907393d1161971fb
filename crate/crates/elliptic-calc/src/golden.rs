//! The embedded reference table: every value the calculator is known to
//! produce for the classical inputs, stated independently and recomputed on
//! demand.
//!
//! Each [`GoldenRow`] pairs an expected value (written out from the closed
//! formulas: sphere tables, additivity/multiplicativity of totals, the
//! threshold case analysis) with the value computed through the public API.
//! The `paper-examples` CLI command prints this table and fails if any row
//! mismatches, making the binary its own regression suite.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::invariants::{homotopy_poincare, poincare, report};
use crate::power::{
    almost_dominating_power, dominating_power, predicted_dominating_power, ratio_table,
};
use crate::space::{EllipticRanks, Strictness};

/// One expected-vs-computed comparison. `pass` is fixed at construction so
/// serialized rows carry their verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenRow {
    pub subject: String,
    pub quantity: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl GoldenRow {
    fn new(
        subject: impl Into<String>,
        quantity: impl Into<String>,
        expected: impl ToString,
        computed: impl ToString,
    ) -> GoldenRow {
        let expected = expected.to_string();
        let computed = computed.to_string();
        GoldenRow {
            subject: subject.into(),
            quantity: quantity.into(),
            pass: expected == computed,
            expected,
            computed,
        }
    }
}

impl fmt::Display for GoldenRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} expected {}, got {}",
            self.subject, self.quantity, self.expected, self.computed
        )
    }
}

fn sphere(n: u64) -> EllipticRanks {
    EllipticRanks::sphere(n).expect("positive dimension")
}

fn fmt_ranks(ranks: &BTreeMap<u64, BigUint>) -> String {
    let entries: Vec<String> = ranks
        .iter()
        .map(|(degree, rank)| format!("{degree}: {rank}"))
        .collect();
    format!("{{{}}}", entries.join(", "))
}

fn fmt_tables(x: &EllipticRanks) -> String {
    format!(
        "pi {}, H {}",
        fmt_ranks(x.homotopy_ranks()),
        fmt_ranks(x.homology_ranks())
    )
}

/// Build the whole table. Infallible: every input is a fixed classical
/// space.
pub fn golden_rows() -> Vec<GoldenRow> {
    let mut rows = Vec::new();

    // Rank tables of the first few spheres, written out in full.
    rows.push(GoldenRow::new(
        "S^3",
        "rank tables",
        "pi {3: 1}, H {0: 1, 3: 1}",
        fmt_tables(&sphere(3)),
    ));
    rows.push(GoldenRow::new(
        "S^2",
        "rank tables",
        "pi {2: 1, 3: 1}, H {0: 1, 2: 1}",
        fmt_tables(&sphere(2)),
    ));
    rows.push(GoldenRow::new(
        "S^4",
        "rank tables",
        "pi {4: 1, 7: 1}, H {0: 1, 4: 1}",
        fmt_tables(&sphere(4)),
    ));

    // Sphere polynomial formulas and Euler characteristics, both parities,
    // k = 1..10. Expected strings come straight from the closed formulas:
    // odd 2k+1 has P_pi = t^(2k+1); even 2k has P_pi = t^(4k-1) + t^(2k).
    for k in 1..=10u64 {
        let odd = 2 * k + 1;
        let s_odd = sphere(odd);
        let subject = format!("S^{odd}");
        rows.push(GoldenRow::new(
            &subject,
            "P_pi(t)",
            format!("t^{odd}"),
            homotopy_poincare(&s_odd),
        ));
        rows.push(GoldenRow::new(
            &subject,
            "P(t)",
            format!("t^{odd} + 1"),
            poincare(&s_odd),
        ));
        let r = report(&s_odd);
        rows.push(GoldenRow::new(&subject, "chi_pi", "-1", &r.chi_pi));
        rows.push(GoldenRow::new(&subject, "chi", "0", &r.chi));

        let even = 2 * k;
        let s_even = sphere(even);
        let subject = format!("S^{even}");
        rows.push(GoldenRow::new(
            &subject,
            "P_pi(t)",
            format!("t^{} + t^{}", 4 * k - 1, even),
            homotopy_poincare(&s_even),
        ));
        rows.push(GoldenRow::new(
            &subject,
            "P(t)",
            format!("t^{even} + 1"),
            poincare(&s_even),
        ));
        let r = report(&s_even);
        rows.push(GoldenRow::new(&subject, "chi_pi", "0", &r.chi_pi));
        rows.push(GoldenRow::new(&subject, "chi", "2", &r.chi));
    }

    // The point: totals 0 and 1, threshold 1 immediately.
    let pt = EllipticRanks::point();
    let r = report(&pt);
    rows.push(GoldenRow::new("pt", "P_pi(t)", "0", &r.homotopy_poincare));
    rows.push(GoldenRow::new("pt", "P(t)", "1", &r.poincare));
    rows.push(GoldenRow::new("pt", "P_pi(1)", "0", &r.pi_total));
    rows.push(GoldenRow::new("pt", "P(1)", "1", &r.h_total));
    rows.push(GoldenRow::new(
        "pt",
        "p0",
        "1",
        dominating_power(&pt).expect("point scan"),
    ));
    rows.push(GoldenRow::new(
        "pt",
        "p",
        "1",
        almost_dominating_power(&pt).expect("point scan"),
    ));

    // Totals under product and power: homotopy adds, homology multiplies.
    let s2xs4 = EllipticRanks::product(&[sphere(2), sphere(4)]).expect("two factors");
    let r = report(&s2xs4);
    rows.push(GoldenRow::new("S^2 x S^4", "P_pi(1)", "4", &r.pi_total));
    rows.push(GoldenRow::new("S^2 x S^4", "P(1)", "4", &r.h_total));

    let s2_cubed_product =
        EllipticRanks::product(&[sphere(2), sphere(2), sphere(2)]).expect("three factors");
    let r = report(&s2_cubed_product);
    rows.push(GoldenRow::new(
        "S^2 x S^2 x S^2",
        "P_pi(1)",
        "6",
        &r.pi_total,
    ));
    rows.push(GoldenRow::new("S^2 x S^2 x S^2", "P(1)", "8", &r.h_total));

    let r = report(&sphere(2).power(2));
    rows.push(GoldenRow::new("(S^2)^2", "P_pi(1)", "4", &r.pi_total));
    rows.push(GoldenRow::new("(S^2)^2", "P(1)", "4", &r.h_total));

    let r = report(&sphere(2).power(3));
    rows.push(GoldenRow::new("(S^2)^3", "P_pi(1)", "6", &r.pi_total));
    rows.push(GoldenRow::new("(S^2)^3", "P(1)", "8", &r.h_total));
    rows.push(GoldenRow::new(
        "(S^2)^3",
        "strict inequality",
        "true",
        r.hilali_strict,
    ));

    // Even spheres: strict domination starts exactly at the cube.
    for n in 1..=5u64 {
        let s = sphere(2 * n);
        let subject = format!("S^{}", 2 * n);
        rows.push(GoldenRow::new(
            &subject,
            "p0",
            "3",
            dominating_power(&s).expect("even sphere scan"),
        ));
        rows.push(GoldenRow::new(
            &subject,
            "p",
            "1",
            almost_dominating_power(&s).expect("even sphere scan"),
        ));
        rows.push(GoldenRow::new(
            &subject,
            "predicted p0",
            "3",
            predicted_dominating_power(&s)
                .map(|n| n.to_string())
                .unwrap_or_else(|| "none".into()),
        ));
    }

    // ... with the intermediate totals 4 vs 4 and 6 vs 8 visible in the
    // convergence table of S^2.
    let table = ratio_table(&sphere(2), 3).expect("small limit");
    for (n, expected) in [(2u64, "n*a = 4, b^n = 4"), (3, "n*a = 6, b^n = 8")] {
        let row = &table.table[(n - 1) as usize];
        rows.push(GoldenRow::new(
            "S^2",
            format!("table row n={n}"),
            expected,
            format!("n*a = {}, b^n = {}", row.na, row.bn),
        ));
    }

    // Products of two even spheres: domination starts at the square.
    for n in 1..=3u64 {
        for m in 1..=3u64 {
            let x = EllipticRanks::product(&[sphere(2 * n), sphere(2 * m)]).expect("two factors");
            let subject = format!("S^{} x S^{}", 2 * n, 2 * m);
            rows.push(GoldenRow::new(
                &subject,
                "p0",
                "2",
                dominating_power(&x).expect("product scan"),
            ));
            rows.push(GoldenRow::new(
                &subject,
                "p",
                "1",
                almost_dominating_power(&x).expect("product scan"),
            ));
            rows.push(GoldenRow::new(
                &subject,
                "predicted p0",
                "2",
                predicted_dominating_power(&x)
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "none".into()),
            ));
        }
    }
    let table = ratio_table(&s2xs4, 2).expect("small limit");
    rows.push(GoldenRow::new(
        "S^2 x S^4",
        "table row n=2",
        "n*a = 8, b^n = 16",
        format!("n*a = {}, b^n = {}", table.table[1].na, table.table[1].bn),
    ));

    // The odd-sphere threshold case: already dominated at n = 1.
    rows.push(GoldenRow::new(
        "S^3",
        "predicted p0",
        "1",
        predicted_dominating_power(&sphere(3))
            .map(|n| n.to_string())
            .unwrap_or_else(|| "none".into()),
    ));

    // Literals: a table with a sphere's ranks is that sphere, and a table
    // with total homology rank 1 cannot carry homotopy.
    let pi = BTreeMap::from([(3, 1)]);
    let h = BTreeMap::from([(0, 1), (3, 1)]);
    let literal = EllipticRanks::from_literal(&pi, &h, None, Strictness::Strict)
        .expect("sphere table")
        .0;
    rows.push(GoldenRow::new(
        "literal {pi: {3: 1}, h: {0: 1, 3: 1}}",
        "rank tables",
        "equal to S^3",
        if literal == sphere(3) {
            "equal to S^3"
        } else {
            "different"
        },
    ));

    let pi = BTreeMap::from([(2, 5)]);
    let h = BTreeMap::from([(0, 1)]);
    let outcome = match EllipticRanks::from_literal(&pi, &h, None, Strictness::Permissive) {
        Ok(_) => "accepted".to_string(),
        Err(e) => format!("error: {e}"),
    };
    rows.push(GoldenRow::new(
        "literal {pi: {2: 5}, h: {0: 1}}",
        "validation",
        "error: H-rank 1 forces π-rank 0: a table with total homology rank 1 cannot have homotopy rank 5",
        outcome,
    ));

    rows
}
