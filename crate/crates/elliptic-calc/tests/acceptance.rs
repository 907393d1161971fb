//! The acceptance gate: ten criteria, one test and one printed verdict line
//! each. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; any failure fails the corresponding test.

use std::collections::BTreeMap;
use std::io::Cursor;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use elliptic_calc::cli::run_from;
use elliptic_calc::dsl::{parse, LiteralExpr, ParseErrorKind, SpaceExpr};
use elliptic_calc::golden::golden_rows;
use elliptic_calc::invariants::{homotopy_poincare, poincare, report};
use elliptic_calc::power::{dominating_power, predicted_dominating_power, ratio_table};
use elliptic_calc::space::{EllipticRanks, Strictness};

fn pass(n: u32, name: &str) {
    println!("criterion {n} ({name}): pass");
}

/// A one-homotopy-degree, one-homology-degree table with prescribed totals
/// a = P_pi(1) and b = P(1): pi ranks at `pi_degree`, homology rank b - 1 at
/// degree 2 over the base point. Requires b >= 1 (and a = 0 when b = 1).
fn literal_with_totals(a: u64, b: u64, pi_degree: u64, strictness: Strictness) -> EllipticRanks {
    assert!(b >= 1);
    let pi = BTreeMap::from([(pi_degree, a)]);
    let h = BTreeMap::from([(0, 1), (2, b - 1)]);
    let (space, _warnings) = EllipticRanks::from_literal(&pi, &h, None, strictness)
        .expect("totals are realizable as a table");
    space
}

#[test]
fn criterion_01_sphere_formulas() {
    for k in 1..=10u64 {
        let odd = EllipticRanks::sphere(2 * k + 1).unwrap();
        assert_eq!(
            homotopy_poincare(&odd).to_string(),
            format!("t^{}", 2 * k + 1)
        );
        assert_eq!(poincare(&odd).to_string(), format!("t^{} + 1", 2 * k + 1));

        let even = EllipticRanks::sphere(2 * k).unwrap();
        assert_eq!(
            homotopy_poincare(&even).to_string(),
            format!("t^{} + t^{}", 4 * k - 1, 2 * k)
        );
        assert_eq!(poincare(&even).to_string(), format!("t^{} + 1", 2 * k));
    }
    pass(1, "sphere formulas");
}

#[test]
fn criterion_02_even_sphere_power_thresholds() {
    for n in 1..=5u64 {
        let even = EllipticRanks::sphere(2 * n).unwrap();
        let table = ratio_table(&even, 6).unwrap();
        assert_eq!(table.p0, 3, "p0 of S^{}", 2 * n);
        assert_eq!(table.p, 1, "p of S^{}", 2 * n);
    }
    // Intermediate comparisons for copies of S2: at two copies the totals
    // tie (4 vs 4), at three they separate (6 vs 8).
    let table = ratio_table(&EllipticRanks::sphere(2).unwrap(), 4).unwrap();
    assert_eq!(table.table[1].n, 2);
    assert_eq!(table.table[1].na, BigUint::from(4u32));
    assert_eq!(table.table[1].bn, BigUint::from(4u32));
    assert!(!table.table[1].strict_holds);
    assert_eq!(table.table[2].n, 3);
    assert_eq!(table.table[2].na, BigUint::from(6u32));
    assert_eq!(table.table[2].bn, BigUint::from(8u32));
    assert!(table.table[2].strict_holds);
    pass(2, "even sphere power thresholds");
}

#[test]
fn criterion_03_even_product_power_thresholds() {
    for n in 1..=3u64 {
        for m in 1..=3u64 {
            let product = EllipticRanks::product(&[
                EllipticRanks::sphere(2 * n).unwrap(),
                EllipticRanks::sphere(2 * m).unwrap(),
            ])
            .unwrap();
            let table = ratio_table(&product, 3).unwrap();
            assert_eq!(table.p0, 2, "p0 of S^{} x S^{}", 2 * n, 2 * m);
            assert_eq!(table.p, 1, "p of S^{} x S^{}", 2 * n, 2 * m);
        }
    }
    // At the square of such a product: 8 vs 16.
    let product = EllipticRanks::product(&[
        EllipticRanks::sphere(2).unwrap(),
        EllipticRanks::sphere(4).unwrap(),
    ])
    .unwrap();
    let table = ratio_table(&product, 2).unwrap();
    assert_eq!(table.table[1].na, BigUint::from(8u32));
    assert_eq!(table.table[1].bn, BigUint::from(16u32));
    pass(3, "even product power thresholds");
}

#[test]
fn criterion_04_sphere_euler_characteristics() {
    for k in 1..=10u64 {
        let odd = report(&EllipticRanks::sphere(2 * k + 1).unwrap());
        assert_eq!(odd.chi_pi, BigInt::from(-1));
        assert_eq!(odd.chi, BigInt::from(0));

        let even = report(&EllipticRanks::sphere(2 * k).unwrap());
        assert_eq!(even.chi_pi, BigInt::from(0));
        assert_eq!(even.chi, BigInt::from(2));
    }
    pass(4, "sphere Euler characteristics");
}

#[test]
fn criterion_05_sphere_product_check_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    for _ in 0..500 {
        let count = rng.gen_range(1..=6usize);
        let factors: Vec<EllipticRanks> = (0..count)
            .map(|_| EllipticRanks::sphere(rng.gen_range(1..=10u64)).unwrap())
            .collect();
        let product = EllipticRanks::product(&factors).unwrap();
        let r = report(&product);
        assert!(r.hilali_holds, "hilali for {}", product.label());
        assert!(r.mirror_holds, "mirror for {}", product.label());
        assert!(r.dichotomy_consistent, "dichotomy for {}", product.label());
    }
    pass(5, "sphere product check suite");
}

#[test]
fn criterion_06_total_rank_inequality_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    for _ in 0..1000 {
        let count = rng.gen_range(1..=8usize);
        let mut factors = Vec::with_capacity(count);
        let mut sum: u128 = 0;
        let mut prod: u128 = 1;
        for _ in 0..count {
            let b = rng.gen_range(2..=20u64);
            let a = rng.gen_range(0..=b);
            sum += u128::from(a);
            prod *= u128::from(b);
            factors.push(literal_with_totals(a, b, 3, Strictness::Strict));
        }
        let product = EllipticRanks::product(&factors).unwrap();
        // The product's totals are the sum and the product of the factors'.
        assert_eq!(product.pi_total(), BigUint::from(sum));
        assert_eq!(product.h_total(), BigUint::from(prod));
        // With every factor satisfying a <= b and b >= 2, the sum never
        // overtakes the product.
        assert!(sum <= prod);
        assert!(report(&product).hilali_holds);
    }
    pass(6, "total rank inequality suite");
}

#[test]
fn criterion_07_scan_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    for _ in 0..200 {
        let b = rng.gen_range(2..=30u64);
        let a = rng.gen_range(0..=10_000u64);
        let x = literal_with_totals(a, b, 3, Strictness::Permissive);

        let p0 = dominating_power(&x).unwrap();

        // Independent oracle: construct the n-th power explicitly as an
        // n-fold product and read off its report, stopping at the first n
        // whose totals satisfy the strict comparison.
        let mut brute = None;
        for n in 1..=p0 + 2 {
            let power = EllipticRanks::product(&vec![x.clone(); n as usize]).unwrap();
            if report(&power).hilali_strict {
                brute = Some(n);
                break;
            }
        }
        assert_eq!(brute, Some(p0), "scan vs brute force at a = {a}, b = {b}");

        // Once strict domination holds it never lapses.
        let table = ratio_table(&x, p0 + 50).unwrap();
        assert_eq!(table.p0, p0);
        for row in &table.table {
            assert_eq!(
                row.strict_holds,
                row.n >= p0,
                "monotonicity at n = {} for a = {a}, b = {b}",
                row.n
            );
        }
    }
    pass(7, "scan matches brute force");
}

#[test]
fn criterion_08_prediction_matches_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut cases: Vec<(u64, u64)> = (0..1000)
        .map(|_| {
            let b = rng.gen_range(1..=100u64);
            let a = if b == 1 { 0 } else { rng.gen_range(0..=b) };
            (a, b)
        })
        .collect();
    // Boundary pairs for every branch of the prediction.
    cases.extend([(0, 1), (1, 2), (2, 2), (3, 3), (4, 4), (100, 100), (0, 100)]);
    for (a, b) in cases {
        let x = literal_with_totals(a, b, 2, Strictness::Strict);
        let predicted = predicted_dominating_power(&x);
        let scanned = dominating_power(&x).unwrap();
        assert_eq!(
            predicted,
            Some(scanned),
            "prediction vs scan at a = {a}, b = {b}"
        );
    }
    pass(8, "prediction matches scan");
}

fn arb_expr(rng: &mut ChaCha8Rng, depth: u32) -> SpaceExpr {
    let pick = if depth == 0 {
        rng.gen_range(0..3u32)
    } else {
        rng.gen_range(0..6u32)
    };
    match pick {
        0 => SpaceExpr::Sphere(rng.gen_range(1..=50)),
        1 => SpaceExpr::Point,
        2 => {
            let mut pi = BTreeMap::new();
            for _ in 0..rng.gen_range(0..=2) {
                pi.insert(rng.gen_range(1..=9u64), rng.gen_range(0..=3u64));
            }
            let mut h = BTreeMap::new();
            for _ in 0..rng.gen_range(0..=2) {
                h.insert(rng.gen_range(0..=9u64), rng.gen_range(0..=3u64));
            }
            SpaceExpr::Literal(LiteralExpr {
                pi,
                h,
                label: None,
                span: None,
            })
        }
        3 | 4 => {
            let count = rng.gen_range(2..=4usize);
            SpaceExpr::Product((0..count).map(|_| arb_expr(rng, depth - 1)).collect())
        }
        _ => SpaceExpr::Power(Box::new(arb_expr(rng, depth - 1)), rng.gen_range(0..=9)),
    }
}

#[test]
fn criterion_09_parser_round_trip_and_fuzz() {
    // Round trip: canonical printing then reparsing is the identity.
    let mut rng = ChaCha8Rng::seed_from_u64(1009);
    for _ in 0..1000 {
        let ast = arb_expr(&mut rng, 5);
        let printed = ast.to_string();
        let reparsed = parse(&printed)
            .unwrap_or_else(|e| panic!("canonical text must reparse: {printed:?}: {e}"));
        assert_eq!(reparsed, ast, "round trip through {printed:?}");
    }

    // The enumerated error cases, with their spans.
    let cases: &[(&str, ParseErrorKind, (usize, usize))] = &[
        ("S2 & S3", ParseErrorKind::UnknownToken, (3, 4)),
        ("S0", ParseErrorKind::SphereDimension, (0, 2)),
        ("(S2", ParseErrorKind::MissingCloseParen, (3, 3)),
        ("()", ParseErrorKind::EmptyProduct, (1, 2)),
        ("S2 ^ 2 ^ 3", ParseErrorKind::ChainedCaret, (7, 8)),
        (
            "{pi: {3: 1, 3: 2}, h: {0: 1}}",
            ParseErrorKind::DuplicateDegree,
            (12, 13),
        ),
    ];
    for &(input, kind, (start, end)) in cases {
        let err = parse(input).unwrap_err();
        assert_eq!(err.kind, kind, "kind for {input:?}");
        assert_eq!(
            (err.span.start, err.span.end),
            (start, end),
            "span for {input:?}"
        );
    }

    // Fuzz: 10^5 arbitrary inputs through the whole CLI; every run returns
    // an exit code in {0, 1, 2} and none may panic.
    const TOKENS: &[&str] = &[
        "S2", "S10", "S999999", "S", "pt", "pi", "h", "{", "}", "(", ")", "*", "x", "^", ":", ",",
        "0", "7", "9", "&", ".", "S0",
    ];
    const RAW_CHARS: &[char] = &[
        'S', 'x', 'p', 't', 'i', 'h', '0', '3', '9', '{', '}', '(', ')', '*', ',', ':', '&', '$',
        '\u{a7}', '\u{3b1}', ' ', '\t',
    ];
    let extra_flags: &[&[&str]] = &[
        &["--permissive"],
        &["--format", "json"],
        &["--approx"],
        &["--table-limit", "3"],
    ];
    for i in 0..100_000u64 {
        let expr = if i % 4 == 0 {
            let len = rng.gen_range(0..=40usize);
            (0..len)
                .map(|_| RAW_CHARS[rng.gen_range(0..RAW_CHARS.len())])
                .collect::<String>()
        } else {
            let len = rng.gen_range(0..=12usize);
            (0..len)
                .map(|_| TOKENS[rng.gen_range(0..TOKENS.len())])
                .collect::<Vec<_>>()
                .join(" ")
        };

        // Parse errors must always point inside the input.
        if let Err(e) = parse(&expr) {
            assert!(e.span.start <= e.span.end && e.span.end <= expr.len());
        }

        let sub = ["eval", "check", "power"][(i % 3) as usize];
        let mut args = vec!["elliptic-calc", sub, expr.as_str()];
        if i % 16 == 0 {
            args.extend_from_slice(extra_flags[(i / 16) as usize % extra_flags.len()]);
        }
        let mut stdin = Cursor::new(Vec::new());
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let exit = run_from(args, &mut stdin, &mut stdout, &mut stderr, false);
        assert!(matches!(exit, 0..=2), "exit {exit} for {sub} {expr:?}");
    }
    pass(9, "parser round trip and fuzz");
}

#[test]
fn criterion_10_golden_replay() {
    let rows = golden_rows();
    assert!(rows.len() >= 100, "golden table has {} rows", rows.len());
    for row in &rows {
        assert!(
            row.pass,
            "{}: {} expected {}, got {}",
            row.subject, row.quantity, row.expected, row.computed
        );
    }

    let mut stdin = Cursor::new(Vec::new());
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let exit = run_from(
        ["elliptic-calc", "paper-examples"],
        &mut stdin,
        &mut stdout,
        &mut stderr,
        false,
    );
    assert_eq!(exit, 0);
    let out = String::from_utf8_lossy(&stdout);
    assert!(out.contains("S^2: p0 expected 3, got 3 [ok]"));
    assert!(out.contains("S^3: chi_pi expected -1, got -1 [ok]"));
    assert!(out.contains("S^2 x S^4: p0 expected 2, got 2 [ok]"));
    pass(10, "golden replay");
}
