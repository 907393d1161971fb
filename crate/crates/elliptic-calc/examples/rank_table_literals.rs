//! Building spaces directly from rank tables, and what validation rejects.
//!
//! A literal is a pair of degree → rank maps. Strict mode (the default)
//! admits only tables a simply connected elliptic space could have;
//! permissive mode admits any formally consistent table so the calculator
//! can probe counterexample candidates. Run with
//! `cargo run --example rank_table_literals`.

use std::collections::BTreeMap;

use elliptic_calc::invariants::report;
use elliptic_calc::space::{EllipticRanks, Strictness, ValidationError};

fn ranks(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

fn main() {
    // The rank tables of S3, entered by hand and labeled.
    let (s3_by_hand, warnings) = EllipticRanks::from_literal(
        &ranks(&[(3, 1)]),
        &ranks(&[(0, 1), (3, 1)]),
        Some("handmade S3"),
        Strictness::Strict,
    )
    .unwrap();
    assert!(warnings.is_empty());
    assert_eq!(s3_by_hand, EllipticRanks::sphere(3).unwrap());
    println!("{}", report(&s3_by_hand));
    println!();

    // Strict mode rejects tables with more total homotopy than homology.
    let err = EllipticRanks::from_literal(
        &ranks(&[(2, 9)]),
        &ranks(&[(0, 1), (2, 1)]),
        None,
        Strictness::Strict,
    )
    .unwrap_err();
    assert!(matches!(err, ValidationError::HilaliViolating { .. }));
    println!("strict rejects: {err}");

    // Permissive mode admits the same table and warns instead: χπ = 9 > 0,
    // so no simply connected elliptic space realizes it.
    let (probe, warnings) = EllipticRanks::from_literal(
        &ranks(&[(2, 9)]),
        &ranks(&[(0, 1), (2, 1)]),
        None,
        Strictness::Permissive,
    )
    .unwrap();
    assert_eq!(warnings.len(), 1);
    println!("permissive warns: {}", warnings[0]);
    let r = report(&probe);
    assert!(!r.hilali_holds && !r.mirror_holds);
    println!();

    // Structural rules hold in both modes. Degree 0 is homology's business:
    let err = EllipticRanks::from_literal(
        &ranks(&[(3, 1)]),
        &ranks(&[(3, 1)]),
        None,
        Strictness::Permissive,
    )
    .unwrap_err();
    assert!(matches!(
        err,
        ValidationError::NotPathConnected { beta0: 0 }
    ));
    println!("always rejected: {err}");

    // ...and a table with total homology rank 1 is the point, so it cannot
    // carry homotopy:
    let err = EllipticRanks::from_literal(
        &ranks(&[(3, 5)]),
        &ranks(&[(0, 1)]),
        None,
        Strictness::Permissive,
    )
    .unwrap_err();
    assert!(matches!(err, ValidationError::PointMustBeTrivial { .. }));
    println!("always rejected: {err}");

    // Zero entries are dropped rather than rejected; an all-zero homotopy
    // table with point homology is just the point.
    let (pt, _) = EllipticRanks::from_literal(
        &ranks(&[(5, 0)]),
        &ranks(&[(0, 1), (4, 0)]),
        None,
        Strictness::Strict,
    )
    .unwrap();
    assert_eq!(pt, EllipticRanks::point());
    println!("zero ranks are dropped: literal collapses to the point");
}
