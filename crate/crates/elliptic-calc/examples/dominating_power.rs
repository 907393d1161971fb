//! Dominating powers: how many Cartesian factors until total homology
//! outruns total homotopy?
//!
//! With a = P_pi(1) and b = P(1), the n-th power has totals n·a and b^n.
//! p0 is the least n with n·a < b^n (strict domination), p the least n with
//! n·a ≤ b^n. Run with `cargo run --example dominating_power`.

use elliptic_calc::power::{
    almost_dominating_power, dominating_power, predicted_dominating_power, ratio_table,
};
use elliptic_calc::render::{power_human, Style};
use elliptic_calc::space::EllipticRanks;

fn main() {
    // Even spheres are the classic edge case: a = b = 2, so n·a and b^n tie
    // at n = 1 and n = 2 and separate only at n = 3.
    let s2 = EllipticRanks::sphere(2).unwrap();
    let table = ratio_table(&s2, 6).unwrap();
    print!("{}", power_human(s2.label(), &table, true, &Style::plain()));
    println!();
    assert_eq!(table.p0, 3);
    assert_eq!(table.p, 1);

    // The same holds for every even sphere, not just S2.
    for k in 1..=10u64 {
        let even = EllipticRanks::sphere(2 * k).unwrap();
        assert_eq!(dominating_power(&even).unwrap(), 3);
        assert_eq!(almost_dominating_power(&even).unwrap(), 1);
    }
    println!("every even sphere: p0 = 3, p = 1");

    // Products of two even spheres start at a = b = 4 and separate at n = 2.
    for (n, m) in [(1u64, 1u64), (1, 2), (2, 3)] {
        let product = EllipticRanks::product(&[
            EllipticRanks::sphere(2 * n).unwrap(),
            EllipticRanks::sphere(2 * m).unwrap(),
        ])
        .unwrap();
        assert_eq!(dominating_power(&product).unwrap(), 2);
    }
    println!("products of two even spheres: p0 = 2");

    // Odd spheres dominate immediately: a = 1 < 2 = b.
    let s3 = EllipticRanks::sphere(3).unwrap();
    assert_eq!(dominating_power(&s3).unwrap(), 1);

    // p0 is predictable from the comparison of a and b alone:
    //   a < b → 1,  a = b ≤ 1 → 1,  a = b = 2 → 3,  a = b ≥ 3 → 2,
    //   a > b → no prediction (the scan still decides).
    for space in [
        EllipticRanks::sphere(3).unwrap(),
        EllipticRanks::sphere(2).unwrap(),
        EllipticRanks::sphere(2).unwrap().power(2),
        EllipticRanks::product(&[
            EllipticRanks::sphere(2).unwrap(),
            EllipticRanks::sphere(3).unwrap(),
        ])
        .unwrap(),
        EllipticRanks::point(),
    ] {
        let predicted = predicted_dominating_power(&space);
        let scanned = dominating_power(&space).unwrap();
        assert_eq!(predicted, Some(scanned));
        println!(
            "{}: p0 = {scanned} (predicted {:?})",
            space.label(),
            predicted
        );
    }
}
