//! How invariants transform under Cartesian products and powers.
//!
//! Homology Poincaré polynomials multiply (Künneth); homotopy ones add.
//! Consequently χ multiplies while χπ adds, and total ranks follow suit:
//! P(1) multiplies, P_pi(1) adds. Run with
//! `cargo run --example products_and_powers`.

use elliptic_calc::invariants::{homotopy_poincare, poincare, report};
use elliptic_calc::space::EllipticRanks;

fn main() {
    let s2 = EllipticRanks::sphere(2).unwrap();
    let s3 = EllipticRanks::sphere(3).unwrap();
    let s4 = EllipticRanks::sphere(4).unwrap();

    let product = EllipticRanks::product(&[s2.clone(), s3.clone(), s4.clone()]).unwrap();
    println!("{}", report(&product));
    println!();

    // P multiplies, P_pi adds.
    assert_eq!(
        poincare(&product),
        &(&poincare(&s2) * &poincare(&s3)) * &poincare(&s4)
    );
    assert_eq!(
        homotopy_poincare(&product),
        &(&homotopy_poincare(&s2) + &homotopy_poincare(&s3)) + &homotopy_poincare(&s4)
    );

    // χ multiplies, χπ adds: for S2 x S3 x S4 that is 2·0·2 = 0 and
    // 0 + (-1) + 0 = -1.
    let r = report(&product);
    assert_eq!(r.chi.to_string(), "0");
    assert_eq!(r.chi_pi.to_string(), "-1");

    // A power is the iterated product, in one call.
    let cube = s2.power(3);
    let by_hand = EllipticRanks::product(&[s2.clone(), s2.clone(), s2.clone()]).unwrap();
    assert_eq!(cube, by_hand);
    println!("{}", report(&cube));
    println!();

    // Total ranks under the n-th power: P_pi(1) scales by n, P(1) is raised
    // to the n. For S2 (a = 2, b = 2) the 10th power gives 20 and 1024.
    let tenth = s2.power(10);
    let r = report(&tenth);
    assert_eq!(r.pi_total.to_string(), "20");
    assert_eq!(r.h_total.to_string(), "1024");
    println!(
        "S2^10: P_pi(1) = {}, P(1) = {}, ratio = {}",
        r.pi_total, r.h_total, r.ratio
    );

    // The zeroth power of anything is the point.
    assert_eq!(s4.power(0), EllipticRanks::point());
    println!("S4^0 is the point");
}
