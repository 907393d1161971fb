//! Rank tables and invariant reports for spheres.
//!
//! Odd and even spheres have different rational shapes: an odd sphere
//! S^{2k+1} carries a single homotopy generator in its own degree, while an
//! even sphere S^{2k} carries one in degree 2k and a second in degree 4k-1.
//! Run with `cargo run --example spheres`.

use elliptic_calc::invariants::report;
use elliptic_calc::space::EllipticRanks;

fn main() {
    for dim in [2u64, 3, 4, 7] {
        let sphere = EllipticRanks::sphere(dim).expect("dimension is positive");
        println!("{}", report(&sphere));
        println!();
    }

    // The closed forms behind those reports, checked across a range:
    //   S^{2k+1}:  P_pi(t) = t^(2k+1)              P(t) = t^(2k+1) + 1
    //   S^{2k}:    P_pi(t) = t^(4k-1) + t^(2k)     P(t) = t^(2k) + 1
    for k in 1..=25u64 {
        let odd = report(&EllipticRanks::sphere(2 * k + 1).unwrap());
        assert_eq!(
            odd.homotopy_poincare.to_string(),
            format!("t^{}", 2 * k + 1)
        );
        assert_eq!(odd.poincare.to_string(), format!("t^{} + 1", 2 * k + 1));
        assert_eq!(odd.chi_pi.to_string(), "-1");
        assert_eq!(odd.chi.to_string(), "0");

        let even = report(&EllipticRanks::sphere(2 * k).unwrap());
        assert_eq!(
            even.homotopy_poincare.to_string(),
            format!("t^{} + t^{}", 4 * k - 1, 2 * k)
        );
        assert_eq!(even.poincare.to_string(), format!("t^{} + 1", 2 * k));
        assert_eq!(even.chi_pi.to_string(), "0");
        assert_eq!(even.chi.to_string(), "2");
    }
    println!("closed forms verified for k = 1..=25");

    // The point is the degenerate table: no homotopy, homology rank 1.
    let pt = report(&EllipticRanks::point());
    assert_eq!(pt.homotopy_poincare.to_string(), "0");
    assert_eq!(pt.poincare.to_string(), "1");
    println!("point: P_pi(t) = 0, P(t) = 1");
}
