//! Exact calculator for numerical invariants of formal elliptic spaces.
//!
//! A space here is a pair of finite rank tables: homotopy ranks
//! (dim πᵢ ⊗ ℚ per degree i ≥ 1) and homology ranks (dim Hᵢ per degree
//! i ≥ 0), with every arithmetic step carried out over arbitrary-precision
//! integers and rationals — nothing is floated, rounded, or truncated.
//!
//! From a table the crate computes the homotopical and homological Poincaré
//! polynomials, the two Euler characteristics χπ and χ, the total-rank
//! comparison `P_pi(1) <= P(1)` ("hilali"), its mirror `chi_pi <= 0 <= chi`,
//! the zero/positive dichotomy relating the two, and the dominating powers:
//! the least n for which the n-th Cartesian power of the space satisfies the
//! total-rank comparison strictly (`p0`) or weakly (`p`).
//!
//! # Layout
//!
//! - [`poly`] — sparse one-variable polynomials with natural coefficients.
//! - [`space`] — validated rank tables: spheres, the point, literals,
//!   products, powers.
//! - [`invariants`] — the full per-space report.
//! - [`power`] — dominating powers and the `n*a` vs `b^n` ratio table.
//! - [`dsl`] — the expression language (`S2 * S4 ^ 3`, rank-table literals)
//!   with spanned errors.
//! - [`golden`] — an embedded table of known values, replayable as a
//!   self-test.
//! - [`render`] / [`cli`] — terminal output and the `elliptic-calc` binary.
//!
//! # Example
//!
//! ```
//! use elliptic_calc::dsl;
//! use elliptic_calc::invariants::report;
//! use elliptic_calc::space::Strictness;
//!
//! let ast = dsl::parse("S2 * S4").unwrap();
//! let (space, warnings) = dsl::elaborate(&ast, Strictness::Strict).unwrap();
//! assert!(warnings.is_empty());
//!
//! let r = report(&space);
//! assert_eq!(r.poincare.to_string(), "t^6 + t^4 + t^2 + 1");
//! assert_eq!(r.pi_total.to_string(), "4");
//! assert!(r.hilali_holds && r.mirror_holds && r.dichotomy_consistent);
//! ```
//!
//! The `examples/` directory exercises every capability end to end; start
//! with `cargo run --example spheres`.

pub mod cli;
pub mod dsl;
pub mod golden;
pub mod invariants;
pub mod poly;
pub mod power;
pub mod render;
pub mod space;

#[cfg(test)]
pub(crate) mod test_support;

pub use invariants::{report, InvariantReport};
pub use poly::Polynomial;
pub use power::{ratio_table, PowerReport, RatioRow};
pub use space::{EllipticRanks, Strictness};
