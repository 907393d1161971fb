//! Scalar and polynomial invariants of a rank table, and the three checks
//! reported on every space:
//!
//! - the rank inequality `P_pi(1) <= P(1)` (total homotopy rank bounded by
//!   total homology rank), in weak and strict forms;
//! - the mirror inequality `chi_pi <= 0 <= chi` on the two Euler
//!   characteristics;
//! - the dichotomy `chi_pi = 0 <=> chi > 0`.
//!
//! All values are exact: totals are big integers, the ratio is a reduced
//! big rational, and the polynomials are the sparse exact kind from
//! [`crate::poly`].

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::poly::Polynomial;
use crate::space::EllipticRanks;

/// Homotopy Poincaré polynomial `P_pi(t) = Σ t^i·βπᵢ`. Never has a constant
/// term; the zero polynomial for the point.
pub fn homotopy_poincare(x: &EllipticRanks) -> Polynomial {
    Polynomial::from_terms(x.homotopy_ranks().iter().map(|(d, c)| (*d, c.clone())))
}

/// Poincaré polynomial `P(t) = Σ t^i·βᵢ`. Constant term always 1.
pub fn poincare(x: &EllipticRanks) -> Polynomial {
    Polynomial::from_terms(x.homology_ranks().iter().map(|(d, c)| (*d, c.clone())))
}

/// Everything the calculator knows about one space, computed exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantReport {
    pub label: String,
    pub homotopy_poincare: Polynomial,
    pub poincare: Polynomial,
    /// `P_pi(1)`: total homotopy rank, the `a` of the power scan.
    pub pi_total: BigUint,
    /// `P(1)`: total homology rank, the `b` of the power scan; always ≥ 1.
    pub h_total: BigUint,
    /// `P(-1)`: Euler characteristic.
    pub chi: BigInt,
    /// `P_pi(-1)`: homotopy Euler characteristic.
    pub chi_pi: BigInt,
    /// `pi_total <= h_total`.
    pub hilali_holds: bool,
    /// `pi_total < h_total`.
    pub hilali_strict: bool,
    /// `chi_pi <= 0 <= chi`.
    pub mirror_holds: bool,
    /// `(chi_pi = 0) <=> (chi > 0)`.
    pub dichotomy_consistent: bool,
    /// `pi_total / h_total` in lowest terms.
    pub ratio: BigRational,
    /// No homotopy rank in degree 1.
    pub simply_connected: bool,
}

/// Compute the full report. Infallible: every validity question was settled
/// when the `EllipticRanks` value was constructed.
pub fn report(x: &EllipticRanks) -> InvariantReport {
    let hp = homotopy_poincare(x);
    let p = poincare(x);
    let pi_total = hp.coeff_sum();
    let h_total = p.coeff_sum();
    debug_assert_eq!(pi_total, x.pi_total());
    debug_assert_eq!(h_total, x.h_total());
    let chi = p.alternating_sum();
    let chi_pi = hp.alternating_sum();
    let ratio = BigRational::new(
        BigInt::from(pi_total.clone()),
        BigInt::from(h_total.clone()),
    );
    InvariantReport {
        label: x.label().to_string(),
        hilali_holds: pi_total <= h_total,
        hilali_strict: pi_total < h_total,
        mirror_holds: chi_pi <= BigInt::zero() && BigInt::zero() <= chi,
        dichotomy_consistent: chi_pi.is_zero() == (chi > BigInt::zero()),
        simply_connected: !x.homotopy_ranks().contains_key(&1),
        homotopy_poincare: hp,
        poincare: p,
        pi_total,
        h_total,
        chi,
        chi_pi,
        ratio,
    }
}

/// Serializes a rational as `{"num": "...", "den": "..."}` with decimal
/// strings, matching the decimal-string convention for all big integers in
/// JSON output.
pub(crate) struct RatioJson<'a>(pub &'a BigRational);

impl Serialize for RatioJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ratio", 2)?;
        s.serialize_field("num", &self.0.numer().to_string())?;
        s.serialize_field("den", &self.0.denom().to_string())?;
        s.end()
    }
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("InvariantReport", 13)?;
        s.serialize_field("label", &self.label)?;
        s.serialize_field("homotopy_poincare", &self.homotopy_poincare)?;
        s.serialize_field("poincare", &self.poincare)?;
        s.serialize_field("pi_total", &self.pi_total.to_string())?;
        s.serialize_field("h_total", &self.h_total.to_string())?;
        s.serialize_field("chi", &self.chi.to_string())?;
        s.serialize_field("chi_pi", &self.chi_pi.to_string())?;
        s.serialize_field("hilali_holds", &self.hilali_holds)?;
        s.serialize_field("hilali_strict", &self.hilali_strict)?;
        s.serialize_field("mirror_holds", &self.mirror_holds)?;
        s.serialize_field("dichotomy_consistent", &self.dichotomy_consistent)?;
        s.serialize_field("ratio", &RatioJson(&self.ratio))?;
        s.serialize_field("simply_connected", &self.simply_connected)?;
        s.end()
    }
}

impl fmt::Display for InvariantReport {
    /// The human block the CLI prints for `eval`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "space: {}", self.label)?;
        writeln!(
            f,
            "simply connected: {}",
            if self.simply_connected { "yes" } else { "no" }
        )?;
        writeln!(f, "P_pi(t) = {}", self.homotopy_poincare)?;
        writeln!(f, "P(t) = {}", self.poincare)?;
        let rel = match self.pi_total.cmp(&self.h_total) {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        writeln!(
            f,
            "P_pi(1) = {} {} P(1) = {}",
            self.pi_total, rel, self.h_total
        )?;
        writeln!(f, "chi_pi = {}, chi = {}", self.chi_pi, self.chi)?;
        writeln!(f, "ratio: {}/{}", self.ratio.numer(), self.ratio.denom())?;
        write!(f, "{}", CheckLines(self))
    }
}

/// The three check lines shared by `eval` and `check` output.
pub(crate) struct CheckLines<'a>(pub &'a InvariantReport);

impl fmt::Display for CheckLines<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.0;
        if r.hilali_holds {
            let rel = if r.hilali_strict { "<" } else { "<=" };
            writeln!(f, "hilali: holds ({} {} {})", r.pi_total, rel, r.h_total)?;
        } else {
            writeln!(f, "hilali: fails ({} > {})", r.pi_total, r.h_total)?;
        }
        if r.mirror_holds {
            writeln!(f, "mirror: holds ({} <= 0 <= {})", r.chi_pi, r.chi)?;
        } else {
            writeln!(f, "mirror: fails (chi_pi = {}, chi = {})", r.chi_pi, r.chi)?;
        }
        let verdict = if r.dichotomy_consistent {
            "holds"
        } else {
            "fails"
        };
        write!(
            f,
            "dichotomy: {verdict} (chi_pi = {}, chi = {})",
            r.chi_pi, r.chi
        )
    }
}
