//! Rank tables for formal elliptic spaces.
//!
//! An [`EllipticRanks`] value is the numerical shadow of a space: one finite
//! map of rational homotopy ranks (degree ≥ 1) and one of rational homology
//! ranks (degree ≥ 0). Everything downstream — Poincaré polynomials, Euler
//! characteristics, dominating powers — is a function of these two tables,
//! so this module is deliberately structural-free: no homotopy types, no
//! minimal models, just validated integer tables and the two product rules
//! (homotopy ranks add, homology polynomials multiply).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Polynomial;

/// Largest degree accepted from user-supplied tables and surface syntax.
/// Internal degrees (e.g. in a large product) may exceed this; the cap is an
/// input-sanity bound, not an arithmetic limit.
pub const MAX_DEGREE: u64 = 1_000_000;

/// How much of a table to accept from the user.
///
/// `Strict` (the default) admits only tables inside the regime where the
/// comparison theorems are stated: simply connected and with total homotopy
/// rank at most total homology rank. `Permissive` admits any table that is
/// path-connected and satisfies the forced point rule, which is what the
/// dominating-power machinery actually needs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    #[default]
    Strict,
    Permissive,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("sphere dimension must be ≥ 1")]
    SphereDimension,
    #[error("degree {degree} exceeds the maximum supported degree {MAX_DEGREE}")]
    DegreeTooLarge { degree: u64 },
    #[error("empty product; use `pt` for the one-point space")]
    EmptyProduct,
    #[error(
        "table is not path-connected: homology rank at degree 0 must be exactly 1, found {beta0}"
    )]
    NotPathConnected { beta0: u64 },
    #[error("homotopy ranks start at degree 1; degree 0 has no meaning here")]
    HomotopyDegreeZero,
    #[error("H-rank 1 forces π-rank 0: a table with total homology rank 1 cannot have homotopy rank {pi_total}")]
    PointMustBeTrivial { pi_total: BigUint },
    #[error("table is not simply connected (homotopy rank {beta_pi_1} in degree 1); rerun as permissive to allow it")]
    NotSimplyConnected { beta_pi_1: u64 },
    #[error("total homotopy rank {pi_total} exceeds total homology rank {h_total}; rerun as permissive to allow it")]
    HilaliViolating { pi_total: BigUint, h_total: BigUint },
}

/// Non-fatal diagnostics attached to accepted tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// The table violates χπ ≤ 0 ≤ χ, so no simply connected elliptic space
    /// realizes it. Accepted anyway: the table is still a valid formal input.
    MirrorFails { chi_pi: BigInt, chi: BigInt },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::MirrorFails { chi_pi, chi } => write!(
                f,
                "table fails the mirror inequality chi_pi <= 0 <= chi (chi_pi = {chi_pi}, chi = {chi}); \
                 no simply connected elliptic space has these ranks"
            ),
        }
    }
}

/// A formal elliptic space: finite homotopy and homology rank tables plus a
/// display label.
///
/// Invariants, enforced by every constructor:
/// - stored ranks are nonzero (absent degree = rank 0);
/// - homotopy degrees are ≥ 1;
/// - homology rank at degree 0 is exactly 1 (path-connectedness);
/// - a table with total homology rank 1 has no homotopy (the point rule).
///
/// Labels are display-only: equality compares the rank tables and nothing
/// else, so `product([x])` equals `x` and a literal with the ranks of a
/// sphere equals that sphere.
#[derive(Clone, Debug, Eq)]
pub struct EllipticRanks {
    homotopy: BTreeMap<u64, BigUint>,
    homology: BTreeMap<u64, BigUint>,
    label: String,
}

impl PartialEq for EllipticRanks {
    fn eq(&self, other: &Self) -> bool {
        self.homotopy == other.homotopy && self.homology == other.homology
    }
}

impl EllipticRanks {
    /// The one-point space: no homotopy, homology `{0 ↦ 1}`.
    pub fn point() -> EllipticRanks {
        let ranks = EllipticRanks {
            homotopy: BTreeMap::new(),
            homology: BTreeMap::from([(0, BigUint::one())]),
            label: "pt".to_string(),
        };
        debug_assert!(ranks.invariants_ok());
        ranks
    }

    /// The n-sphere. Odd `n`: one homotopy generator in degree `n`. Even
    /// `n = 2k`: generators in degrees `2k` and `4k − 1`. Homology is
    /// `{0 ↦ 1, n ↦ 1}` either way.
    pub fn sphere(n: u64) -> Result<EllipticRanks, ValidationError> {
        if n == 0 {
            return Err(ValidationError::SphereDimension);
        }
        if n > MAX_DEGREE {
            return Err(ValidationError::DegreeTooLarge { degree: n });
        }
        let mut homotopy = BTreeMap::from([(n, BigUint::one())]);
        if n.is_multiple_of(2) {
            homotopy.insert(2 * n - 1, BigUint::one());
        }
        let ranks = EllipticRanks {
            homotopy,
            homology: BTreeMap::from([(0, BigUint::one()), (n, BigUint::one())]),
            label: format!("S{n}"),
        };
        debug_assert!(ranks.invariants_ok());
        Ok(ranks)
    }

    /// Product of one or more spaces: homotopy ranks add degreewise, homology
    /// polynomials multiply (Künneth). The empty product is rejected.
    pub fn product(factors: &[EllipticRanks]) -> Result<EllipticRanks, ValidationError> {
        let (first, rest) = factors.split_first().ok_or(ValidationError::EmptyProduct)?;
        if rest.is_empty() {
            return Ok(first.clone());
        }
        let mut homotopy = first.homotopy.clone();
        let mut homology = first.homology_poincare_poly();
        for factor in rest {
            for (degree, rank) in &factor.homotopy {
                *homotopy.entry(*degree).or_insert_with(BigUint::zero) += rank;
            }
            homology = &homology * &factor.homology_poincare_poly();
        }
        let label = factors
            .iter()
            .map(|f| {
                if f.label.contains(" * ") {
                    format!("({})", f.label)
                } else {
                    f.label.clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" * ");
        let ranks = EllipticRanks {
            homotopy,
            homology: poly_to_ranks(&homology),
            label,
        };
        debug_assert!(ranks.invariants_ok());
        Ok(ranks)
    }

    /// The n-fold product of `self` with itself; `n = 0` is the point.
    /// Homotopy ranks scale by `n`; the homology polynomial is raised to the
    /// n-th power.
    pub fn power(&self, n: u64) -> EllipticRanks {
        if n == 0 {
            return EllipticRanks::point();
        }
        let homotopy = self
            .homotopy
            .iter()
            .map(|(degree, rank)| (*degree, rank * n))
            .collect();
        let homology = poly_to_ranks(&self.homology_poincare_poly().pow(n));
        let base = if self.label.contains(" * ") || self.label.contains(" ^ ") {
            format!("({})", self.label)
        } else {
            self.label.clone()
        };
        let ranks = EllipticRanks {
            homotopy,
            homology,
            label: format!("{base} ^ {n}"),
        };
        debug_assert!(ranks.invariants_ok());
        ranks
    }

    /// Build a space from raw rank maps.
    ///
    /// Zero ranks are dropped; degrees above [`MAX_DEGREE`] are rejected.
    /// Hard errors in both modes: homotopy rank at degree 0, homology rank at
    /// degree 0 different from 1, and the point rule (total homology rank 1
    /// with surviving homotopy). Strict mode additionally rejects tables that
    /// are not simply connected or whose total homotopy rank exceeds the
    /// total homology rank. A table failing the mirror inequality
    /// χπ ≤ 0 ≤ χ is accepted with a [`Warning`] in either mode.
    pub fn from_literal(
        pi_ranks: &BTreeMap<u64, u64>,
        h_ranks: &BTreeMap<u64, u64>,
        label: Option<&str>,
        strictness: Strictness,
    ) -> Result<(EllipticRanks, Vec<Warning>), ValidationError> {
        for &degree in pi_ranks.keys().chain(h_ranks.keys()) {
            if degree > MAX_DEGREE {
                return Err(ValidationError::DegreeTooLarge { degree });
            }
        }
        let homotopy: BTreeMap<u64, BigUint> = pi_ranks
            .iter()
            .filter(|(_, &rank)| rank > 0)
            .map(|(&degree, &rank)| (degree, BigUint::from(rank)))
            .collect();
        let homology: BTreeMap<u64, BigUint> = h_ranks
            .iter()
            .filter(|(_, &rank)| rank > 0)
            .map(|(&degree, &rank)| (degree, BigUint::from(rank)))
            .collect();

        if homotopy.contains_key(&0) {
            return Err(ValidationError::HomotopyDegreeZero);
        }
        let beta0 = homology.get(&0).cloned().unwrap_or_default();
        if !beta0.is_one() {
            return Err(ValidationError::NotPathConnected {
                beta0: h_ranks.get(&0).copied().unwrap_or(0),
            });
        }
        let pi_total: BigUint = homotopy.values().sum();
        let h_total: BigUint = homology.values().sum();
        if h_total.is_one() && !pi_total.is_zero() {
            return Err(ValidationError::PointMustBeTrivial { pi_total });
        }
        if strictness == Strictness::Strict {
            if let Some(&beta_pi_1) = pi_ranks.get(&1) {
                if beta_pi_1 > 0 {
                    return Err(ValidationError::NotSimplyConnected { beta_pi_1 });
                }
            }
            if pi_total > h_total {
                return Err(ValidationError::HilaliViolating { pi_total, h_total });
            }
        }

        let mut warnings = Vec::new();
        let chi_pi = alternating_sum(&homotopy);
        let chi = alternating_sum(&homology);
        if chi_pi > BigInt::zero() || chi < BigInt::zero() {
            warnings.push(Warning::MirrorFails { chi_pi, chi });
        }

        let label = match label {
            Some(text) => text.to_string(),
            None => render_literal(pi_ranks, h_ranks),
        };
        let ranks = EllipticRanks {
            homotopy,
            homology,
            label,
        };
        debug_assert!(ranks.invariants_ok());
        Ok((ranks, warnings))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Replace the display label; the rank tables are untouched.
    pub fn with_label(mut self, label: impl Into<String>) -> EllipticRanks {
        self.label = label.into();
        self
    }

    /// Homotopy rank table (degree ≥ 1 ↦ nonzero rank).
    pub fn homotopy_ranks(&self) -> &BTreeMap<u64, BigUint> {
        &self.homotopy
    }

    /// Homology rank table (degree 0 always ↦ 1).
    pub fn homology_ranks(&self) -> &BTreeMap<u64, BigUint> {
        &self.homology
    }

    /// Total homotopy rank Σ βπᵢ — the `a` of the dominating-power scan.
    pub fn pi_total(&self) -> BigUint {
        self.homotopy.values().sum()
    }

    /// Total homology rank Σ βᵢ — the `b` of the dominating-power scan.
    /// Always ≥ 1.
    pub fn h_total(&self) -> BigUint {
        self.homology.values().sum()
    }

    fn homology_poincare_poly(&self) -> Polynomial {
        Polynomial::from_terms(self.homology.iter().map(|(d, c)| (*d, c.clone())))
    }

    /// Check the construction invariants; used by `debug_assert!` in every
    /// constructor and directly by tests.
    pub(crate) fn invariants_ok(&self) -> bool {
        let no_zero_ranks = self
            .homotopy
            .values()
            .chain(self.homology.values())
            .all(|rank| !rank.is_zero());
        let degrees_ok = !self.homotopy.contains_key(&0);
        let connected = self.homology.get(&0).is_some_and(BigUint::is_one);
        let point_rule = !self.h_total().is_one() || self.pi_total().is_zero();
        no_zero_ranks && degrees_ok && connected && point_rule
    }
}

impl fmt::Display for EllipticRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

fn poly_to_ranks(p: &Polynomial) -> BTreeMap<u64, BigUint> {
    p.terms().map(|(d, c)| (d, c.clone())).collect()
}

fn alternating_sum(ranks: &BTreeMap<u64, BigUint>) -> BigInt {
    let mut acc = BigInt::zero();
    for (degree, rank) in ranks {
        let signed = BigInt::from(rank.clone());
        if degree % 2 == 0 {
            acc += signed;
        } else {
            acc -= signed;
        }
    }
    acc
}

/// Canonical text for a raw rank map: `{0: 1, 3: 1}`, `{}` when empty.
pub(crate) fn render_rank_map(ranks: &BTreeMap<u64, u64>) -> String {
    let entries: Vec<String> = ranks
        .iter()
        .map(|(degree, rank)| format!("{degree}: {rank}"))
        .collect();
    format!("{{{}}}", entries.join(", "))
}

/// Canonical text for a literal, used as its default label and by the
/// expression printer: `{pi: {3: 1}, h: {0: 1, 3: 1}}`.
pub(crate) fn render_literal(pi: &BTreeMap<u64, u64>, h: &BTreeMap<u64, u64>) -> String {
    format!("{{pi: {}, h: {}}}", render_rank_map(pi), render_rank_map(h))
}
