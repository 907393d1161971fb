//! Dominating powers and ratio tables.
//!
//! For a space with total homotopy rank `a` and total homology rank `b`, the
//! n-th power has totals `n·a` and `bⁿ`, so the questions "from which power
//! on does homology strictly dominate homotopy?" and "... weakly dominate?"
//! reduce to exact integer comparisons of `n·a` against `bⁿ`. This module
//! runs that scan, produces the convergence table of exact ratios
//! `n·a / bⁿ`, and computes the closed-form prediction for the strict
//! threshold available whenever `a ≤ b`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::invariants::RatioJson;
use crate::space::EllipticRanks;

/// Hard stop for the ascending scan. Unreachable for tables satisfying the
/// construction invariants (`b = 1` forces `a = 0`, and for `b ≥ 2` the
/// threshold grows like `log₂ a`); hitting it means a broken invariant, not
/// a big input.
pub const ITERATION_CAP: u64 = 1_000_000;

/// Largest ratio table a single call will produce.
pub const MAX_TABLE_LIMIT: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PowerError {
    #[error("power scan exceeded {ITERATION_CAP} iterations; the rank table violates its construction invariants")]
    IterationCapReached,
    #[error("table limit must be between 1 and {MAX_TABLE_LIMIT}, got {limit}")]
    TableLimitOutOfRange { limit: u64 },
}

/// One row of the convergence table: the totals of the n-th power and their
/// exact ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub n: u64,
    /// `n·a`: total homotopy rank of the n-th power.
    pub na: BigUint,
    /// `bⁿ`: total homology rank of the n-th power.
    pub bn: BigUint,
    /// `n·a / bⁿ` in lowest terms.
    pub ratio: BigRational,
    /// `n·a < bⁿ`.
    pub strict_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerReport {
    /// Least `n` with `n·a < bⁿ`.
    pub p0: u64,
    /// Least `n` with `n·a ≤ bⁿ`.
    pub p: u64,
    /// Closed-form value for `p0`, present only when `a ≤ b`.
    pub predicted_p0: Option<u64>,
    pub table: Vec<RatioRow>,
}

/// Least `n ≥ 1` whose power has total homology rank strictly above total
/// homotopy rank: the first `n` with `n·a < bⁿ`.
pub fn dominating_power(x: &EllipticRanks) -> Result<u64, PowerError> {
    scan(&x.pi_total(), &x.h_total(), Comparison::Strict)
}

/// Least `n ≥ 1` with `n·a ≤ bⁿ`. Equals 1 exactly when the rank inequality
/// already holds for the space itself.
pub fn almost_dominating_power(x: &EllipticRanks) -> Result<u64, PowerError> {
    scan(&x.pi_total(), &x.h_total(), Comparison::Weak)
}

/// The closed-form strict threshold, defined whenever `a ≤ b`:
/// 1 when `a < b`; for `a = b`, 3 if the common value is 2 and 2 if it is
/// ≥ 3 (the only remaining case, `a = b ≤ 1`, is the point, where the
/// answer is 1). `None` when `a > b`, where no closed form is claimed.
pub fn predicted_dominating_power(x: &EllipticRanks) -> Option<u64> {
    let a = x.pi_total();
    let b = x.h_total();
    if a > b {
        return None;
    }
    if a < b {
        return Some(1);
    }
    // a = b; the construction invariants leave a = b = 0 impossible (b >= 1).
    if a <= BigUint::one() {
        Some(1)
    } else if a == BigUint::from(2u32) {
        Some(3)
    } else {
        Some(2)
    }
}

/// Both thresholds plus the first `table_limit` rows of the convergence
/// table.
pub fn ratio_table(x: &EllipticRanks, table_limit: u64) -> Result<PowerReport, PowerError> {
    if table_limit == 0 || table_limit > MAX_TABLE_LIMIT {
        return Err(PowerError::TableLimitOutOfRange { limit: table_limit });
    }
    let a = x.pi_total();
    let b = x.h_total();
    let p0 = scan(&a, &b, Comparison::Strict)?;
    let p = scan(&a, &b, Comparison::Weak)?;
    let mut table = Vec::with_capacity(table_limit as usize);
    let mut bn = b.clone();
    for n in 1..=table_limit {
        let na = &a * n;
        table.push(RatioRow {
            n,
            ratio: BigRational::new(BigInt::from(na.clone()), BigInt::from(bn.clone())),
            strict_holds: na < bn,
            na,
            bn: bn.clone(),
        });
        bn *= &b;
    }
    Ok(PowerReport {
        p0,
        p,
        predicted_p0: predicted_dominating_power(x),
        table,
    })
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Comparison {
    Strict,
    Weak,
}

fn scan(a: &BigUint, b: &BigUint, cmp: Comparison) -> Result<u64, PowerError> {
    let mut bn = b.clone();
    for n in 1..=ITERATION_CAP {
        let na = a * n;
        let holds = match cmp {
            Comparison::Strict => na < bn,
            Comparison::Weak => na <= bn,
        };
        if holds {
            return Ok(n);
        }
        bn *= b;
    }
    Err(PowerError::IterationCapReached)
}

impl PowerReport {
    /// CSV form of the table: header `n,n_a,b_n,ratio,strict`, one row per
    /// line, ratio as `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,n_a,b_n,ratio,strict\n");
        for row in &self.table {
            out.push_str(&format!(
                "{},{},{},{}/{},{}\n",
                row.n,
                row.na,
                row.bn,
                row.ratio.numer(),
                row.ratio.denom(),
                row.strict_holds
            ));
        }
        out
    }
}

impl Serialize for RatioRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("RatioRow", 5)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("na", &self.na.to_string())?;
        s.serialize_field("bn", &self.bn.to_string())?;
        s.serialize_field("ratio", &RatioJson(&self.ratio))?;
        s.serialize_field("strict", &self.strict_holds)?;
        s.end()
    }
}

impl Serialize for PowerReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Table<'a>(&'a [RatioRow]);
        impl Serialize for Table<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for row in self.0 {
                    seq.serialize_element(row)?;
                }
                seq.end()
            }
        }
        let mut s = serializer.serialize_struct("PowerReport", 4)?;
        s.serialize_field("p0", &self.p0)?;
        s.serialize_field("p", &self.p)?;
        s.serialize_field("predicted_p0", &self.predicted_p0)?;
        s.serialize_field("table", &Table(&self.table))?;
        s.end()
    }
}
