//! Sparse univariate polynomials in `t` with nonnegative arbitrary-precision
//! integer coefficients.
//!
//! These are generating functions for rank tables: the degree-`i` coefficient
//! counts the rank in degree `i`. All arithmetic is exact; evaluation is
//! defined at integer points only (the interesting ones are `t = 1`, `-1`
//! and `0`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Zero};
use serde::de::{Error as DeError, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A sparse polynomial keyed by degree. Absent degrees have coefficient zero;
/// stored coefficients are always strictly positive, so the zero polynomial
/// is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<u64, BigUint>,
}

impl Polynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Polynomial {
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Polynomial::monomial(0, 1u32)
    }

    /// `coeff * t^degree`. A zero coefficient yields the zero polynomial.
    pub fn monomial(degree: u64, coeff: impl Into<BigUint>) -> Self {
        let mut terms = BTreeMap::new();
        let coeff = coeff.into();
        if !coeff.is_zero() {
            terms.insert(degree, coeff);
        }
        Polynomial { terms }
    }

    /// Build from `(degree, coefficient)` pairs, accumulating repeats and
    /// dropping zero coefficients.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (u64, C)>,
        C: Into<BigUint>,
    {
        let mut terms: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (degree, coeff) in iter {
            let coeff = coeff.into();
            if coeff.is_zero() {
                continue;
            }
            *terms.entry(degree).or_insert_with(BigUint::zero) += coeff;
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree with a nonzero coefficient, or `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    /// Coefficient of `t^degree` (zero when absent).
    pub fn coeff(&self, degree: u64) -> BigUint {
        self.terms.get(&degree).cloned().unwrap_or_default()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `(degree, coefficient)` in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    /// Exact value at an integer point.
    ///
    /// `t = 0`, `1` and `-1` are answered without exponentiation: they give
    /// the constant coefficient, the coefficient sum and the alternating
    /// coefficient sum respectively.
    pub fn eval(&self, t: &BigInt) -> BigInt {
        if t.is_zero() {
            return BigInt::from(self.coeff(0));
        }
        if t.is_one() {
            return BigInt::from(self.coeff_sum());
        }
        if *t == BigInt::from(-1) {
            return self.alternating_sum();
        }
        let mut acc = BigInt::zero();
        for (degree, coeff) in &self.terms {
            acc += BigInt::from(coeff.clone()) * Pow::pow(t, *degree);
        }
        acc
    }

    /// Sum of all coefficients, i.e. the value at `t = 1`.
    pub fn coeff_sum(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Alternating sum of coefficients by degree parity, i.e. the value at
    /// `t = -1`.
    pub fn alternating_sum(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for (degree, coeff) in &self.terms {
            let signed = BigInt::from(coeff.clone());
            if degree % 2 == 0 {
                acc += signed;
            } else {
                acc -= signed;
            }
        }
        acc
    }

    /// `self` multiplied with itself `n` times; `n = 0` gives the constant
    /// polynomial `1`. Binary exponentiation over the convolution product.
    pub fn pow(&self, n: u64) -> Polynomial {
        let mut result = Polynomial::one();
        if n == 0 {
            return result;
        }
        let mut base = self.clone();
        let mut exp = n;
        loop {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp == 0 {
                break;
            }
            base = &base * &base;
        }
        result
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (degree, coeff) in &rhs.terms {
            *terms.entry(*degree).or_insert_with(BigUint::zero) += coeff;
        }
        Polynomial { terms }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    /// Convolution product: the degree-`n` coefficient of the result sums
    /// `a_i * b_j` over all `i + j = n`.
    ///
    /// Panics if a resulting degree exceeds `u64::MAX`; the surface-syntax
    /// caps in [`crate::dsl`] keep that unreachable for parsed input.
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut terms: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (da, ca) in &self.terms {
            for (db, cb) in &rhs.terms {
                let degree = da.checked_add(*db).expect("polynomial degree overflow");
                *terms.entry(degree).or_insert_with(BigUint::zero) += ca * cb;
            }
        }
        Polynomial { terms }
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

/// Human form: descending degrees, coefficient 1 elided, constant term last,
/// e.g. `t^7 + t^4 + 2*t^2 + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (degree, coeff) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (degree, coeff.is_one()) {
                (0, _) => write!(f, "{coeff}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{coeff}*t")?,
                (_, true) => write!(f, "t^{degree}")?,
                (_, false) => write!(f, "{coeff}*t^{degree}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: object mapping degree to coefficient, both as decimal strings,
/// ascending by degree. `{"0": "1", "2": "1"}` is `t^2 + 1`.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (degree, coeff) in &self.terms {
            map.serialize_entry(&degree.to_string(), &coeff.to_string())?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PolyVisitor;

        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = Polynomial;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(
                    f,
                    "a map from decimal degree strings to decimal coefficient strings"
                )
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Polynomial, A::Error> {
                let mut terms: BTreeMap<u64, BigUint> = BTreeMap::new();
                while let Some((degree, coeff)) = access.next_entry::<String, String>()? {
                    let degree: u64 = degree
                        .parse()
                        .map_err(|_| A::Error::custom(format!("invalid degree `{degree}`")))?;
                    let coeff: BigUint = coeff
                        .parse()
                        .map_err(|_| A::Error::custom(format!("invalid coefficient `{coeff}`")))?;
                    if coeff.is_zero() {
                        continue;
                    }
                    if terms.insert(degree, coeff).is_some() {
                        return Err(A::Error::custom(format!("duplicate degree `{degree}`")));
                    }
                }
                Ok(Polynomial { terms })
            }
        }

        deserializer.deserialize_map(PolyVisitor)
    }
}
