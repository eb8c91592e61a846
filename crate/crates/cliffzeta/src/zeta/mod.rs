//! Dirichlet polynomials, the direct and Clifford-assembled zeta and twist
//! zeta series of a finite group, and rational fits across towers of quotients.

pub mod assemble;
pub mod direct;
pub mod fit;
pub mod tower;

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub use assemble::{assemble, assemble_twist, f_triple, f_twist, Assembly, TwistAssembly};
pub use direct::{twist_direct, zeta_direct};
pub use fit::{rational_fit, FitBounds, RationalFit};
pub use tower::{tower_series, Family, TowerMode, TowerTable};

/// A finite sum `Σ c_n n^{-s}` with non-negative integer counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DirichletPoly {
    terms: BTreeMap<u64, u64>,
}

impl DirichletPoly {
    pub fn new() -> Self {
        Self::default()
    }

    /// `c n^{-s}`.
    pub fn monomial(n: u64, c: u64) -> Self {
        let mut p = Self::new();
        p.add_term(n, c);
        p
    }

    pub fn from_degrees(degrees: impl IntoIterator<Item = u64>) -> Self {
        let mut p = Self::new();
        for d in degrees {
            p.add_term(d, 1);
        }
        p
    }

    pub fn add_term(&mut self, n: u64, c: u64) {
        assert!(n > 0, "degrees are positive");
        if c > 0 {
            *self.terms.entry(n).or_insert(0) += c;
        }
    }

    pub fn count(&self, n: u64) -> u64 {
        self.terms.get(&n).copied().unwrap_or(0)
    }

    /// The `(degree, count)` pairs in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms.iter().map(|(&n, &c)| (n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value at `s = 0`.
    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    /// The value at `s = -2`: `|G|` when `self` is the zeta polynomial of `G`.
    pub fn sum_of_squares(&self) -> u64 {
        self.terms().map(|(n, c)| n * n * c).sum()
    }

    pub fn add(&self, other: &DirichletPoly) -> DirichletPoly {
        let mut out = self.clone();
        for (n, c) in other.terms() {
            out.add_term(n, c);
        }
        out
    }

    /// The Dirichlet product, `(m^{-s})(n^{-s}) = (mn)^{-s}`.
    pub fn mul(&self, other: &DirichletPoly) -> DirichletPoly {
        let mut out = DirichletPoly::new();
        for (m, a) in self.terms() {
            for (n, b) in other.terms() {
                out.add_term(m * n, a * b);
            }
        }
        out
    }

    /// `d^{-s} self`.
    pub fn shift(&self, d: u64) -> DirichletPoly {
        DirichletPoly { terms: self.terms.iter().map(|(&n, &c)| (n * d, c)).collect() }
    }

    /// The coefficients of `1, p^{-s}, p^{-2s}, ...` up to the largest degree,
    /// if every degree is a power of `p`.
    pub fn p_coefficients(&self, p: u64) -> Option<Vec<u64>> {
        let mut out = Vec::new();
        for (n, c) in self.terms() {
            let mut k = 0usize;
            let mut m = n;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            if m != 1 {
                return None;
            }
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            out[k] = c;
        }
        Some(out)
    }
}

impl fmt::Display for DirichletPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(n, c)| if c == 1 { format!("{n}^-s") } else { format!("{c}*{n}^-s") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A Dirichlet polynomial with rational counts, for sums weighted by `1/|G:K|`.
#[derive(Clone, Debug, Default)]
pub(crate) struct WeightedPoly {
    terms: BTreeMap<u64, BigRational>,
}

impl WeightedPoly {
    /// Add `weight · poly`.
    pub fn add_scaled(&mut self, poly: &DirichletPoly, weight: &BigRational) {
        for (n, c) in poly.terms() {
            let e = self.terms.entry(n).or_insert_with(BigRational::zero);
            *e += weight * BigRational::from_integer(BigInt::from(c));
        }
    }

    pub fn into_integral(self) -> Result<DirichletPoly> {
        let mut out = DirichletPoly::new();
        for (n, c) in self.terms {
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integral count {c} at degree {n}")));
            }
            let c = c.to_integer().to_u64().ok_or_else(|| Error::Internal(format!("negative count at degree {n}")))?;
            out.add_term(n, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn arithmetic() {
        let a = DirichletPoly::from_degrees([1, 1, 2]);
        assert_eq!(a.to_string(), "2*1^-s + 2^-s");
        assert_eq!(a.sum_of_squares(), 6);
        let b = a.mul(&DirichletPoly::monomial(3, 1));
        assert_eq!(b, DirichletPoly::from_degrees([3, 3, 6]));
        assert_eq!(a.shift(3), b);
        assert_eq!(DirichletPoly::from_degrees([1, 3, 3, 9]).p_coefficients(3), Some(vec![1, 2, 1]));
        assert_eq!(a.p_coefficients(3), None);
    }

    #[test]
    fn weighted_sums_must_be_integral() {
        let mut w = WeightedPoly::default();
        let half = BigRational::new(1.into(), 2.into());
        w.add_scaled(&DirichletPoly::monomial(2, 1), &half);
        assert!(w.clone().into_integral().is_err());
        w.add_scaled(&DirichletPoly::monomial(2, 1), &half);
        assert_eq!(w.into_integral().unwrap(), DirichletPoly::monomial(2, 1));
    }

    fn poly() -> impl Strategy<Value = DirichletPoly> {
        proptest::collection::vec((1u64..20, 0u64..5), 0..6)
            .prop_map(|v| v.into_iter().fold(DirichletPoly::new(), |mut p, (n, c)| {
                p.add_term(n, c);
                p
            }))
    }

    proptest! {
        #[test]
        fn product_is_commutative_and_multiplicative(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b).total(), a.total() * b.total());
            prop_assert_eq!(a.mul(&b).sum_of_squares(), a.sum_of_squares() * b.sum_of_squares());
            prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
        }
    }
}
