//! Exact rational functions in `t = p^{-s}` matching a coefficient sequence,
//! with denominators that are products of factors `1 - p^i t^j`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// The search space for denominator factors `1 - p^i t^j`.
#[derive(Clone, Copy, Debug)]
pub struct FitBounds {
    pub i_min: i32,
    pub i_max: i32,
    pub j_max: u32,
    pub max_factors: usize,
}

impl Default for FitBounds {
    fn default() -> Self {
        FitBounds { i_min: -2, i_max: 3, j_max: 2, max_factors: 2 }
    }
}

/// `numerator(t) / Π (1 - p^i t^j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalFit {
    pub p: u64,
    /// Coefficients of `1, t, t^2, ...`.
    pub numerator: Vec<BigRational>,
    /// The pairs `(i, j)`.
    pub denominator: Vec<(i32, u32)>,
}

fn p_power(p: u64, i: i32) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if i >= 0 {
        num_traits::pow(base, i as usize)
    } else {
        num_traits::pow(base, (-i) as usize).recip()
    }
}

/// `a · (1 - c t^j)`, truncated to `a.len()` terms.
fn times_factor(a: &[BigRational], c: &BigRational, j: usize) -> Vec<BigRational> {
    (0..a.len()).map(|k| if k >= j { &a[k] - c * &a[k - j] } else { a[k].clone() }).collect()
}

impl RationalFit {
    /// The first `len` coefficients of the power series.
    pub fn expand(&self, len: usize) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = (0..len).map(|k| self.numerator.get(k).cloned().unwrap_or_else(BigRational::zero)).collect();
        for &(i, j) in &self.denominator {
            let c = p_power(self.p, i);
            let j = j as usize;
            for k in j..len {
                let prev = out[k - j].clone();
                out[k] += &c * prev;
            }
        }
        out
    }
}

fn factor_sets(bounds: &FitBounds, size: usize) -> Vec<Vec<(i32, u32)>> {
    let all: Vec<(i32, u32)> =
        (1..=bounds.j_max).flat_map(|j| (bounds.i_min..=bounds.i_max).map(move |i| (i, j))).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..size {
        out = out
            .into_iter()
            .flat_map(|set: Vec<(i32, u32)>| {
                let start = set.last().map(|last| all.iter().position(|f| f == last).expect("listed")).unwrap_or(0);
                all[start..].iter().map(move |&f| {
                    let mut s = set.clone();
                    s.push(f);
                    s
                })
            })
            .collect();
    }
    out
}

/// The simplest rational function whose expansion agrees with `coeffs`:
/// fewest denominator factors, then lowest numerator degree. The numerator
/// degree must leave at least one coefficient unexplained by it alone, so
/// every accepted fit is tested by at least one coefficient.
pub fn rational_fit(coeffs: &[BigInt], p: u64, bounds: FitBounds) -> Result<RationalFit> {
    if coeffs.len() < 2 {
        return Err(Error::Invalid("a fit needs at least two coefficients".into()));
    }
    let a: Vec<BigRational> = coeffs.iter().cloned().map(BigRational::from_integer).collect();
    for size in 0..=bounds.max_factors {
        let mut best: Option<RationalFit> = None;
        for set in factor_sets(&bounds, size) {
            let mut num = a.clone();
            for &(i, j) in &set {
                num = times_factor(&num, &p_power(p, i), j as usize);
            }
            let degree = num.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
            if degree + 2 > a.len() {
                continue;
            }
            num.truncate(degree + 1);
            if best.as_ref().is_none_or(|b| num.len() < b.numerator.len()) {
                best = Some(RationalFit { p, numerator: num, denominator: set });
            }
        }
        if let Some(fit) = best {
            return Ok(fit);
        }
    }
    Err(Error::Unsupported(format!(
        "no rational function with at most {} denominator factors fits {} coefficients",
        bounds.max_factors,
        coeffs.len()
    )))
}

fn term(c: &BigRational, power: &str, first: bool) -> String {
    let sign = if c.is_negative() { "-" } else { "+" };
    let mag = c.abs();
    let body = match (mag.is_one(), power.is_empty()) {
        (true, false) => power.to_string(),
        (_, true) => mag.to_string(),
        (false, false) => format!("{mag}{power}"),
    };
    match (first, sign) {
        (true, "+") => body,
        (true, _) => format!("-{body}"),
        (false, s) => format!(" {s} {body}"),
    }
}

fn t_power(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{k}"),
    }
}

impl fmt::Display for RationalFit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut num = String::new();
        for (k, c) in self.numerator.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            num += &term(c, &t_power(k), num.is_empty());
        }
        if num.is_empty() {
            num = "0".into();
        }
        if self.denominator.is_empty() {
            return write!(f, "{num}");
        }
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|&(i, j)| format!("(1{})", term(&-p_power(self.p, i), &t_power(j as usize), false)))
            .collect();
        write!(f, "({num})/{}", den.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn geometric_and_polynomial() {
        let fit = rational_fit(&ints(&[1, 3, 9, 27]), 3, FitBounds::default()).unwrap();
        assert_eq!(fit.to_string(), "(1)/(1 - 3t)");
        let fit = rational_fit(&ints(&[1, 0, 0]), 3, FitBounds::default()).unwrap();
        assert!(fit.denominator.is_empty());
        assert_eq!(fit.to_string(), "1");
        let fit = rational_fit(&ints(&[1, 2, 6]), 3, FitBounds::default()).unwrap();
        assert_eq!(fit.to_string(), "(1 - t)/(1 - 3t)");
        assert_eq!(fit.denominator, vec![(1, 1)]);
    }

    #[test]
    fn failure_is_reported() {
        assert!(rational_fit(&ints(&[1, 5, 7, 11, 13]), 2, FitBounds { max_factors: 1, ..Default::default() }).is_err());
    }

    proptest! {
        #[test]
        fn expansion_reproduces_input(c in proptest::collection::vec(0i64..50, 2..7), p in prop::sample::select(vec![2u64, 3])) {
            if let Ok(fit) = rational_fit(&ints(&c), p, FitBounds::default()) {
                let expected: Vec<BigRational> = ints(&c).into_iter().map(BigRational::from_integer).collect();
                prop_assert_eq!(fit.expand(c.len()), expected);
            }
        }
    }
}
