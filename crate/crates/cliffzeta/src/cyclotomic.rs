//! Roots of unity as elements of Q/Z and exact cyclotomic integers.
//!
//! A root of unity `exp(2 pi i a/n)` is stored additively as the fraction
//! `a/n` reduced modulo one ([`Qz`]). Sums of roots of unity live in
//! `Z[zeta_n]` and are stored reduced modulo the cyclotomic polynomial
//! `Phi_n` ([`CycInt`]), which makes the zero test exact.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// An element of Q/Z, i.e. the exponent of a root of unity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Qz {
    num: u64,
    den: u64,
}

impl Default for Qz {
    fn default() -> Self {
        Qz::ZERO
    }
}

impl Qz {
    pub const ZERO: Qz = Qz { num: 0, den: 1 };

    pub fn new(a: i64, n: u64) -> Qz {
        Qz::from_i128(a as i128, n)
    }

    pub fn from_i128(a: i128, n: u64) -> Qz {
        assert!(n > 0, "denominator must be positive");
        let r = a.rem_euclid(n as i128) as u64;
        let g = r.gcd(&n);
        Qz { num: r / g, den: n / g }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// Multiplicative order of the corresponding root of unity.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn pow(self, k: i64) -> Qz {
        Qz::from_i128(self.num as i128 * k as i128, self.den)
    }

    /// Numerator over the common denominator `m`; `None` if `den` does not divide `m`.
    pub fn over(self, m: u64) -> Option<u64> {
        if m.is_multiple_of(self.den) {
            Some(self.num * (m / self.den))
        } else {
            None
        }
    }

    /// The component of `self` whose order is a power of `p`.
    pub fn p_part(self, p: u64) -> Qz {
        let mut pa = 1u64;
        let mut rest = self.den;
        while rest.is_multiple_of(p) {
            rest /= p;
            pa *= p;
        }
        if pa == 1 {
            return Qz::ZERO;
        }
        // a/(pa*rest) = x/pa + y/rest with x = a * rest^{-1} mod pa.
        let inv = mod_inverse(rest % pa, pa).expect("coprime");
        Qz::from_i128(self.num as i128 * inv as i128, pa)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Debug for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Qz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Add for Qz {
    type Output = Qz;
    fn add(self, o: Qz) -> Qz {
        let l = self.den.lcm(&o.den);
        Qz::from_i128(
            self.num as i128 * (l / self.den) as i128 + o.num as i128 * (l / o.den) as i128,
            l,
        )
    }
}

impl AddAssign for Qz {
    fn add_assign(&mut self, o: Qz) {
        *self = *self + o;
    }
}

impl Neg for Qz {
    type Output = Qz;
    fn neg(self) -> Qz {
        Qz::from_i128(-(self.num as i128), self.den)
    }
}

impl Sub for Qz {
    type Output = Qz;
    fn sub(self, o: Qz) -> Qz {
        self + (-o)
    }
}

impl std::iter::Sum for Qz {
    fn sum<I: Iterator<Item = Qz>>(iter: I) -> Qz {
        iter.fold(Qz::ZERO, |a, b| a + b)
    }
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d);
            num = exact_div(&num, &phi_d);
        }
    }
    let poly = Arc::new(num);
    cyclotomic_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![0i64; num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for j in 0..=dn {
                rem[i + j] -= c * den[j];
            }
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn euler_phi(n: u64) -> usize {
    let mut r = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r as usize
}

/// An element of `Z[zeta_n]` in canonical form: the remainder modulo `Phi_n`.
#[derive(Clone)]
pub struct CycInt {
    n: u64,
    c: Vec<i64>,
}

impl CycInt {
    pub fn zero() -> CycInt {
        CycInt { n: 1, c: vec![0] }
    }

    pub fn from_int(k: i64) -> CycInt {
        CycInt { n: 1, c: vec![k] }
    }

    /// The root of unity `exp(2 pi i q)`.
    pub fn root(q: Qz) -> CycInt {
        let n = q.den();
        let mut poly = vec![0i64; n as usize];
        poly[q.num() as usize] = 1;
        CycInt::reduce(n, poly)
    }

    /// `sum_k coeffs[k] zeta_n^k` for arbitrary `k`, reduced.
    pub fn from_coeffs(n: u64, coeffs: &[i64]) -> CycInt {
        let mut poly = vec![0i64; n as usize];
        for (k, &c) in coeffs.iter().enumerate() {
            poly[k % n as usize] += c;
        }
        CycInt::reduce(n, poly)
    }

    fn reduce(n: u64, mut poly: Vec<i64>) -> CycInt {
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        let mut i = poly.len();
        while i > d {
            i -= 1;
            let c = poly[i];
            if c != 0 {
                for j in 0..=d {
                    poly[i - d + j] -= c * phi[j];
                }
            }
        }
        poly.resize(d.max(1), 0);
        poly.truncate(d.max(1));
        CycInt { n, c: poly }
    }

    pub fn level(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    /// Re-express in `Z[zeta_m]` for a multiple `m` of the current level.
    pub fn embed(&self, m: u64) -> CycInt {
        if m == self.n {
            return self.clone();
        }
        assert!(m.is_multiple_of(self.n), "level {} does not divide {}", self.n, m);
        let s = (m / self.n) as usize;
        let mut poly = vec![0i64; (self.c.len() - 1) * s + 1];
        for (k, &c) in self.c.iter().enumerate() {
            poly[k * s] = c;
        }
        CycInt::reduce(m, poly)
    }

    fn lift_pair(&self, o: &CycInt) -> (CycInt, CycInt) {
        let l = self.n.lcm(&o.n);
        (self.embed(l), o.embed(l))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CycInt {
        let n = self.n as usize;
        let mut poly = vec![0i64; n];
        for (k, &c) in self.c.iter().enumerate() {
            poly[(n - k % n) % n] += c;
        }
        CycInt::reduce(self.n, poly)
    }

    pub fn mul_root(&self, q: Qz) -> CycInt {
        self * &CycInt::root(q)
    }

    pub fn scale(&self, k: i64) -> CycInt {
        CycInt { n: self.n, c: self.c.iter().map(|&x| x * k).collect() }
    }

    /// Numerical value under `zeta_n -> exp(2 pi i / n)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, &c) in self.c.iter().enumerate() {
            let a = 2.0 * std::f64::consts::PI * k as f64 / self.n as f64;
            re += c as f64 * a.cos();
            im += c as f64 * a.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycInt {
    fn eq(&self, o: &CycInt) -> bool {
        let (a, b) = self.lift_pair(o);
        a.c == b.c
    }
}

impl Eq for CycInt {}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(k) = self.as_integer() {
            return write!(f, "{k}");
        }
        let terms: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, c)| format!("{c}*z{}^{k}", self.n))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, o: &CycInt) -> CycInt {
        let (a, b) = self.lift_pair(o);
        CycInt { n: a.n, c: a.c.iter().zip(&b.c).map(|(x, y)| x + y).collect() }
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, o: &CycInt) {
        *self = &*self + o;
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        self.scale(-1)
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, o: &CycInt) -> CycInt {
        self + &(-o)
    }
}

impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, o: &CycInt) -> CycInt {
        let (a, b) = self.lift_pair(o);
        let mut poly = vec![0i64; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        CycInt::reduce(a.n, poly)
    }
}

/// `(1/|G|) sum_x w(x) f(x) conj(g(x))` as an exact rational.
///
/// `weights` carries class sizes when `f` and `g` are given on class
/// representatives; `None` means one entry per group element.
pub fn inner_product(
    f: &[CycInt],
    g: &[CycInt],
    weights: Option<&[u64]>,
    order: u64,
) -> Result<BigRational> {
    if f.len() != g.len() {
        return Err(Error::Invalid("class functions of different length".into()));
    }
    let mut acc = CycInt::zero();
    for (k, (a, b)) in f.iter().zip(g).enumerate() {
        let w = weights.map_or(1, |w| w[k]) as i64;
        acc += &(a * &b.conj()).scale(w);
    }
    let s = acc
        .as_integer()
        .ok_or_else(|| Error::Invalid("inner product is not rational".into()))?;
    Ok(BigRational::new(BigInt::from(s), BigInt::from(order)))
}

/// Euler's totient, exposed for tests and oracles.
pub fn totient(n: u64) -> usize {
    euler_phi(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_group_law() {
        assert_eq!(Qz::new(1, 3) + Qz::new(1, 3), Qz::new(2, 3));
        assert_eq!(Qz::new(1, 2) + Qz::new(1, 2), Qz::ZERO);
        assert_eq!(Qz::new(1, 9).pow(3), Qz::new(1, 3));
        assert_eq!(-Qz::new(1, 4), Qz::new(3, 4));
        assert_eq!(Qz::new(6, 9), Qz::new(2, 3));
    }

    #[test]
    fn p_part_splits_mixed_order() {
        let q = Qz::new(1, 6);
        assert_eq!(q.p_part(2) + q.p_part(3), q);
        assert_eq!(q.p_part(2).den(), 2);
        assert_eq!(q.p_part(3).den(), 3);
        assert_eq!(Qz::new(1, 9).p_part(2), Qz::ZERO);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(12).len() - 1, totient(12));
    }

    #[test]
    fn vanishing_sums() {
        let s = &(&CycInt::root(Qz::ZERO) + &CycInt::root(Qz::new(1, 3))) + &CycInt::root(Qz::new(2, 3));
        assert!(s.is_zero());
        let i = CycInt::root(Qz::new(1, 4));
        assert_eq!(&i * &i, CycInt::from_int(-1));
        let t = CycInt::from_coeffs(9, &[1, 1, 0, 1]);
        assert!(!t.is_zero());
    }

    #[test]
    fn mixed_levels_compare() {
        let a = CycInt::root(Qz::new(1, 2));
        assert_eq!(a, CycInt::from_int(-1));
        let w = CycInt::root(Qz::new(1, 6));
        let w2 = &w * &w;
        assert_eq!(w2, CycInt::root(Qz::new(1, 3)));
        assert_eq!(w.conj(), CycInt::root(Qz::new(5, 6)));
    }

    #[test]
    fn inner_products() {
        let one = vec![CycInt::from_int(1); 4];
        assert_eq!(inner_product(&one, &one, None, 4).unwrap(), BigRational::from_integer(1.into()));
        let reg = vec![CycInt::from_int(2), CycInt::from_int(0)];
        let triv = vec![CycInt::from_int(1), CycInt::from_int(1)];
        assert_eq!(inner_product(&reg, &triv, None, 2).unwrap(), BigRational::from_integer(1.into()));
        // Induced from a faithful character of C_3 to S_3, on classes {1}, {3-cycles}, {transpositions}.
        let w = CycInt::root(Qz::new(1, 3));
        let chi = vec![CycInt::from_int(2), &w + &w.conj(), CycInt::zero()];
        let ip = inner_product(&chi, &chi, Some(&[1, 2, 3]), 6).unwrap();
        assert_eq!(ip, BigRational::from_integer(1.into()));
    }
}
