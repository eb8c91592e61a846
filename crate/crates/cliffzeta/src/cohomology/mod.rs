//! Two-cocycles on subgroups of `Q = G/N` with values in Q/Z, the classes
//! `C_K(θ)` of strong extensions, the groups `Γ_{K,θ̃}` and the one-cocycle
//! invariant `T_{L,K,Γ}(θ̃)`.
//!
//! Every class is carried by a representative; equality of classes is always
//! decided by solving a linear system over `Z/M`.

pub mod strong;
pub mod sylow;
pub mod twist;

use crate::cyclotomic::Qz;
use crate::error::{Error, Result};
use crate::group::{Extension, Group, TopSet};
use crate::linalg;
use num_integer::Integer;

pub use strong::{factor_set, pair_on, StrongExt};
pub use sylow::{sylow_reduction_checks, SylowReport};
pub use twist::{
    class_eq1, conj_chi_hat, gamma_by_predicate, gamma_full, gamma_of, in_conjugate_direct, is_cocycle1,
    lin_of_quotient, mu_by_predicate_agrees, mu_matrix, predicate_a, predicate_b, predicate_c, t_invariant,
    Cocycle1, Gamma,
};

/// Largest `|Q|` for which [`h2_classes`] enumerates the Schur multiplier.
pub const MAX_H2_ORDER: usize = 16;

/// A 2-cocycle on the subgroup `tops` of `Q`: `z[a r + b]` is the value on
/// `(y_{tops[a]} N, y_{tops[b]} N)`, with `r = |tops|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle2 {
    pub tops: TopSet,
    pub z: Vec<Qz>,
}

impl Cocycle2 {
    pub fn zero(tops: TopSet) -> Self {
        let r = tops.len();
        Cocycle2 { tops, z: vec![Qz::ZERO; r * r] }
    }

    pub fn neg(&self) -> Cocycle2 {
        Cocycle2 { tops: self.tops.clone(), z: self.z.iter().map(|&a| -a).collect() }
    }

    pub fn sub(&self, other: &Cocycle2) -> Result<Cocycle2> {
        if self.tops != other.tops {
            return Err(Error::Invalid("cocycles on different groups".into()));
        }
        Ok(Cocycle2 { tops: self.tops.clone(), z: self.z.iter().zip(&other.z).map(|(&a, &b)| a - b).collect() })
    }

    /// `k c`.
    pub fn scale(&self, k: i64) -> Cocycle2 {
        Cocycle2 { tops: self.tops.clone(), z: self.z.iter().map(|&a| a.pow(k)).collect() }
    }

    /// The restriction to the subgroup `sub` of `tops`.
    pub fn restrict(&self, sub: &[usize]) -> Result<Cocycle2> {
        let pos: Vec<usize> = sub
            .iter()
            .map(|i| self.tops.binary_search(i).map_err(|_| Error::Invalid("restriction to a non-subgroup".into())))
            .collect::<Result<_>>()?;
        let r = self.tops.len();
        let z = pos.iter().flat_map(|&a| pos.iter().map(move |&b| (a, b))).map(|(a, b)| self.z[a * r + b]).collect();
        Ok(Cocycle2 { tops: sub.to_vec(), z })
    }

    /// The `q`-primary component `c_(q) = (m u) c`, where `|tops| = q^a m`
    /// and `u m ≡ 1 (mod q^a)`.
    pub fn primary_component(&self, q: u64) -> Cocycle2 {
        let order = self.tops.len() as u64;
        let qa = crate::group::q_part(order, q);
        let m = order / qa;
        let u = crate::cyclotomic::mod_inverse(m % qa, qa).unwrap_or(0);
        self.scale(((m * u) % order) as i64)
    }
}

/// Whether `z` (row-major over the elements of `q`) satisfies
/// `z(xy, w) + z(x, y) = z(x, yw) + z(y, w)`.
pub fn is_cocycle2<G: Group + ?Sized>(q: &G, z: &[Qz]) -> bool {
    let n = q.order();
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|w| z[q.mul(x, y) * n + w] + z[x * n + y] == z[x * n + q.mul(y, w)] + z[y * n + w]))
    })
}

fn exponent<G: Group + ?Sized>(q: &G) -> u64 {
    (0..q.order()).map(|x| q.elem_order(x)).fold(1, |a, b| a.lcm(&b))
}

/// A 1-cochain `b` with `b(x) + b(y) - b(xy) = z(x, y)`, if `z` is a coboundary.
///
/// If such a `b` exists with values in Q/Z, one exists with denominators
/// dividing `lcm(den z, exp Q) |Q|`, so the system is solved over that modulus.
pub fn coboundary_preimage2<G: Group + ?Sized>(q: &G, z: &[Qz]) -> Option<Vec<Qz>> {
    let n = q.order();
    let den = z.iter().map(|a| a.den()).fold(1u64, |a, b| a.lcm(&b));
    let modulus = den.lcm(&exponent(q)) * n as u64;
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let mut row = vec![0i64; n];
            row[x] += 1;
            row[y] += 1;
            row[q.mul(x, y)] -= 1;
            rows.push(row);
            rhs.push(z[x * n + y].over(modulus)? as i64);
        }
    }
    let sol = linalg::solve(&rows, &rhs, n, modulus)?;
    Some(sol.into_iter().map(|v| Qz::new(v as i64, modulus)).collect())
}

pub fn is_coboundary2<G: Group + ?Sized>(q: &G, z: &[Qz]) -> bool {
    coboundary_preimage2(q, z).is_some()
}

/// The coboundary `δb(x, y) = b(x) + b(y) - b(xy)`.
pub fn coboundary_of<G: Group + ?Sized>(q: &G, b: &[Qz]) -> Vec<Qz> {
    let n = q.order();
    (0..n * n).map(|k| b[k / n] + b[k % n] - b[q.mul(k / n, k % n)]).collect()
}

/// Whether two cocycles on the same subgroup of `Q` define the same class.
pub fn class_eq(ext: &Extension, a: &Cocycle2, b: &Cocycle2) -> Result<bool> {
    let diff = a.sub(b)?;
    Ok(is_coboundary2(&ext.top_table(&a.tops), &diff.z))
}

/// Representatives of the distinct classes of `H^2(q, Q/Z)`.
///
/// Every class has a representative of order dividing `|q|`, so the cocycles
/// with values in `(1/|q|)Z/Z` are computed as a kernel over `Z/|q|` and their
/// generators are folded into a growing list of class representatives.
pub fn h2_classes<G: Group + ?Sized>(q: &G) -> Result<Vec<Vec<Qz>>> {
    let n = q.order();
    if n > MAX_H2_ORDER {
        return Err(Error::Resource(format!("Schur multiplier enumeration limited to |Q| <= {MAX_H2_ORDER}")));
    }
    let modulus = n as u64;
    let mut rows = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                let mut row = vec![0i64; n * n];
                row[q.mul(x, y) * n + w] += 1;
                row[x * n + y] += 1;
                row[x * n + q.mul(y, w)] -= 1;
                row[y * n + w] -= 1;
                rows.push(row);
            }
        }
    }
    let gens = linalg::kernel(&rows, n * n, modulus);
    let to_qz = |v: &[u64]| v.iter().map(|&a| Qz::new(a as i64, modulus)).collect::<Vec<_>>();
    let mut classes: Vec<Vec<Qz>> = vec![vec![Qz::ZERO; n * n]];
    let same = |a: &[Qz], b: &[Qz]| {
        let d: Vec<Qz> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
        is_coboundary2(q, &d)
    };
    for g in gens {
        let g = to_qz(&g);
        if classes.iter().any(|c| same(c, &g)) {
            continue;
        }
        let mut multiples = vec![g.clone()];
        loop {
            let last = multiples.last().expect("non-empty");
            let next: Vec<Qz> = last.iter().zip(&g).map(|(&a, &b)| a + b).collect();
            if classes.iter().any(|c| same(c, &next)) {
                break;
            }
            multiples.push(next);
        }
        let mut grown = classes.clone();
        for m in &multiples {
            for c in &classes {
                grown.push(c.iter().zip(m).map(|(&a, &b)| a + b).collect());
            }
        }
        classes = grown;
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ambient;
    use proptest::prelude::*;

    fn klein() -> crate::group::TableGroup {
        ambient::direct_product(&ambient::cyclic(2), &ambient::cyclic(2))
    }

    fn klein_nontrivial() -> Vec<Qz> {
        (0..16).map(|k| Qz::new((((k / 4) / 2) * ((k % 4) % 2)) as i64, 2)).collect()
    }

    #[test]
    fn klein_four_class() {
        let v4 = klein();
        let z = klein_nontrivial();
        assert!(is_cocycle2(&v4, &z));
        assert!(!is_coboundary2(&v4, &z));
        assert!(is_coboundary2(&v4, &vec![Qz::ZERO; 16]));
    }

    #[test]
    fn schur_multipliers() {
        assert_eq!(h2_classes(&ambient::cyclic(2)).unwrap().len(), 1);
        assert_eq!(h2_classes(&ambient::cyclic(3)).unwrap().len(), 1);
        assert_eq!(h2_classes(&ambient::cyclic(4)).unwrap().len(), 1);
        assert_eq!(h2_classes(&klein()).unwrap().len(), 2);
        let c3sq = ambient::direct_product(&ambient::cyclic(3), &ambient::cyclic(3));
        assert_eq!(h2_classes(&c3sq).unwrap().len(), 3);
        let q8 = ambient::dicyclic(2);
        assert_eq!(h2_classes(&q8).unwrap().len(), 1);
        assert!(h2_classes(&ambient::cyclic(17)).is_err());
    }

    #[test]
    fn primary_component_of_trivial_class() {
        let c = Cocycle2::zero(vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(c.primary_component(2), c);
    }

    proptest! {
        #[test]
        fn coboundaries_are_detected(b in proptest::collection::vec(0i64..8, 4)) {
            let v4 = klein();
            let b: Vec<Qz> = b.into_iter().map(|v| Qz::new(v, 8)).collect();
            let z = coboundary_of(&v4, &b);
            prop_assert!(is_cocycle2(&v4, &z));
            prop_assert!(is_coboundary2(&v4, &z));
            let shifted: Vec<Qz> = z.iter().zip(klein_nontrivial()).map(|(&a, c)| a + c).collect();
            prop_assert!(!is_coboundary2(&v4, &shifted));
        }
    }
}
