//! Strong extensions: a projective representation of `K` extending `θ` whose
//! factor set is constant on cosets of `N`, built from a pair `(H, χ)` with
//! `HN = K`.

use super::Cocycle2;
use crate::characters::{induced_equal, is_invariant_under_h, lin_chars, LinChar, Pair};
use crate::cyclotomic::{CycInt, Qz};
use crate::error::{Error, Result};
use crate::group::subgroups::{enumerate_hh, enumerate_subgroups};
use crate::group::{Extension, Group, SubgroupH, TopSet};
use std::sync::Arc;

/// A pair `(H, χ)` with `HN = K` together with a scale `ω` on the top of `H`.
/// The projective character `χ̂(y_i t_i m) = χ(m) + ω(i)` of `H` induces to a
/// projective character `θ̂` of `K` extending `θ = Ind_M^N χ`.
#[derive(Clone, Debug)]
pub struct StrongExt {
    pub pair: Pair,
    pub omega: Vec<Qz>,
}

impl StrongExt {
    pub fn new(pair: Pair) -> Self {
        let r = pair.h.tops.len();
        StrongExt { pair, omega: vec![Qz::ZERO; r] }
    }

    pub fn with_omega(pair: Pair, omega: Vec<Qz>) -> Result<Self> {
        if omega.len() != pair.h.tops.len() || omega.first().is_some_and(|w| !w.is_zero()) {
            return Err(Error::Invalid("scale must cover the top and vanish at the identity".into()));
        }
        Ok(StrongExt { pair, omega })
    }

    pub fn tops(&self) -> &TopSet {
        &self.pair.h.tops
    }

    /// `χ̂(y_i n)` when `y_i n ∈ H`.
    pub fn chi_hat(&self, ext: &Extension, i: usize, n: usize) -> Option<Qz> {
        let pos = self.pair.h.tops.binary_search(&i).ok()?;
        let nn = ext.normal();
        let m = nn.mul(nn.inv(self.pair.h.tails[pos]), n);
        self.pair.chi.dom.contains(m).then(|| self.pair.chi.value(m) + self.omega[pos])
    }

    /// `θ̂(y_k n)`: the sum of `χ̂(g^{-1} y_k n g)` over a transversal of `M` in `N`.
    pub fn value(&self, ext: &Extension, k: usize, n: usize) -> CycInt {
        let nn = ext.normal();
        let mut acc = CycInt::zero();
        for &g in &self.pair.chi.dom.transversal {
            let w = nn.mul(nn.mul(ext.phi_inv(k, nn.inv(g)), n), g);
            if let Some(v) = self.chi_hat(ext, k, w) {
                acc += &CycInt::root(v);
            }
        }
        acc
    }

    /// The factor set `α(a, b) = χ̂(h_a) + χ̂(h_b) - χ̂(h_a h_b)` on the top of
    /// `H`, row-major over positions in the top.
    pub fn factor_set(&self, ext: &Extension) -> Cocycle2 {
        let h = &self.pair.h;
        let nn = ext.normal();
        let r = h.tops.len();
        let mut z = vec![Qz::ZERO; r * r];
        for a in 0..r {
            for b in 0..r {
                let (i, j) = (h.tops[a], h.tops[b]);
                let c = ext.gamma(i, j);
                let pc = h.tops.binary_search(&c).expect("top is closed");
                let (ti, tj, tc) = (h.tails[a], h.tails[b], h.tails[pc]);
                let d = nn.mul(nn.mul(nn.mul(nn.inv(tc), ext.tail(i, j)), ext.phi_inv(j, ti)), tj);
                z[a * r + b] = self.omega[a] + self.omega[b] - self.omega[pc] - self.pair.chi.value(d);
            }
        }
        Cocycle2 { tops: h.tops.clone(), z }
    }
}

/// The factor set of the strong extension of `pair` with zero scale.
pub fn factor_set(ext: &Extension, pair: &Pair) -> Cocycle2 {
    StrongExt::new(pair.clone()).factor_set(ext)
}

/// A pair `(H, χ')` with `HN` the preimage of `tops` and `Ind χ' = θ`.
///
/// For linear `θ` this is `H = ⟨y_i : i ∈ tops⟩ N`. Otherwise subgroups `M'`
/// of `N` of index `θ(1)` are tried, starting with the domain of `θ`, together
/// with their degree-one characters inducing `θ` and the complements `H` over
/// them that fix the character.
pub fn pair_on(ext: &Extension, theta: &Pair, tops: &[usize]) -> Result<Pair> {
    let nn = ext.normal();
    if theta.is_linear() {
        let h = SubgroupH { tops: tops.to_vec(), m: theta.chi.dom.clone(), tails: vec![0; tops.len()] };
        if !is_invariant_under_h(ext, &theta.chi, &h) {
            return Err(Error::Invalid("character is not fixed by the given subgroup".into()));
        }
        return Ok(Pair { h, chi: theta.chi.clone() });
    }
    if let Some(found) = pair_over(ext, theta, tops, &theta.chi.dom) {
        return Ok(found);
    }
    let deg = theta.degree() as usize;
    for m in enumerate_subgroups(nn, deg, None) {
        if m.index() != deg || m.bits == theta.chi.dom.bits {
            continue;
        }
        if let Some(found) = pair_over(ext, theta, tops, &Arc::new(m)) {
            return Ok(found);
        }
    }
    Err(Error::Unsupported(format!(
        "no subgroup H with HN of order {} carries an invariant character inducing θ",
        tops.len() * nn.order()
    )))
}

fn pair_over(ext: &Extension, theta: &Pair, tops: &[usize], m: &Arc<crate::group::Subgroup>) -> Option<Pair> {
    let nn = ext.normal();
    let chars: Vec<LinChar> = lin_chars(nn, m).into_iter().filter(|c| induced_equal(nn, c, &theta.chi)).collect();
    if chars.is_empty() {
        return None;
    }
    for h in enumerate_hh(ext, tops, std::slice::from_ref(m)) {
        if let Some(chi) = chars.iter().find(|c| is_invariant_under_h(ext, c, &h)) {
            return Some(Pair { h, chi: chi.clone() });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{irr_of_n, stabilizer_k};
    use crate::cohomology::{class_eq, is_cocycle2, is_coboundary2};
    use crate::exec::Exec;
    use crate::group::ambient::Heisenberg;

    /// `H(3)` over its centre.
    fn heisenberg_over_centre() -> Extension {
        let g = Heisenberg::new(3, 1);
        let z = crate::group::center(&g, &crate::group::whole(&g));
        Extension::from_ambient(&g, &z).unwrap().0
    }

    #[test]
    fn faithful_central_character_does_not_extend() {
        let ext = heisenberg_over_centre();
        let irr = irr_of_n(ext.normal(), Exec::Sequential);
        let all: Vec<usize> = (0..ext.index()).collect();
        let mut nontrivial = 0;
        for theta in &irr {
            assert_eq!(stabilizer_k(&ext, &theta.chi), all);
            let pair = pair_on(&ext, theta, &all).unwrap();
            let alpha = factor_set(&ext, &pair);
            let q = ext.top_table(&all);
            assert!(is_cocycle2(&q, &alpha.z));
            if !is_coboundary2(&q, &alpha.z) {
                nontrivial += 1;
                let conj = factor_set(&ext, &Pair { h: pair.h.clone(), chi: pair.chi.conj() });
                assert!(class_eq(&ext, &conj, &alpha.neg()).unwrap());
                assert!(!class_eq(&ext, &conj, &alpha).unwrap());
            }
        }
        assert_eq!(nontrivial, 2);
    }

    #[test]
    fn strong_extension_restricts_to_theta() {
        let ext = heisenberg_over_centre();
        let irr = irr_of_n(ext.normal(), Exec::Sequential);
        let all: Vec<usize> = (0..ext.index()).collect();
        for theta in &irr {
            let se = StrongExt::new(pair_on(&ext, theta, &all).unwrap());
            for n in 0..ext.normal().order() {
                assert_eq!(se.value(&ext, 0, n), crate::characters::induced_value(ext.normal(), &theta.chi, n));
            }
        }
    }

    #[test]
    fn nonlinear_theta_over_trivial_top() {
        let g = Heisenberg::new(3, 1);
        let ext = Extension::from_ambient(&g, &crate::group::whole(&g)).unwrap().0;
        let irr = irr_of_n(ext.normal(), Exec::Sequential);
        let theta = irr.iter().find(|t| t.degree() == 3).unwrap();
        let pair = pair_on(&ext, theta, &[0]).unwrap();
        assert_eq!(pair.degree(), 3);
    }
}
