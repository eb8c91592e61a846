//! Degree-one characters of subgroups and the pairs `(H, χ)` that stand for
//! irreducible characters of `N` by induction.
//!
//! Characters take values in `Q/Z` (a value `a/n` stands for `e^{2πi a/n}`).

pub mod global;
pub mod induce;
pub mod irr;
pub mod proj;

use crate::bits::Bits;
use crate::cyclotomic::Qz;
use crate::group::{derived_subgroup, small_generating_set, Extension, Group, PcGroup, Subgroup, SubgroupH};
use std::sync::Arc;

pub use global::{lin_g, stabilizer_k, stabilizer_l, GlobalLinChar, LinG};
pub use induce::{induced_equal, induced_twist_equal, induced_value, induces_irreducibly};
pub use irr::{irr_of_n, twist_classes, TwistClass};
pub use proj::{irr_by_induction, irr_over, proj_irr, ClassFunction, ProjChar};

/// All degree-one characters of the subgroup `sub` of `g`, as value tables
/// indexed by the elements of `g` (zero outside `sub`). The trivial character
/// comes first.
pub fn lin_chars_of<G: Group + ?Sized>(g: &G, sub: &Bits) -> Vec<Vec<Qz>> {
    let n = g.order();
    let derived = derived_subgroup(g, sub).to_vec();
    let mut rep = vec![u32::MAX; n];
    for x in sub.iter() {
        if rep[x] != u32::MAX {
            continue;
        }
        for &d in &derived {
            rep[g.mul(x, d)] = x as u32;
        }
    }
    let r = |x: usize| rep[x] as usize;
    let mut span: Vec<usize> = vec![0];
    let mut in_span = Bits::from_iter(n, [0]);
    let mut chars: Vec<Vec<Qz>> = vec![vec![Qz::ZERO; n]];
    for h in small_generating_set(g, sub) {
        let hr = r(h);
        let mut e = 1u64;
        let mut power = hr;
        while !in_span.contains(power) {
            power = r(g.mul(power, hr));
            e += 1;
        }
        if e == 1 {
            continue;
        }
        let mut steps: Vec<(usize, u64, usize)> = Vec::new();
        let mut hc = 0;
        for c in 0..e {
            for &y in &span {
                steps.push((r(g.mul(hc, y)), c, y));
            }
            hc = r(g.mul(hc, hr));
        }
        let mut next = Vec::with_capacity(chars.len() * e as usize);
        for chi in &chars {
            let base = chi[power];
            for t in 0..e {
                let v = Qz::from_i128(base.num() as i128 + t as i128 * base.den() as i128, base.den() * e);
                let mut table = chi.clone();
                for &(x, c, y) in &steps {
                    let mut val = chi[y];
                    for _ in 0..c {
                        val += v;
                    }
                    table[x] = val;
                }
                next.push(table);
            }
        }
        chars = next;
        span = steps.iter().map(|s| s.0).collect();
        for &x in &span {
            in_span.insert(x);
        }
    }
    chars
        .into_iter()
        .map(|table| {
            let mut out = vec![Qz::ZERO; n];
            for x in sub.iter() {
                out[x] = table[r(x)];
            }
            out
        })
        .collect()
}

/// A degree-one character of a subgroup `M` of `N`: its values on the good
/// basis of `M`, with a value table over `N` (zero outside `M`) for evaluation.
#[derive(Clone, Debug)]
pub struct LinChar {
    pub dom: Arc<Subgroup>,
    pub xi: Vec<Qz>,
    table: Arc<Vec<Qz>>,
}

impl PartialEq for LinChar {
    fn eq(&self, other: &Self) -> bool {
        self.dom.bits == other.dom.bits && self.table == other.table
    }
}

impl Eq for LinChar {}

impl LinChar {
    pub fn from_table(dom: Arc<Subgroup>, table: Vec<Qz>) -> Self {
        let xi = dom.basis.iter().map(|&b| table[b]).collect();
        LinChar { dom, xi, table: Arc::new(table) }
    }

    pub fn trivial(dom: Arc<Subgroup>, n_order: usize) -> Self {
        LinChar::from_table(dom, vec![Qz::ZERO; n_order])
    }

    #[inline]
    pub fn value(&self, x: usize) -> Qz {
        self.table[x]
    }

    pub fn table(&self) -> &[Qz] {
        &self.table
    }

    /// `χ τ|_M` for a degree-one character `τ` of `N` given by its table.
    pub fn twist(&self, tau: &[Qz]) -> LinChar {
        let table = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &v)| if self.dom.contains(x) { v + tau[x] } else { v })
            .collect();
        LinChar::from_table(self.dom.clone(), table)
    }

    /// The complex conjugate character.
    pub fn conj(&self) -> LinChar {
        LinChar::from_table(self.dom.clone(), self.table.iter().map(|&v| -v).collect())
    }

    /// The values on the elements of `M`, in increasing order.
    pub fn key(&self) -> Vec<Qz> {
        self.dom.bits.iter().map(|x| self.table[x]).collect()
    }
}

/// All degree-one characters of the subgroup `m` of `N`.
pub fn lin_chars(n: &PcGroup, m: &Arc<Subgroup>) -> Vec<LinChar> {
    lin_chars_of(n, &m.bits)
        .into_iter()
        .map(|t| LinChar::from_table(m.clone(), t))
        .collect()
}

/// Whether `χ(h m h^{-1}) = χ(m)` for all `m ∈ M` and all `h ∈ H`, where `H`
/// acts through `y_i t_i`.
pub fn is_invariant_under_h(ext: &Extension, chi: &LinChar, h: &SubgroupH) -> bool {
    let n = ext.normal();
    h.tops.iter().zip(&h.tails).all(|(&i, &t)| {
        chi.dom.bits.iter().all(|x| {
            let z = ext.phi(i, n.conj(t, x));
            chi.dom.contains(z) && chi.value(z) == chi.value(x)
        })
    })
}

/// Whether a character of `N` is fixed by conjugation by every `y_i`, `i ∈ tops`.
pub fn is_invariant_under_tops(ext: &Extension, chi: &LinChar, tops: &[usize]) -> bool {
    let n = ext.normal();
    tops.iter().all(|&i| {
        (0..n.rank()).all(|k| {
            let x = n.generator(k);
            let z = ext.phi(i, x);
            chi.dom.contains(x) && chi.value(z) == chi.value(x)
        })
    })
}

/// Whether `χ` on `M ≤ N` is fixed by conjugation by the elements `elems` of `N`.
pub fn is_invariant_under_elems(n: &PcGroup, chi: &LinChar, elems: &[usize]) -> bool {
    elems.iter().all(|&g| {
        chi.dom.bits.iter().all(|x| {
            let z = n.conj(g, x);
            chi.dom.contains(z) && chi.value(z) == chi.value(x)
        })
    })
}

/// A subgroup `H` of `G` with a degree-one `H`-invariant character of `N ∩ H`.
/// It stands for the character `θ = Ind_{N∩H}^N χ` of `N`.
#[derive(Clone, Debug)]
pub struct Pair {
    pub h: SubgroupH,
    pub chi: LinChar,
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.h.tops == other.h.tops && self.h.tails == other.h.tails && self.chi == other.chi
    }
}

impl Pair {
    /// The pair `(N ∩ H, χ)` seen inside `N` alone.
    pub fn in_n(chi: LinChar) -> Self {
        Pair { h: SubgroupH::inside_n(chi.dom.clone()), chi }
    }

    pub fn m(&self) -> &Arc<Subgroup> {
        &self.chi.dom
    }

    /// `θ(1) = |N : N ∩ H|`.
    pub fn degree(&self) -> u64 {
        self.chi.dom.index() as u64
    }

    pub fn is_linear(&self) -> bool {
        self.chi.dom.index() == 1
    }

    /// The restriction of the pair to `N`.
    pub fn base(&self) -> Pair {
        Pair::in_n(self.chi.clone())
    }

    /// Canonical order: degree, then the subgroup, then the character values.
    pub fn sort_key(&self) -> (u64, Bits, Vec<Qz>) {
        (self.degree(), self.chi.dom.bits.clone(), self.chi.key())
    }
}

/// `f` with `p^f = θ(1) = |N : N ∩ H|`.
pub fn degree_exponent(n: &PcGroup, pair: &Pair) -> u32 {
    let mut idx = pair.degree();
    let mut f = 0;
    while idx > 1 {
        idx /= n.p() as u64;
        f += 1;
    }
    f
}

/// The conjugate `^{y_i}(M, χ) = (φ_i(M), χ ∘ φ_i^{-1})` of a pair in `N`.
pub fn conj_by_transversal(ext: &Extension, chi: &LinChar, i: usize) -> LinChar {
    let n = ext.normal();
    if i == 0 {
        return chi.clone();
    }
    let bits = Bits::from_iter(n.order(), chi.dom.bits.iter().map(|x| ext.phi(i, x)));
    let dom = Arc::new(Subgroup::new(n, bits));
    let mut table = vec![Qz::ZERO; n.order()];
    for x in chi.dom.bits.iter() {
        table[ext.phi(i, x)] = chi.value(x);
    }
    LinChar::from_table(dom, table)
}

/// The conjugate of a pair in `N` by an element `g` of `N`.
pub fn conj_by_elem(n: &PcGroup, chi: &LinChar, g: usize) -> LinChar {
    let bits = Bits::from_iter(n.order(), chi.dom.bits.iter().map(|x| n.conj(g, x)));
    let dom = Arc::new(Subgroup::new(n, bits));
    let mut table = vec![Qz::ZERO; n.order()];
    for x in chi.dom.bits.iter() {
        table[n.conj(g, x)] = chi.value(x);
    }
    LinChar::from_table(dom, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{ambient, whole};

    fn heisenberg3() -> PcGroup {
        let comm = vec![vec![], vec![vec![0, 0, 2]], vec![vec![0; 3], vec![0; 3]]];
        PcGroup::new(3, 3, vec![vec![0; 3]; 3], comm).unwrap()
    }

    fn is_hom<G: Group>(g: &G, sub: &Bits, t: &[Qz]) -> bool {
        sub.iter().all(|a| sub.iter().all(|b| t[g.mul(a, b)] == t[a] + t[b]))
    }

    #[test]
    fn counts_match_abelianisation() {
        let h = heisenberg3();
        let all = whole(&h);
        let chars = lin_chars_of(&h, &all);
        assert_eq!(chars.len(), 9);
        assert!(chars.iter().all(|t| is_hom(&h, &all, t)));
        let c9 = PcGroup::cyclic(3, 2).unwrap();
        assert_eq!(lin_chars_of(&c9, &whole(&c9)).len(), 9);
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        let chars = lin_chars_of(&s3, &whole(&s3));
        assert_eq!(chars.len(), 2);
        assert!(chars.iter().all(|t| is_hom(&s3, &whole(&s3), t)));
        let trivial = Bits::from_iter(27, [0]);
        assert_eq!(lin_chars_of(&h, &trivial).len(), 1);
    }

    #[test]
    fn characters_are_distinct() {
        let q8 = ambient::dicyclic(2);
        let chars = lin_chars_of(&q8, &whole(&q8));
        assert_eq!(chars.len(), 4);
        for (i, a) in chars.iter().enumerate() {
            for b in &chars[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn central_character_is_invariant() {
        let h = heisenberg3();
        let z = Arc::new(Subgroup::new(&h, crate::group::center(&h, &whole(&h))));
        let all: Vec<usize> = (0..27).collect();
        for chi in lin_chars(&h, &z) {
            assert!(is_invariant_under_elems(&h, &chi, &all));
        }
    }

    #[test]
    fn degree_exponent_of_cyclic_subgroup() {
        let c9 = PcGroup::cyclic(3, 2).unwrap();
        let sub = Arc::new(Subgroup::new(&c9, crate::group::closure(&c9, &[c9.generator(1)])));
        let chi = LinChar::trivial(sub, 9);
        assert_eq!(degree_exponent(&c9, &Pair::in_n(chi)), 1);
    }
}
