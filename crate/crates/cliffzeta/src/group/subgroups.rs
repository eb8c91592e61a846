//! Subgroups of the normal p-subgroup `N`, and subgroups `H` of `G` with
//! `HN = K` for a p-subgroup `K/N` of the quotient.

use super::ext::{Extension, TopSet};
use super::{closure_from, normal_closure, small_generating_set, Group, PcGroup};
use crate::bits::Bits;
use std::collections::HashSet;
use std::sync::Arc;

/// A subgroup of a polycyclic group together with its good basis and the
/// least element of each of its left cosets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub bits: Bits,
    pub basis: Vec<usize>,
    pub transversal: Vec<usize>,
}

impl Subgroup {
    pub fn new(n: &PcGroup, bits: Bits) -> Self {
        let basis = n.good_basis(&bits);
        let transversal = super::left_transversal(n, &super::whole(n), &bits);
        Subgroup { bits, basis, transversal }
    }

    pub fn whole(n: &PcGroup) -> Self {
        Subgroup::new(n, super::whole(n))
    }

    pub fn index(&self) -> usize {
        self.transversal.len()
    }

    pub fn order(&self) -> usize {
        self.bits.count()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }
}

/// The Frattini subgroup `T^p [T, T]` of the subgroup `t`.
pub fn frattini<G: Group + ?Sized>(g: &G, p: u64, t: &Bits) -> Bits {
    let gens = small_generating_set(g, t);
    let mut words: Vec<usize> = t.iter().map(|x| g.pow(x, p)).collect();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            words.push(g.comm(a, b));
        }
    }
    words.sort_unstable();
    words.dedup();
    normal_closure(g, t, &words)
}

/// The maximal subgroups of the p-group `t`: the preimages of the hyperplanes
/// of `t / Φ(t)`.
pub fn maximal_subgroups<G: Group + ?Sized>(g: &G, p: u64, t: &Bits) -> Vec<Bits> {
    if t.count() == 1 {
        return Vec::new();
    }
    let phi = frattini(g, p, t);
    let mut basis = Vec::new();
    let mut span = phi.clone();
    for x in t.iter() {
        if !span.contains(x) {
            basis.push(x);
            span = closure_from(g, span, &[x]);
        }
    }
    let r = basis.len();
    let pu = p as usize;
    let phi_elems = phi.to_vec();
    let mut coord: Vec<(usize, Vec<u8>)> = Vec::with_capacity(t.count());
    for c in 0..pu.pow(r as u32) {
        let mut cv = vec![0u8; r];
        let mut rest = c;
        for k in (0..r).rev() {
            cv[k] = (rest % pu) as u8;
            rest /= pu;
        }
        let mut x = 0;
        for (k, &e) in cv.iter().enumerate() {
            x = g.mul(x, g.pow(basis[k], e as u64));
        }
        for &z in &phi_elems {
            coord.push((g.mul(x, z), cv.clone()));
        }
    }
    let mut out = Vec::new();
    for f in 1..pu.pow(r as u32) {
        let mut fv = vec![0u64; r];
        let mut rest = f;
        for k in (0..r).rev() {
            fv[k] = (rest % pu) as u64;
            rest /= pu;
        }
        if fv.iter().find(|&&a| a != 0) != Some(&1) {
            continue;
        }
        let members = coord
            .iter()
            .filter(|(_, cv)| cv.iter().zip(&fv).map(|(&a, &b)| a as u64 * b).sum::<u64>() % p == 0)
            .map(|(x, _)| *x);
        out.push(Bits::from_iter(g.order(), members));
    }
    out
}

/// All subgroups of `N` of index at most `index_bound` containing `must_contain`,
/// found top-down through maximal subgroups. Sorted by decreasing order.
pub fn enumerate_subgroups(n: &PcGroup, index_bound: usize, must_contain: Option<&Bits>) -> Vec<Subgroup> {
    let p = n.p() as u64;
    let whole = super::whole(n);
    let mut found: HashSet<Bits> = HashSet::new();
    found.insert(whole.clone());
    let mut frontier = vec![whole];
    while let Some(t) = frontier.pop() {
        if (n.order() / t.count()) * p as usize > index_bound {
            continue;
        }
        for s in maximal_subgroups(n, p, &t) {
            if must_contain.is_some_and(|z| !z.is_subset(&s)) {
                continue;
            }
            if found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut subs: Vec<Bits> = found.into_iter().collect();
    subs.sort_by(|a, b| b.count().cmp(&a.count()).then(a.cmp(b)));
    subs.into_iter().map(|b| Subgroup::new(n, b)).collect()
}

/// A subgroup `H` of `G` with `HN` the preimage of `tops` and `H ∩ N = m`,
/// recorded by the least tail `t_i` with `y_i t_i ∈ H` for each `i` in `tops`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupH {
    pub tops: TopSet,
    pub m: Arc<Subgroup>,
    pub tails: Vec<usize>,
}

impl SubgroupH {
    /// `H = N` restricted to `m`: the trivial top.
    pub fn inside_n(m: Arc<Subgroup>) -> Self {
        SubgroupH { tops: vec![0], m, tails: vec![0] }
    }

    /// The tail `t_i` for the transversal index `i`, if `i` lies in the top.
    pub fn tail_of(&self, i: usize) -> Option<usize> {
        self.tops.binary_search(&i).ok().map(|k| self.tails[k])
    }

    /// Whether `y_i n ∈ H`.
    pub fn contains(&self, ext: &Extension, i: usize, n: usize) -> bool {
        match self.tail_of(i) {
            Some(t) => self.m.contains(ext.normal().mul(ext.normal().inv(t), n)),
            None => false,
        }
    }

    pub fn elements(&self, ext: &Extension) -> Bits {
        let nn = ext.normal();
        let mut out = Bits::new(ext.order());
        for (k, &i) in self.tops.iter().enumerate() {
            for x in self.m.bits.iter() {
                out.insert(ext.elem(i, nn.mul(self.tails[k], x)));
            }
        }
        out
    }

    /// The same subgroup with the top restricted to the sub-top `tops`.
    pub fn restrict(&self, tops: &[usize]) -> SubgroupH {
        let tails = tops.iter().map(|&i| self.tail_of(i).expect("restriction to a sub-top")).collect();
        SubgroupH { tops: tops.to_vec(), m: self.m.clone(), tails }
    }
}

/// All `H ≤ G` with `HN` the preimage of `tops` and `H ∩ N` one of `ms`.
pub fn enumerate_hh(ext: &Extension, tops: &[usize], ms: &[Arc<Subgroup>]) -> Vec<SubgroupH> {
    let nn = ext.normal();
    let q = ext.quotient();
    let top_bits = Bits::from_iter(ext.index(), tops.iter().copied());
    let top_gens = small_generating_set(q, &top_bits);
    let mut out = Vec::new();
    for m in ms {
        let reps = &m.transversal;
        let start = Bits::from_iter(ext.order(), m.bits.iter());
        let mut seen: HashSet<Bits> = HashSet::new();
        let count = reps.len().pow(top_gens.len() as u32);
        for code in 0..count {
            let mut rest = code;
            let gens: Vec<usize> = top_gens
                .iter()
                .map(|&i| {
                    let t = reps[rest % reps.len()];
                    rest /= reps.len();
                    ext.elem(i, t)
                })
                .collect();
            let h = closure_from(ext, start.clone(), &gens);
            if h.count() != m.order() * tops.len() {
                continue;
            }
            if h.iter().take_while(|&x| x < nn.order()).count() != m.order() {
                continue;
            }
            if !seen.insert(h.clone()) {
                continue;
            }
            let tails = tops
                .iter()
                .map(|&i| (0..nn.order()).find(|&x| h.contains(ext.elem(i, x))).unwrap_or(0))
                .collect();
            out.push(SubgroupH { tops: tops.to_vec(), m: m.clone(), tails });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg3() -> PcGroup {
        let comm = vec![vec![], vec![vec![0, 0, 1]], vec![vec![0; 3], vec![0; 3]]];
        PcGroup::new(3, 3, vec![vec![0; 3]; 3], comm).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        let c9 = PcGroup::cyclic(3, 2).unwrap();
        assert_eq!(enumerate_subgroups(&c9, 9, None).len(), 3);
        let c2sq = PcGroup::elementary(2, 2).unwrap();
        assert_eq!(enumerate_subgroups(&c2sq, 4, None).len(), 5);
        assert_eq!(enumerate_subgroups(&heisenberg3(), 27, None).len(), 19);
    }

    #[test]
    fn index_bound_and_containment() {
        let h = heisenberg3();
        let z = super::super::center(&h, &super::super::whole(&h));
        assert_eq!(z.count(), 3);
        let subs = enumerate_subgroups(&h, 3, Some(&z));
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| h.is_good_basis(&s.bits, &s.basis)));
    }
}
