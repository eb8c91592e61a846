//! Finite groups: polycyclic presentations of p-groups, explicit tables for
//! small groups, and groups presented as extensions of a normal p-subgroup.
//!
//! Elements of every group are dense indices `0..order` with `0` the identity.

pub mod ambient;
pub mod ext;
pub mod pc;
pub mod subgroups;

use crate::bits::Bits;
use std::collections::HashMap;
use std::hash::Hash;

pub use ext::{Extension, TopSet};
pub use pc::PcGroup;
pub use subgroups::{Subgroup, SubgroupH};

/// A finite group on the element indices `0..order()`, with `0` the identity.
pub trait Group: Sync + Send {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;

    fn identity(&self) -> usize {
        0
    }

    /// `g x g^{-1}`.
    fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a^{-1} b^{-1} a b`.
    fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    fn pow(&self, a: usize, k: u64) -> usize {
        let mut r = 0;
        let mut b = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    fn elem_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// The subgroup generated by `gens`.
pub fn closure<G: Group + ?Sized>(g: &G, gens: &[usize]) -> Bits {
    closure_from(g, Bits::from_iter(g.order(), [0]), gens)
}

/// The subgroup generated by the subgroup `start` together with `gens`.
pub fn closure_from<G: Group + ?Sized>(g: &G, start: Bits, gens: &[usize]) -> Bits {
    let mut set = start;
    let mut all_gens: Vec<usize> = gens.to_vec();
    if set.count() > 1 {
        all_gens.extend(small_generating_set(g, &set));
    }
    all_gens.retain(|&x| x != 0);
    all_gens.sort_unstable();
    all_gens.dedup();
    let mut queue: Vec<usize> = set.to_vec();
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in &all_gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

/// A generating set of the subgroup `sub`, chosen greedily in index order.
pub fn small_generating_set<G: Group + ?Sized>(g: &G, sub: &Bits) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Bits::from_iter(g.order(), [0]);
    for x in sub.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = closure_from_gens(g, &gens);
            if span.count() == sub.count() {
                break;
            }
        }
    }
    gens
}

fn closure_from_gens<G: Group + ?Sized>(g: &G, gens: &[usize]) -> Bits {
    let mut set = Bits::from_iter(g.order(), [0]);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

/// The smallest subgroup of `within` containing `gens` and normalised by `within`.
pub fn normal_closure<G: Group + ?Sized>(g: &G, within: &Bits, gens: &[usize]) -> Bits {
    let acting = small_generating_set(g, within);
    let mut set = closure(g, gens);
    loop {
        let mut extra = Vec::new();
        for x in set.iter() {
            for &a in &acting {
                let y = g.conj(a, x);
                if !set.contains(y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return set;
        }
        set = closure_from(g, set, &extra);
    }
}

/// The derived subgroup of the subgroup `sub`.
pub fn derived_subgroup<G: Group + ?Sized>(g: &G, sub: &Bits) -> Bits {
    let gens = small_generating_set(g, sub);
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            comms.push(g.comm(a, b));
        }
    }
    normal_closure(g, sub, &comms)
}

pub fn is_normal_in<G: Group + ?Sized>(g: &G, sub: &Bits, within: &Bits) -> bool {
    let acting = small_generating_set(g, within);
    sub.iter().all(|x| acting.iter().all(|&a| sub.contains(g.conj(a, x))))
}

pub fn center<G: Group + ?Sized>(g: &G, sub: &Bits) -> Bits {
    let gens = small_generating_set(g, sub);
    Bits::from_iter(
        g.order(),
        sub.iter().filter(|&x| gens.iter().all(|&a| g.mul(a, x) == g.mul(x, a))),
    )
}

pub fn whole<G: Group + ?Sized>(g: &G) -> Bits {
    Bits::from_iter(g.order(), 0..g.order())
}

/// Left coset representatives of `sub` in `within`, each the least element of its coset.
pub fn left_transversal<G: Group + ?Sized>(g: &G, within: &Bits, sub: &Bits) -> Vec<usize> {
    let elems = sub.to_vec();
    let mut seen = Bits::new(g.order());
    let mut reps = Vec::new();
    for x in within.iter() {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for &s in &elems {
            seen.insert(g.mul(x, s));
        }
    }
    reps
}

/// A group given by an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct TableGroup {
    n: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
}

impl TableGroup {
    pub fn from_table(n: usize, table: Vec<u32>) -> Self {
        assert_eq!(table.len(), n * n);
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if table[a * n + b] == 0 {
                    inverse[a] = b as u32;
                    break;
                }
            }
        }
        TableGroup { n, table, inverse }
    }

    /// Close `gens` under `op`, starting from `id`; element `0` is `id` and the
    /// others are numbered in breadth-first order. Returns the group and its elements.
    pub fn generate<T, F>(id: T, gens: &[T], op: F) -> (TableGroup, Vec<T>)
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![id.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(id, 0);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for s in gens {
                let y = op(&x, s);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&op(&elems[a], &elems[b])] as u32;
            }
        }
        (TableGroup::from_table(n, table), elems)
    }

    /// The subgroup on `elems` (which must contain the identity first) as a table group.
    pub fn from_subset<G: Group + ?Sized>(g: &G, elems: &[usize]) -> Self {
        let n = elems.len();
        let mut pos = HashMap::new();
        for (i, &x) in elems.iter().enumerate() {
            pos.insert(x, i);
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = pos[&g.mul(elems[a], elems[b])] as u32;
            }
        }
        TableGroup::from_table(n, table)
    }
}

impl Group for TableGroup {
    fn order(&self) -> usize {
        self.n
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
}

/// All subgroups of a solvable group, found by repeated cyclic extension.
///
/// Every subgroup of a solvable group is reached from the trivial group by
/// steps `T -> <T, x>` with `x` normalising `T` and of prime order modulo `T`.
pub fn all_subgroups_solvable<G: Group + ?Sized>(g: &G) -> Vec<Bits> {
    let n = g.order();
    let mut found: HashMap<Bits, ()> = HashMap::new();
    let trivial = Bits::from_iter(n, [0]);
    found.insert(trivial.clone(), ());
    let mut frontier = vec![trivial];
    while let Some(t) = frontier.pop() {
        for x in 0..n {
            if t.contains(x) {
                continue;
            }
            if !t.iter().all(|y| t.contains(g.conj(x, y))) {
                continue;
            }
            let o = relative_order(g, &t, x);
            if !is_prime(o) {
                continue;
            }
            let s = closure_from(g, t.clone(), &[x]);
            if !found.contains_key(&s) {
                found.insert(s.clone(), ());
                frontier.push(s);
            }
        }
    }
    let mut subs: Vec<Bits> = found.into_keys().collect();
    subs.sort_by(|a, b| b.count().cmp(&a.count()).then(a.cmp(b)));
    subs
}

fn relative_order<G: Group + ?Sized>(g: &G, t: &Bits, x: usize) -> u64 {
    let mut y = x;
    let mut k = 1;
    while !t.contains(y) {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The largest power of `q` dividing `n`.
pub fn q_part(n: u64, q: u64) -> u64 {
    let mut r = 1;
    let mut n = n;
    while n.is_multiple_of(q) {
        n /= q;
        r *= q;
    }
    r
}

/// The Sylow `p`-subgroup of `g` when it is normal: the set of elements of
/// `p`-power order, if that set is a subgroup.
pub fn normal_sylow<G: Group + ?Sized>(g: &G, p: u64) -> Option<Bits> {
    let elems: Vec<usize> = (0..g.order()).filter(|&x| q_part(g.elem_order(x), p) == g.elem_order(x)).collect();
    let bits = Bits::from_iter(g.order(), elems.iter().copied());
    (closure(g, &elems).count() == bits.count()).then_some(bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> TableGroup {
        let compose = |a: &Vec<u8>, b: &Vec<u8>| -> Vec<u8> { b.iter().map(|&i| a[i as usize]).collect() };
        TableGroup::generate(vec![0, 1, 2], &[vec![1, 2, 0], vec![1, 0, 2]], compose).0
    }

    #[test]
    fn table_group_basics() {
        let g = s3();
        assert_eq!(g.order(), 6);
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
        assert_eq!(derived_subgroup(&g, &whole(&g)).count(), 3);
        assert_eq!(center(&g, &whole(&g)).count(), 1);
    }

    #[test]
    fn subgroups_of_s3() {
        let g = s3();
        assert_eq!(all_subgroups_solvable(&g).len(), 6);
    }

    #[test]
    fn transversal_sizes() {
        let g = s3();
        let d = derived_subgroup(&g, &whole(&g));
        assert_eq!(left_transversal(&g, &whole(&g), &d).len(), 2);
    }
}
