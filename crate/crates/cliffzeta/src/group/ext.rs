//! A finite group `G` presented over a normal p-subgroup `N` by a transversal
//! `y_1 = 1, y_2, ..., y_m` of `N` in `G`.
//!
//! The data are the multiplication of `Q = G/N` (`γ`), the tails
//! `y_i y_j = y_{γ(i,j)} a_ij`, and the conjugation automorphisms
//! `φ_i(n) = y_i n y_i^{-1}`. The element `y_i n` has index `i |N| + n`.

use super::{closure, Group, PcGroup, TableGroup};
use crate::bits::Bits;
use crate::error::{Error, Result};
use std::sync::Arc;

/// A sorted set of transversal indices, standing for a subgroup of `G` containing `N`.
pub type TopSet = Vec<usize>;

#[derive(Clone, Debug)]
pub struct Extension {
    n: Arc<PcGroup>,
    m: usize,
    q: TableGroup,
    tail: Vec<u32>,
    phi: Vec<Vec<u32>>,
    phi_inv: Vec<Vec<u32>>,
    kappa: Vec<u32>,
    dconj: Vec<u32>,
}

impl Extension {
    /// Build and check an extension from the multiplication table `gamma` of
    /// `Q` (row-major, index `0` the identity), the tails `a_ij` (row-major, as
    /// indices of `N`), and the images `φ_i(n_k)` of the generators of `N`.
    pub fn new(n: Arc<PcGroup>, gamma: Vec<usize>, tail: Vec<usize>, phi_gens: Vec<Vec<usize>>) -> Result<Self> {
        let m = phi_gens.len();
        let size = n.order();
        let d = n.rank();
        let bad = |msg: String| Err(Error::Inconsistent(msg));
        if gamma.len() != m * m || tail.len() != m * m {
            return Err(Error::Invalid("quotient table has the wrong size".into()));
        }
        if gamma.iter().any(|&g| g >= m) || tail.iter().any(|&a| a >= size) {
            return Err(Error::Invalid("index out of range in extension data".into()));
        }
        for i in 0..m {
            if gamma[i] != i || gamma[i * m] != i {
                return bad(format!("quotient element 1 is not an identity at {}", i + 1));
            }
            let mut row = gamma[i * m..(i + 1) * m].to_vec();
            row.sort_unstable();
            row.dedup();
            if row.len() != m {
                return bad(format!("quotient table row {} is not a permutation", i + 1));
            }
            if tail[i] != 0 || tail[i * m] != 0 {
                return bad(format!("tails involving y_1 must be trivial (row {})", i + 1));
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if gamma[gamma[i * m + j] * m + k] != gamma[i * m + gamma[j * m + k]] {
                        return bad(format!("quotient table is not associative at ({}, {}, {})", i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        if phi_gens.iter().any(|row| row.len() != d || row.iter().any(|&x| x >= size)) {
            return Err(Error::Invalid("automorphism data has the wrong shape".into()));
        }
        let mut phi = Vec::with_capacity(m);
        for (i, images) in phi_gens.iter().enumerate() {
            let map = extend_hom(&n, images);
            if !is_hom_of_presentation(&n, images) {
                return bad(format!("images for y_{} do not respect the relations of N", i + 1));
            }
            let mut seen = Bits::new(size);
            if !map.iter().all(|&x| seen.insert(x as usize)) {
                return bad(format!("conjugation by y_{} is not bijective", i + 1));
            }
            phi.push(map);
        }
        if phi[0].iter().enumerate().any(|(x, &y)| x != y as usize) {
            return bad("y_1 must act trivially".into());
        }
        let phi_inv: Vec<Vec<u32>> = phi
            .iter()
            .map(|map| {
                let mut inv = vec![0u32; size];
                for (x, &y) in map.iter().enumerate() {
                    inv[y as usize] = x as u32;
                }
                inv
            })
            .collect();
        let tail32: Vec<u32> = tail.iter().map(|&a| a as u32).collect();
        for i in 0..m {
            for j in 0..m {
                let a = tail[i * m + j];
                let k = gamma[i * m + j];
                for g in 0..d {
                    let x = n.generator(g);
                    let lhs = phi[i][phi[j][x] as usize] as usize;
                    let rhs = phi[k][n.conj(a, x)] as usize;
                    if lhs != rhs {
                        return bad(format!("action is not compatible with tails at ({}, {})", i + 1, j + 1));
                    }
                }
                for l in 0..m {
                    let ij = k;
                    let jl = gamma[j * m + l];
                    let lhs = n.mul(tail[ij * m + l], phi_inv[l][a] as usize);
                    let rhs = n.mul(tail[i * m + jl], tail[j * m + l]);
                    if lhs != rhs {
                        return bad(format!("tails fail the cocycle identity at ({}, {}, {})", i + 1, j + 1, l + 1));
                    }
                }
            }
        }
        let q = TableGroup::from_table(m, gamma.iter().map(|&g| g as u32).collect());
        let mut ext = Extension {
            n,
            m,
            q,
            tail: tail32,
            phi,
            phi_inv,
            kappa: Vec::new(),
            dconj: Vec::new(),
        };
        let mut kappa = vec![0u32; m * m];
        let mut dconj = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let z = ext.mul(ext.mul(ext.inv(ext.y(i)), ext.y(j)), ext.y(i));
                let (k, dd) = ext.split(z);
                kappa[i * m + j] = k as u32;
                dconj[i * m + j] = dd as u32;
            }
        }
        ext.kappa = kappa;
        ext.dconj = dconj;
        Ok(ext)
    }

    /// Present `g` over its normal p-subgroup `sub`. The transversal consists
    /// of the least element of each coset. Returns the extension and the
    /// ambient element of each extension index.
    pub fn from_ambient<G: Group + ?Sized>(g: &G, sub: &Bits) -> Result<(Extension, Vec<usize>)> {
        if !super::is_normal_in(g, sub, &super::whole(g)) {
            return Err(Error::Invalid("subgroup is not normal".into()));
        }
        let (pc, amb) = PcGroup::from_ambient(g, sub)?;
        let size = pc.order();
        let mut back = vec![u32::MAX; g.order()];
        for (x, &a) in amb.iter().enumerate() {
            back[a] = x as u32;
        }
        let mut coset = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in 0..g.order() {
            if coset[x] != u32::MAX {
                continue;
            }
            let i = reps.len() as u32;
            reps.push(x);
            for &a in &amb {
                coset[g.mul(x, a)] = i;
            }
        }
        let m = reps.len();
        let locate = |z: usize| -> (usize, usize) {
            let i = coset[z] as usize;
            (i, back[g.mul(g.inv(reps[i]), z)] as usize)
        };
        let mut gamma = vec![0usize; m * m];
        let mut tail = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                let (k, a) = locate(g.mul(reps[i], reps[j]));
                gamma[i * m + j] = k;
                tail[i * m + j] = a;
            }
        }
        let phi_gens = reps
            .iter()
            .map(|&y| (0..pc.rank()).map(|k| back[g.conj(y, amb[pc.generator(k)])] as usize).collect())
            .collect();
        let ext = Extension::new(Arc::new(pc), gamma, tail, phi_gens)?;
        let to_amb = (0..m * size).map(|e| g.mul(reps[e / size], amb[e % size])).collect();
        Ok((ext, to_amb))
    }

    /// The same group over the transversal `y_i s_i`; `shifts[0]` must be the identity.
    pub fn retransversal(&self, shifts: &[usize]) -> Result<Extension> {
        if shifts.len() != self.m || shifts[0] != 0 {
            return Err(Error::Invalid("shifts must cover the transversal and fix y_1".into()));
        }
        let n = &self.n;
        let m = self.m;
        let mut gamma = vec![0usize; m * m];
        let mut tail = vec![0usize; m * m];
        for i in 0..m {
            for j in 0..m {
                let k = self.gamma(i, j);
                gamma[i * m + j] = k;
                let t = n.mul(
                    n.mul(n.inv(shifts[k]), self.tail(i, j)),
                    n.mul(self.phi_inv(j, shifts[i]), shifts[j]),
                );
                tail[i * m + j] = t;
            }
        }
        let phi_gens = (0..m)
            .map(|i| (0..n.rank()).map(|k| self.phi(i, n.conj(shifts[i], n.generator(k)))).collect())
            .collect();
        Extension::new(self.n.clone(), gamma, tail, phi_gens)
    }

    pub fn normal(&self) -> &PcGroup {
        &self.n
    }

    pub fn normal_arc(&self) -> Arc<PcGroup> {
        self.n.clone()
    }

    pub fn p(&self) -> u64 {
        self.n.p() as u64
    }

    /// `|G : N|`.
    pub fn index(&self) -> usize {
        self.m
    }

    /// The quotient `Q = G/N` on transversal indices.
    pub fn quotient(&self) -> &TableGroup {
        &self.q
    }

    pub fn gamma(&self, i: usize, j: usize) -> usize {
        self.q.mul(i, j)
    }

    pub fn tail(&self, i: usize, j: usize) -> usize {
        self.tail[i * self.m + j] as usize
    }

    /// `φ_i(x) = y_i x y_i^{-1}`.
    pub fn phi(&self, i: usize, x: usize) -> usize {
        self.phi[i][x] as usize
    }

    pub fn phi_inv(&self, i: usize, x: usize) -> usize {
        self.phi_inv[i][x] as usize
    }

    /// `κ(i, j)` with `y_i^{-1} y_j y_i = y_{κ(i,j)} d_ij`.
    pub fn kappa(&self, i: usize, j: usize) -> usize {
        self.kappa[i * self.m + j] as usize
    }

    pub fn dconj(&self, i: usize, j: usize) -> usize {
        self.dconj[i * self.m + j] as usize
    }

    /// The index of `y_i n`.
    pub fn elem(&self, i: usize, n: usize) -> usize {
        i * self.n.order() + n
    }

    pub fn y(&self, i: usize) -> usize {
        self.elem(i, 0)
    }

    /// The pair `(i, n)` with `x = y_i n`.
    pub fn split(&self, x: usize) -> (usize, usize) {
        (x / self.n.order(), x % self.n.order())
    }

    /// All elements `y_i n` with `i` in `tops`.
    pub fn preimage(&self, tops: &[usize]) -> Bits {
        let s = self.n.order();
        Bits::from_iter(self.order(), tops.iter().flat_map(|&i| (i * s)..((i + 1) * s)))
    }

    /// The subgroup of `Q` generated by `gens`, as sorted indices.
    pub fn top_closure(&self, gens: &[usize]) -> TopSet {
        closure(&self.q, gens).to_vec()
    }

    pub fn is_p_group_top(&self, tops: &[usize]) -> bool {
        super::prime_factors(tops.len() as u64).iter().all(|&q| q == self.p())
    }

    /// A Sylow `q`-subgroup of the subgroup `tops` of `Q`, built by repeatedly
    /// adjoining the least element of order `q` modulo the current subgroup in
    /// its normaliser.
    pub fn sylow_top(&self, tops: &[usize], q: u64) -> TopSet {
        let target = super::q_part(tops.len() as u64, q) as usize;
        let mut current = Bits::from_iter(self.m, [0]);
        while current.count() < target {
            let next = tops.iter().copied().find(|&g| {
                !current.contains(g)
                    && current.contains(self.q.pow(g, q))
                    && current.iter().all(|x| current.contains(self.q.conj(g, x)))
            });
            match next {
                Some(g) => current = super::closure_from(&self.q, current, &[g]),
                None => break,
            }
        }
        current.to_vec()
    }

    /// The Sylow p-subgroup of `tops` for the prime of `N`.
    pub fn sylow_p_part(&self, tops: &[usize]) -> TopSet {
        self.sylow_top(tops, self.p())
    }

    /// The Sylow q-subgroups of `tops` for the primes other than that of `N`.
    pub fn sylow_q_parts(&self, tops: &[usize]) -> Vec<(u64, TopSet)> {
        super::prime_factors(tops.len() as u64)
            .into_iter()
            .filter(|&q| q != self.p())
            .map(|q| (q, self.sylow_top(tops, q)))
            .collect()
    }

    /// The subgroup `tops` of `Q` as a table group, with element `k` of the
    /// table standing for `tops[k]`.
    pub fn top_table(&self, tops: &[usize]) -> TableGroup {
        TableGroup::from_subset(&self.q, tops)
    }

    /// Transversal of `K / N` in `L / N` (left cosets), as indices of `Q`.
    pub fn top_transversal(&self, big: &[usize], small: &[usize]) -> Vec<usize> {
        super::left_transversal(
            &self.q,
            &Bits::from_iter(self.m, big.iter().copied()),
            &Bits::from_iter(self.m, small.iter().copied()),
        )
    }
}

impl Group for Extension {
    fn order(&self) -> usize {
        self.m * self.n.order()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (i, x) = self.split(a);
        let (j, z) = self.split(b);
        let k = self.gamma(i, j);
        let n = &self.n;
        self.elem(k, n.mul(n.mul(self.tail(i, j), self.phi_inv(j, x)), z))
    }

    fn inv(&self, a: usize) -> usize {
        let (i, x) = self.split(a);
        let j = self.q.inv(i);
        let n = &self.n;
        let t = n.inv(self.tail(i, j));
        self.elem(j, n.mul(self.phi_inv(j, n.inv(x)), t))
    }
}

/// The map `N -> N` sending the normal form `Π n_k^{a_k}` to `Π images[k]^{a_k}`.
pub(crate) fn extend_hom(n: &PcGroup, images: &[usize]) -> Vec<u32> {
    let size = n.order();
    let mut map = vec![0u32; size];
    for x in 1..size {
        let v = n.vec_of(x);
        let k = v.iter().rposition(|&a| a != 0).unwrap_or(0);
        let mut w = v.clone();
        w[k] -= 1;
        let prev = n.id_of(&w);
        map[x] = n.mul(map[prev] as usize, images[k]) as u32;
    }
    map
}

/// Whether `n_k -> images[k]` respects the power and commutator relations.
pub(crate) fn is_hom_of_presentation(n: &PcGroup, images: &[usize]) -> bool {
    let map = extend_hom(n, images);
    let p = n.p() as u64;
    (0..n.rank()).all(|k| {
        n.pow(images[k], p) == map[n.id_of(n.power_word(k))] as usize
            && (0..k).all(|i| n.comm(images[k], images[i]) == map[n.id_of(n.comm_word(k, i))] as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `C_9 ⋊ C_3` as affine maps `x -> a x + b` of `Z/9` with `a ∈ {1, 4, 7}`.
    fn m27() -> TableGroup {
        let op = |f: &(u8, u8), g: &(u8, u8)| ((f.0 * g.0) % 9, ((f.0 as u16 * g.1 as u16 + f.1 as u16) % 9) as u8);
        TableGroup::generate((1u8, 0u8), &[(1, 1), (4, 0)], op).0
    }

    #[test]
    fn extension_reproduces_the_ambient_group() {
        let g = m27();
        assert_eq!(g.order(), 27);
        let sub = closure(&g, &[1]);
        assert_eq!(sub.count(), 9);
        let (ext, amb) = Extension::from_ambient(&g, &sub).unwrap();
        assert_eq!(ext.index(), 3);
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(amb[ext.mul(a, b)], g.mul(amb[a], amb[b]));
            }
            assert_eq!(ext.mul(a, ext.inv(a)), 0);
        }
    }

    #[test]
    fn retransversal_is_isomorphic() {
        let g = m27();
        let sub = closure(&g, &[1]);
        let (ext, _) = Extension::from_ambient(&g, &sub).unwrap();
        let moved = ext.retransversal(&[0, 4, 7]).unwrap();
        for i in 0..3 {
            for k in 0..ext.normal().rank() {
                let x = ext.normal().generator(k);
                assert_eq!(moved.phi(i, x), ext.phi(i, ext.normal().conj([0, 4, 7][i], x)));
            }
        }
        let shifts = [0, 4, 7];
        let nn = ext.normal();
        let f = |x: usize| {
            let (i, n) = ext.split(x);
            moved.elem(i, nn.mul(nn.inv(shifts[i]), n))
        };
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(moved.mul(f(a), f(b)), f(ext.mul(a, b)));
            }
        }
    }

    #[test]
    fn sylow_of_quotient() {
        let compose = |a: &Vec<u8>, b: &Vec<u8>| -> Vec<u8> { b.iter().map(|&i| a[i as usize]).collect() };
        let (s4, elems) = TableGroup::generate(vec![0, 1, 2, 3], &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], compose);
        let v4: Vec<usize> = (0..24)
            .filter(|&i| {
                let e = &elems[i];
                i == 0 || (0..4).all(|k| e[k] as usize != k && e[e[k] as usize] as usize == k)
            })
            .collect();
        let sub = Bits::from_iter(24, v4);
        assert_eq!(sub.count(), 4);
        let (ext, _) = Extension::from_ambient(&s4, &sub).unwrap();
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(ext.sylow_top(&all, 2).len(), 2);
        assert_eq!(ext.sylow_top(&all, 3).len(), 3);
    }
}
