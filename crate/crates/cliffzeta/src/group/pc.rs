//! Consistent polycyclic presentations of finite p-groups.

use super::{closure, closure_from, normal_closure, small_generating_set, Group};
use crate::bits::Bits;
use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest group order for which a full multiplication table is built.
pub const MAX_PC_ORDER: usize = 2187;

/// A p-group `N = <n_1, ..., n_d>` given by a consistent power-commutator
/// presentation: `n_i^p` and `[n_j, n_i]` (for `i < j`) are words in the
/// generators after `n_i`.
///
/// Element `Σ a_k p^{d-1-k}` is the normal form `n_1^{a_1} ... n_d^{a_d}`, so
/// element indices follow the lexicographic order of exponent vectors.
#[derive(Clone, Debug)]
pub struct PcGroup {
    p: u32,
    d: usize,
    order: usize,
    power: Vec<Vec<u8>>,
    comm: Vec<Vec<Vec<u8>>>,
    conj: Vec<Vec<Vec<u8>>>,
    table: Vec<u32>,
    inverse: Vec<u32>,
    series: Vec<Bits>,
    weight: Vec<u32>,
    coord: Vec<Vec<u8>>,
}

impl PcGroup {
    /// Build and check a presentation. `power[i]` is the exponent vector of
    /// `n_i^p`; `comm[j][i]` (for `i < j`) that of `[n_j, n_i]`.
    pub fn new(p: u32, d: usize, power: Vec<Vec<u8>>, comm: Vec<Vec<Vec<u8>>>) -> Result<Self> {
        if !super::is_prime(p as u64) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let order = (p as usize)
            .checked_pow(d as u32)
            .filter(|&o| o <= MAX_PC_ORDER)
            .ok_or_else(|| Error::Resource(format!("p^d = {p}^{d} exceeds {MAX_PC_ORDER}")))?;
        if power.len() != d || comm.len() != d {
            return Err(Error::Invalid("presentation has the wrong number of relations".into()));
        }
        for (i, w) in power.iter().enumerate() {
            check_word(p, d, w, i, &format!("power relation of n_{}", i + 1))?;
        }
        for j in 0..d {
            if comm[j].len() < j {
                return Err(Error::Invalid(format!("missing commutators for n_{}", j + 1)));
            }
            for i in 0..j {
                check_word(p, d, &comm[j][i], i, &format!("commutator [n_{}, n_{}]", j + 1, i + 1))?;
            }
        }
        let mut g = PcGroup {
            p,
            d,
            order,
            power,
            comm,
            conj: vec![Vec::new(); d],
            table: Vec::new(),
            inverse: Vec::new(),
            series: Vec::new(),
            weight: Vec::new(),
            coord: Vec::new(),
        };
        for k in (0..d).rev() {
            let mut row = vec![Vec::new(); d];
            for (j, slot) in row.iter_mut().enumerate().skip(k + 1) {
                let mut v = unit(d, j);
                let w = g.comm[j][k].clone();
                g.mul_word(&mut v, &w);
                *slot = v;
            }
            g.conj[k] = row;
        }
        g.build_table();
        g.check_consistency()?;
        g.build_layers();
        Ok(g)
    }

    /// The elementary abelian group of rank `d`.
    pub fn elementary(p: u32, d: usize) -> Result<Self> {
        PcGroup::new(p, d, vec![vec![0; d]; d], (0..d).map(|j| vec![vec![0; d]; j]).collect())
    }

    /// The cyclic group of order `p^d`.
    pub fn cyclic(p: u32, d: usize) -> Result<Self> {
        let power = (0..d).map(|i| (0..d).map(|k| u8::from(k == i + 1)).collect()).collect();
        PcGroup::new(p, d, power, (0..d).map(|j| vec![vec![0; d]; j]).collect())
    }

    /// Re-present the p-subgroup `sub` of `g` along a refinement of its lower
    /// p-series. Returns the presentation and the ambient element of each index.
    pub fn from_ambient<G: Group + ?Sized>(g: &G, sub: &Bits) -> Result<(PcGroup, Vec<usize>)> {
        let size = sub.count() as u64;
        let primes = super::prime_factors(size);
        if size == 1 {
            let pc = PcGroup::new(2, 0, Vec::new(), Vec::new())?;
            return Ok((pc, vec![0]));
        }
        if primes.len() != 1 {
            return Err(Error::Invalid(format!("subgroup of order {size} is not a p-group")));
        }
        let p = primes[0];
        let gens_sub = small_generating_set(g, sub);
        let mut gens = Vec::new();
        let mut current = sub.clone();
        while current.count() > 1 {
            let mut next_gens: Vec<usize> = current.iter().map(|x| g.pow(x, p)).collect();
            for x in current.iter() {
                for &y in &gens_sub {
                    next_gens.push(g.comm(x, y));
                }
            }
            next_gens.sort_unstable();
            next_gens.dedup();
            let next = normal_closure(g, sub, &next_gens);
            let mut span = next.clone();
            for x in current.iter() {
                if !span.contains(x) {
                    gens.push(x);
                    span = closure_from(g, span, &[x]);
                }
            }
            current = next;
        }
        let d = gens.len();
        let order = (p as usize).pow(d as u32);
        if order != sub.count() {
            return Err(Error::Internal("layer bases do not give a polycyclic series".into()));
        }
        if order > MAX_PC_ORDER {
            return Err(Error::Resource(format!("subgroup of order {order} exceeds {MAX_PC_ORDER}")));
        }
        let mut amb = vec![0usize; order];
        let mut back = std::collections::HashMap::with_capacity(order);
        back.insert(0usize, 0usize);
        for id in 1..order {
            let (prev, k) = peel_last(p as usize, d, id);
            amb[id] = g.mul(amb[prev], gens[k]);
            if back.insert(amb[id], id).is_some() {
                return Err(Error::Internal("normal forms are not distinct".into()));
            }
        }
        let vec_of = |x: usize| -> Vec<u8> { to_vec(p as usize, d, back[&x]) };
        let power = gens.iter().map(|&x| vec_of(g.pow(x, p))).collect();
        let comm = (0..d)
            .map(|j| (0..j).map(|i| vec_of(g.comm(gens[j], gens[i]))).collect())
            .collect();
        let pc = PcGroup::new(p as u32, d, power, comm)?;
        let samples = if order <= 81 { order * order } else { 4096 };
        let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
        for s in 0..samples {
            let (x, y) = if order <= 81 {
                (s / order, s % order)
            } else {
                (rng.gen_range(0..order), rng.gen_range(0..order))
            };
            if amb[pc.mul(x, y)] != g.mul(amb[x], amb[y]) {
                return Err(Error::Internal("presentation does not match the subgroup".into()));
            }
        }
        Ok((pc, amb))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Number of polycyclic generators.
    pub fn rank(&self) -> usize {
        self.d
    }

    pub fn power_word(&self, i: usize) -> &[u8] {
        &self.power[i]
    }

    /// Exponent vector of `[n_j, n_i]` for `i < j`.
    pub fn comm_word(&self, j: usize, i: usize) -> &[u8] {
        &self.comm[j][i]
    }

    pub fn id_of(&self, v: &[u8]) -> usize {
        v.iter().fold(0, |acc, &a| acc * self.p as usize + a as usize)
    }

    pub fn vec_of(&self, x: usize) -> Vec<u8> {
        to_vec(self.p as usize, self.d, x)
    }

    /// The generator `n_{k+1}` as an element index.
    pub fn generator(&self, k: usize) -> usize {
        (self.p as usize).pow((self.d - 1 - k) as u32)
    }

    /// Normal form of a word given as `(generator, exponent)` pairs.
    pub fn collect(&self, word: &[(usize, i64)]) -> Vec<u8> {
        let mut x = 0;
        for &(k, e) in word {
            let base = if e < 0 { self.inv(self.generator(k)) } else { self.generator(k) };
            x = self.mul(x, self.pow(base, e.unsigned_abs()));
        }
        self.vec_of(x)
    }

    /// The lower exponent-p central series `N = N_1 > N_2 > ... > N_{c+1} = 1`.
    pub fn lower_p_series(&self) -> &[Bits] {
        &self.series
    }

    /// The layer `n` with `x ∈ N_n \ N_{n+1}`; `None` for the identity.
    pub fn omega(&self, x: usize) -> Option<u32> {
        (x != 0).then(|| self.weight[x])
    }

    /// Coordinates of `x` in the layer `N_ω(x) / N_{ω(x)+1}`.
    pub fn layer_coord(&self, x: usize) -> &[u8] {
        &self.coord[x]
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).map(|x| self.elem_order(x)).max().unwrap_or(1)
    }

    /// Generators of `sub` adapted to the lower p-series: taken layer by layer,
    /// each the least element of `sub ∩ N_n` whose layer image is independent of
    /// the images already spanned by earlier choices and their p-power powers.
    pub fn good_basis(&self, sub: &Bits) -> Vec<usize> {
        let p = self.p as u64;
        let mut basis: Vec<usize> = Vec::new();
        for n in 1..self.series.len() as u32 {
            let mut span = FpSpan::new(self.p);
            for &b in &basis {
                let w = self.weight[b];
                let y = self.pow(b, p.pow(n - w));
                if y != 0 && self.weight[y] == n {
                    span.insert(self.coord[y].clone());
                }
            }
            for x in sub.iter() {
                if x != 0 && self.weight[x] == n && span.insert(self.coord[x].clone()) {
                    basis.push(x);
                }
            }
        }
        basis
    }

    /// Whether `basis` is a good basis of `sub`: it generates `sub`, and in every
    /// layer the new elements are independent modulo the powered earlier ones.
    pub fn is_good_basis(&self, sub: &Bits, basis: &[usize]) -> bool {
        if closure(self, basis) != *sub {
            return false;
        }
        let p = self.p as u64;
        for n in 1..self.series.len() as u32 {
            let mut span = FpSpan::new(self.p);
            for &b in basis {
                let w = self.weight[b];
                if w < n {
                    let y = self.pow(b, p.pow(n - w));
                    if y != 0 && self.weight[y] == n {
                        span.insert(self.coord[y].clone());
                    }
                }
            }
            for &b in basis {
                if self.weight[b] == n && !span.insert(self.coord[b].clone()) {
                    return false;
                }
            }
        }
        true
    }

    fn mul_gen(&self, v: &mut [u8], k: usize) {
        let tail: Vec<(usize, u8)> = ((k + 1)..self.d).filter(|&j| v[j] != 0).map(|j| (j, v[j])).collect();
        for &(j, _) in &tail {
            v[j] = 0;
        }
        v[k] += 1;
        if v[k] as u32 == self.p {
            v[k] = 0;
            v[(k + 1)..].copy_from_slice(&self.power[k][(k + 1)..]);
        }
        for (j, e) in tail {
            for _ in 0..e {
                let w = &self.conj[k][j];
                self.mul_word(v, w);
            }
        }
    }

    fn mul_word(&self, v: &mut [u8], w: &[u8]) {
        for (l, &e) in w.iter().enumerate() {
            for _ in 0..e {
                self.mul_gen(v, l);
            }
        }
    }

    fn build_table(&mut self) {
        let n = self.order;
        let p = self.p as usize;
        let mut table = vec![0u32; n * n];
        let mut last = vec![0usize; n];
        let mut prev = vec![0usize; n];
        for y in 1..n {
            let (pr, k) = peel_last(p, self.d, y);
            prev[y] = pr;
            last[y] = k;
        }
        for x in 0..n {
            let row = x * n;
            table[row] = x as u32;
            for y in 1..n {
                let mut v = self.vec_of(table[row + prev[y]] as usize);
                self.mul_gen(&mut v, last[y]);
                table[row + y] = self.id_of(&v) as u32;
            }
        }
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            inverse[x] = row.iter().position(|&z| z == 0).unwrap_or(0) as u32;
        }
        self.table = table;
        self.inverse = inverse;
    }

    fn check_consistency(&self) -> Result<()> {
        let n = self.order;
        let bad = |what: String| Err(Error::Inconsistent(what));
        for x in 0..n {
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return bad(format!("element {x} has no two-sided inverse"));
            }
        }
        for k in 0..self.d {
            let g = self.generator(k);
            if self.vec_of(self.pow(g, self.p as u64)) != self.power[k] {
                return bad(format!("power relation of n_{} fails", k + 1));
            }
            for i in 0..k {
                if self.vec_of(self.comm(g, self.generator(i))) != self.comm[k][i] {
                    return bad(format!("commutator [n_{}, n_{}] fails", k + 1, i + 1));
                }
            }
        }
        let check = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        if n <= 243 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !check(a, b, c) {
                            return bad(format!("associativity fails at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !check(a, b, c) {
                    return bad(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
        Ok(())
    }

    fn build_layers(&mut self) {
        let n = self.order;
        let all = Bits::from_iter(n, 0..n);
        let gens: Vec<usize> = (0..self.d).map(|k| self.generator(k)).collect();
        let mut series = vec![all.clone()];
        let mut current = all.clone();
        while current.count() > 1 {
            let mut next_gens: Vec<usize> = current.iter().map(|x| self.pow(x, self.p as u64)).collect();
            for x in current.iter() {
                for &y in &gens {
                    next_gens.push(self.comm(x, y));
                }
            }
            next_gens.sort_unstable();
            next_gens.dedup();
            let next = normal_closure(self, &all, &next_gens);
            series.push(next.clone());
            current = next;
        }
        if series.len() == 1 {
            series.push(Bits::from_iter(n, [0]));
        }
        let mut weight = vec![u32::MAX; n];
        let mut coord = vec![Vec::new(); n];
        for layer in 0..series.len() - 1 {
            let top = &series[layer];
            let below = &series[layer + 1];
            let mut basis = Vec::new();
            let mut span = below.clone();
            for x in top.iter() {
                if !span.contains(x) {
                    basis.push(x);
                    span = closure_from(self, span, &[x]);
                }
            }
            let r = basis.len();
            let p = self.p as usize;
            let below_elems = below.to_vec();
            for c in 0..p.pow(r as u32) {
                let cv = to_vec(p, r, c);
                let mut g = 0;
                for (k, &e) in cv.iter().enumerate() {
                    g = self.mul(g, self.pow(basis[k], e as u64));
                }
                if c == 0 {
                    continue;
                }
                for &z in &below_elems {
                    let x = self.mul(g, z);
                    weight[x] = layer as u32 + 1;
                    coord[x] = cv.clone();
                }
            }
        }
        self.series = series;
        self.weight = weight;
        self.coord = coord;
    }
}

impl Group for PcGroup {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }
}

fn check_word(p: u32, d: usize, w: &[u8], i: usize, what: &str) -> Result<()> {
    if w.len() != d {
        return Err(Error::Invalid(format!("{what}: expected {d} exponents")));
    }
    if w.iter().any(|&e| e as u32 >= p) {
        return Err(Error::Invalid(format!("{what}: exponents must lie in 0..{p}")));
    }
    if w[..=i].iter().any(|&e| e != 0) {
        return Err(Error::Invalid(format!("{what}: word must involve only later generators")));
    }
    Ok(())
}

fn unit(d: usize, j: usize) -> Vec<u8> {
    let mut v = vec![0; d];
    v[j] = 1;
    v
}

fn to_vec(p: usize, d: usize, mut x: usize) -> Vec<u8> {
    let mut v = vec![0u8; d];
    for k in (0..d).rev() {
        v[k] = (x % p) as u8;
        x /= p;
    }
    v
}

/// For a nonzero index, the index with its last nonzero exponent lowered by
/// one, and the position of that exponent.
fn peel_last(p: usize, d: usize, id: usize) -> (usize, usize) {
    let mut x = id;
    let mut k = d - 1;
    let mut scale = 1;
    while x.is_multiple_of(p) {
        x /= p;
        k -= 1;
        scale *= p;
    }
    (id - scale, k)
}

/// Echelon span of vectors over `F_p`.
pub(crate) struct FpSpan {
    p: u32,
    rows: Vec<(usize, Vec<u8>)>,
}

impl FpSpan {
    pub(crate) fn new(p: u32) -> Self {
        FpSpan { p, rows: Vec::new() }
    }

    fn reduce(&self, mut v: Vec<u8>) -> Vec<u8> {
        let p = self.p;
        for (piv, row) in &self.rows {
            let c = v[*piv] as u32;
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = ((*a as u32 + (p - c) * b as u32) % p) as u8;
                }
            }
        }
        v
    }

    /// Add `v`; returns whether it was independent of the current span.
    pub(crate) fn insert(&mut self, v: Vec<u8>) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|&a| a != 0) else {
            return false;
        };
        let inv = crate::cyclotomic::mod_inverse(v[piv] as u64, self.p as u64).unwrap_or(1) as u32;
        for a in v.iter_mut() {
            *a = ((*a as u32 * inv) % self.p) as u8;
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv] as u32;
            if c != 0 {
                for (a, &b) in row.iter_mut().zip(&v) {
                    *a = ((*a as u32 + (self.p - c) * b as u32) % self.p) as u8;
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heisenberg3() -> PcGroup {
        let power = vec![vec![0; 3]; 3];
        let comm = vec![vec![], vec![vec![0, 0, 2]], vec![vec![0; 3], vec![0; 3]]];
        PcGroup::new(3, 3, power, comm).unwrap()
    }

    #[test]
    fn cyclic_nine_collects() {
        let c9 = PcGroup::cyclic(3, 2).unwrap();
        assert_eq!(c9.collect(&[(0, 3)]), vec![0, 1]);
        assert_eq!(c9.collect(&[(0, 4)]), vec![1, 1]);
        assert_eq!(c9.collect(&[(0, 9)]), vec![0, 0]);
        assert_eq!(c9.exponent(), 9);
    }

    #[test]
    fn heisenberg_series() {
        let h = heisenberg3();
        let s = h.lower_p_series();
        assert_eq!(s.len(), 3);
        assert_eq!(s[1].count(), 3);
        assert_eq!(h.omega(h.generator(0)), Some(1));
        assert_eq!(h.omega(h.generator(2)), Some(2));
        assert_eq!(h.omega(0), None);
        assert_eq!(h.collect(&[(1, 1), (0, 1)]), vec![1, 1, 2]);
    }

    #[test]
    fn good_basis_of_whole_group() {
        let h = heisenberg3();
        let all = Bits::from_iter(27, 0..27);
        let b = h.good_basis(&all);
        assert_eq!(b.len(), 3);
        assert!(h.is_good_basis(&all, &b));
        let c9 = PcGroup::cyclic(3, 2).unwrap();
        let all9 = Bits::from_iter(9, 0..9);
        let b9 = c9.good_basis(&all9);
        assert_eq!(b9, vec![c9.generator(0)]);
        assert!(c9.is_good_basis(&all9, &b9));
        assert!(!c9.is_good_basis(&all9, &[c9.generator(0), c9.generator(1)]));
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // n_1^2 = n_2 and [n_2, n_1] = n_2 cannot hold in a group of order 4.
        let power = vec![vec![0, 1], vec![0, 0]];
        let comm = vec![vec![], vec![vec![0, 1]]];
        assert!(matches!(PcGroup::new(2, 2, power, comm), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn non_prime_is_rejected() {
        assert!(PcGroup::new(4, 1, vec![vec![0]], vec![vec![]]).is_err());
    }
}
