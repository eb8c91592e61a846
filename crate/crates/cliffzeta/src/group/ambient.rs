//! Concrete groups used to build examples: permutation groups, formula groups
//! and direct products.

use super::{Group, TableGroup};

/// The group generated by permutations of `0..degree` (images listed in order),
/// composed right to left.
pub fn perm_group(gens: &[Vec<u8>]) -> TableGroup {
    let degree = gens.first().map_or(0, |g| g.len());
    let id: Vec<u8> = (0..degree as u8).collect();
    let compose = |a: &Vec<u8>, b: &Vec<u8>| -> Vec<u8> { b.iter().map(|&i| a[i as usize]).collect() };
    TableGroup::generate(id, gens, compose).0
}

pub fn cyclic(n: usize) -> TableGroup {
    let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
    TableGroup::from_table(n, table)
}

/// `Dic_n = <a, b | a^{2n}, b^2 = a^n, b^{-1} a b = a^{-1}>` of order `4n`.
pub fn dicyclic(n: u32) -> TableGroup {
    let two_n = 2 * n;
    let op = move |x: &(u32, u32), y: &(u32, u32)| -> (u32, u32) {
        let (k, e) = *x;
        let (l, f) = *y;
        if e == 0 {
            ((k + l) % two_n, f)
        } else {
            let r = (k + two_n - l) % two_n;
            if f == 1 {
                ((r + n) % two_n, 0)
            } else {
                (r, 1)
            }
        }
    };
    TableGroup::generate((0, 0), &[(1, 0), (0, 1)], op).0
}

/// The affine maps `x -> a x + b` of `Z/modulus` with `a` in the group generated by `mults`.
pub fn affine(modulus: u32, mults: &[u32]) -> TableGroup {
    let op = move |f: &(u32, u32), g: &(u32, u32)| ((f.0 * g.0) % modulus, (f.0 * g.1 + f.1) % modulus);
    let mut gens = vec![(1, 1)];
    gens.extend(mults.iter().map(|&a| (a % modulus, 0)));
    TableGroup::generate((1, 0), &gens, op).0
}

pub fn direct_product<A: Group + ?Sized, B: Group + ?Sized>(a: &A, b: &B) -> TableGroup {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            let (x1, x2) = (x / nb, x % nb);
            let (y1, y2) = (y / nb, y % nb);
            table[x * n + y] = (a.mul(x1, y1) * nb + b.mul(x2, y2)) as u32;
        }
    }
    TableGroup::from_table(n, table)
}

/// The Heisenberg group of upper unitriangular 3x3 matrices over `Z/p^m`,
/// as triples `(a, b, c)` with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
///
/// The element `(a, b, c)` has index `(a q + b) q + c` with `q = p^m`, so the
/// abelian normal subgroup `{(0, b, c)}` occupies the indices `0..q^2`.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    q: u64,
}

impl Heisenberg {
    pub fn new(p: u64, m: u32) -> Self {
        Heisenberg { q: p.pow(m) }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    fn split(&self, x: usize) -> (u64, u64, u64) {
        let x = x as u64;
        (x / (self.q * self.q), (x / self.q) % self.q, x % self.q)
    }

    fn join(&self, a: u64, b: u64, c: u64) -> usize {
        ((a % self.q * self.q + b % self.q) * self.q + c % self.q) as usize
    }

    pub fn elem(&self, a: u64, b: u64, c: u64) -> usize {
        self.join(a, b, c)
    }
}

impl Group for Heisenberg {
    fn order(&self) -> usize {
        (self.q * self.q * self.q) as usize
    }

    fn mul(&self, x: usize, y: usize) -> usize {
        let (a, b, c) = self.split(x);
        let (a2, b2, c2) = self.split(y);
        self.join(a + a2, b + b2, c + c2 + a * b2 % self.q)
    }

    fn inv(&self, x: usize) -> usize {
        let (a, b, c) = self.split(x);
        let q = self.q;
        self.join(q - a, q - b, (a * b % q + q - c) % q)
    }
}

/// `M_{p^{m+1}} = <a, b | a^{p^m}, b^p, b^{-1} a b = a^{1+p^{m-1}}>`, as affine
/// maps of `Z/p^m`.
pub fn modular_p_group(p: u32, m: u32) -> TableGroup {
    let q = p.pow(m);
    affine(q, &[1 + p.pow(m - 1)])
}

/// An element `(v, c, A)` of [`symplectic_semidirect`].
pub type SymplecticElem = ([u32; 2], u32, [u32; 4]);

/// `V ⋊ S` (`central = false`) or `H ⋊ S` (`central = true`) for `V = F_p^2`
/// with `p` odd, `H` the Heisenberg group on `V` with product
/// `(v, c)(w, d) = (v + w, c + d + det(v, w)/2)`, and `S` the group generated
/// by the 2x2 matrices `mats` (row-major) of determinant one acting on `v`.
/// Returns the group and the element behind each index.
pub fn symplectic_semidirect(p: u32, central: bool, mats: &[[u32; 4]]) -> (TableGroup, Vec<SymplecticElem>) {
    let half = p.div_ceil(2);
    let op = move |x: &SymplecticElem, y: &SymplecticElem| -> SymplecticElem {
        let a = &x.2;
        let b = &y.2;
        let w = [(a[0] * y.0[0] + a[1] * y.0[1]) % p, (a[2] * y.0[0] + a[3] * y.0[1]) % p];
        let det = (x.0[0] * w[1] + p * p - x.0[1] * w[0] % p) % p;
        let c = if central { (x.1 + y.1 + half * det) % p } else { 0 };
        let m = [
            (a[0] * b[0] + a[1] * b[2]) % p,
            (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p,
            (a[2] * b[1] + a[3] * b[3]) % p,
        ];
        ([(x.0[0] + w[0]) % p, (x.0[1] + w[1]) % p], c, m)
    };
    let id = [1, 0, 0, 1];
    let mut gens = vec![([1, 0], 0, id), ([0, 1], 0, id)];
    gens.extend(mats.iter().map(|m| ([0, 0], 0, m.map(|e| e % p))));
    TableGroup::generate(([0, 0], 0, id), &gens, op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_group<G: Group>(g: &G) -> bool {
        let n = g.order();
        (0..n).all(|a| g.mul(a, g.inv(a)) == 0 && g.mul(0, a) == a)
            && (0..n.min(40)).all(|a| (0..n).all(|b| (0..n.min(40)).all(|c| g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c)))))
    }

    #[test]
    fn orders() {
        assert_eq!(dicyclic(2).order(), 8);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(affine(9, &[4]).order(), 27);
        assert_eq!(modular_p_group(3, 2).order(), 27);
        assert_eq!(perm_group(&[vec![1, 2, 3, 0], vec![1, 0, 2, 3]]).order(), 24);
        assert_eq!(Heisenberg::new(3, 1).order(), 27);
        assert_eq!(direct_product(&cyclic(3), &cyclic(2)).order(), 6);
        assert_eq!(symplectic_semidirect(3, true, &[]).0.order(), 27);
        assert_eq!(symplectic_semidirect(3, true, &[[2, 0, 0, 2]]).0.order(), 54);
        assert_eq!(symplectic_semidirect(3, false, &[[0, 2, 1, 0], [1, 1, 1, 2]]).0.order(), 72);
    }

    #[test]
    fn group_laws() {
        assert!(is_group(&dicyclic(2)));
        assert!(is_group(&Heisenberg::new(3, 2)));
        assert!(is_group(&direct_product(&dicyclic(3), &cyclic(2))));
        assert!(is_group(&symplectic_semidirect(3, true, &[[1, 1, 0, 1]]).0));
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q8 = dicyclic(2);
        assert_eq!((1..8).filter(|&x| q8.elem_order(x) == 2).count(), 1);
    }
}
