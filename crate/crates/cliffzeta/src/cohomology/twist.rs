//! The groups `Γ_{K,θ̃}`, the 1-cocycle `μ` of a twist class and its class
//! modulo coboundaries and `Γ`, and the membership and value predicates used
//! to cross-check them.
//!
//! Functions on `K/N` are vectors indexed by positions in the sorted top of
//! `K`. The group `L` acts on them by `(g f)(x) = f(g^{-1} x g)`.

use super::StrongExt;
use crate::characters::{induced_equal, lin_chars_of, GlobalLinChar, LinG};
use crate::cyclotomic::{CycInt, Qz};
use crate::error::{Error, Result};
use crate::group::{whole, Extension, Group, TopSet};
use crate::linalg;
use num_integer::Integer;

/// The degree-one characters of `K/N`, as vectors over the top of `K`.
pub fn lin_of_quotient(ext: &Extension, ktops: &[usize]) -> Vec<Vec<Qz>> {
    let table = ext.top_table(ktops);
    lin_chars_of(&table, &whole(&table))
}

/// A subgroup of `Lin(K/N)`, listed element by element with zero first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gamma {
    pub ktops: TopSet,
    pub elems: Vec<Vec<Qz>>,
}

impl Gamma {
    pub fn from_elems(ktops: TopSet, mut elems: Vec<Vec<Qz>>) -> Self {
        elems.push(vec![Qz::ZERO; ktops.len()]);
        elems.sort();
        elems.dedup();
        Gamma { ktops, elems }
    }

    pub fn trivial(ktops: TopSet) -> Self {
        Gamma::from_elems(ktops, Vec::new())
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, v: &[Qz]) -> bool {
        self.elems.binary_search_by(|e| e.as_slice().cmp(v)).is_ok()
    }

    /// Whether the listed elements are closed under addition.
    pub fn is_subgroup(&self) -> bool {
        self.elems.iter().all(|a| {
            self.elems.iter().all(|b| self.contains(&a.iter().zip(b).map(|(&x, &y)| x + y).collect::<Vec<_>>()))
        })
    }

    pub fn exponent(&self) -> u64 {
        self.elems.iter().flatten().map(|v| v.den()).fold(1, |a, b| a.lcm(&b))
    }

    /// A generating set, chosen greedily in list order.
    pub fn generators(&self) -> Vec<Vec<Qz>> {
        let mut span = vec![vec![Qz::ZERO; self.ktops.len()]];
        let mut gens = Vec::new();
        for e in &self.elems {
            if span.contains(e) {
                continue;
            }
            gens.push(e.clone());
            let mut frontier = span.clone();
            while let Some(v) = frontier.pop() {
                for g in &gens {
                    let w: Vec<Qz> = v.iter().zip(g).map(|(&a, &b)| a + b).collect();
                    if !span.contains(&w) {
                        span.push(w.clone());
                        frontier.push(w);
                    }
                }
            }
        }
        gens
    }

    /// The elements whose values all have `p`-power order.
    pub fn p_part(&self, p: u64) -> Gamma {
        let elems = self.elems.iter().filter(|e| e.iter().all(|v| v.p_part(p) == *v)).cloned().collect();
        Gamma::from_elems(self.ktops.clone(), elems)
    }

    /// The restrictions to the subgroup `sub` of the top.
    pub fn restrict(&self, sub: &[usize]) -> Gamma {
        let pos: Vec<usize> = sub.iter().map(|i| self.ktops.binary_search(i).expect("sub-top")).collect();
        let elems = self.elems.iter().map(|e| pos.iter().map(|&k| e[k]).collect()).collect();
        Gamma::from_elems(sub.to_vec(), elems)
    }

    /// `{a + b : a ∈ self, b ∈ other}`.
    pub fn sum(&self, other: &Gamma) -> Gamma {
        let elems = self
            .elems
            .iter()
            .flat_map(|a| other.elems.iter().map(move |b| a.iter().zip(b).map(|(&x, &y)| x + y).collect()))
            .collect();
        Gamma::from_elems(self.ktops.clone(), elems)
    }
}

/// For each coset `y_x N` of the top of `K`, the least `n` with `θ̂(y_x n) ≠ 0`.
pub fn nonvanishing_points(ext: &Extension, se: &StrongExt) -> Result<Vec<usize>> {
    let order = ext.normal().order();
    se.tops()
        .iter()
        .map(|&x| {
            (0..order)
                .find(|&n| !se.value(ext, x, n).is_zero())
                .ok_or_else(|| Error::Internal(format!("strong extension vanishes on the coset of y_{}", x + 1)))
        })
        .collect()
}

/// `Γ_{K,θ̃}`: the `ν ∈ Lin(K/N)` with `θ̂ ε|_K = θ̂ ν` for some `ε ∈ Lin(G)`.
/// Such `ε` fix `θ`, and `ν(x) = ε(y_x n)` at any point where `θ̂` is nonzero.
pub fn gamma_of(ext: &Extension, se: &StrongExt, lin: &LinG) -> Result<Gamma> {
    let points = nonvanishing_points(ext, se)?;
    let chi = &se.pair.chi;
    let mut elems = Vec::new();
    for (first, tau) in &lin.restrictions {
        if !induced_equal(ext.normal(), chi, &chi.twist(tau)) {
            continue;
        }
        let count = lin.chars.len() / lin.restrictions.len();
        for eps in &lin.chars[*first..first + count] {
            elems.push(se.tops().iter().zip(&points).map(|(&x, &n)| eps.value(x, n)).collect());
        }
    }
    Ok(Gamma::from_elems(se.tops().clone(), elems))
}

/// `y_j n' ∈ ^{y_i n}H`, decided as: `j` lies in the top of `H` and `y_j n'`
/// fixes the conjugate pair `^{y_i n}(M, χ)`. This uses that `H` is the full
/// stabiliser of `(M, χ)` in `K`.
pub fn predicate_a(ext: &Extension, se: &StrongExt, i: usize, n: usize, j: usize, n2: usize) -> bool {
    if se.tops().binary_search(&j).is_err() {
        return false;
    }
    let nn = ext.normal();
    let chi = &se.pair.chi;
    let back = |x: usize| nn.mul(nn.mul(nn.inv(n), ext.phi_inv(i, x)), n);
    chi.dom.basis.iter().all(|&m| {
        let x = ext.phi(i, nn.conj(n, m));
        let wx = ext.phi(j, nn.conj(n2, x));
        let b = back(wx);
        chi.dom.contains(b) && chi.value(b) == chi.value(m)
    })
}

/// `y_j n' ∈ ^{y_i n}H` by multiplying out `(y_i n)^{-1} y_j n' (y_i n)`.
pub fn in_conjugate_direct(ext: &Extension, se: &StrongExt, i: usize, n: usize, j: usize, n2: usize) -> bool {
    let z = ext.elem(i, n);
    let c = ext.mul(ext.mul(ext.inv(z), ext.elem(j, n2)), z);
    let (a, b) = ext.split(c);
    se.pair.h.contains(ext, a, b)
}

/// `^{y_i n}χ̂(y_j n') = χ̂(y_κ φ_κ^{-1}(n^{-1}) d_ij φ_i^{-1}(n') n)` with
/// `y_i^{-1} y_j y_i = y_κ d_ij`; `None` off the conjugate of `H`.
pub fn conj_chi_hat(ext: &Extension, se: &StrongExt, i: usize, n: usize, j: usize, n2: usize) -> Option<Qz> {
    let nn = ext.normal();
    let k = ext.kappa(i, j);
    let w = nn.mul(
        nn.mul(nn.mul(ext.phi_inv(k, nn.inv(n)), ext.dconj(i, j)), ext.phi_inv(i, n2)),
        n,
    );
    se.chi_hat(ext, k, w)
}

/// The `Γ` equation at `w = y_j n' ∈ H ∩ ^z H`:
/// `χ̂(w) + ε(w) = ^zχ̂(w) + ν(w N)`.
pub fn predicate_c(
    ext: &Extension,
    se: &StrongExt,
    eps: &GlobalLinChar,
    z: usize,
    j: usize,
    n2: usize,
    nu_j: Qz,
) -> bool {
    match (se.chi_hat(ext, j, n2), conj_chi_hat(ext, se, 0, z, j, n2)) {
        (Some(a), Some(b)) => a + eps.value(j, n2) == b + nu_j,
        _ => false,
    }
}

/// `Γ_{K,θ̃}` from the intertwining criterion: `ν` lies in `Γ` if and only if
/// for some `ε ∈ Lin(G)` and some `z ∈ N` the `Γ` equation holds on `H ∩ ^z H`.
pub fn gamma_by_predicate(ext: &Extension, se: &StrongExt, lin: &LinG) -> Gamma {
    let nn = ext.normal();
    let ktops = se.tops().clone();
    let transversal = &se.pair.chi.dom.transversal;
    let elems = lin_of_quotient(ext, &ktops)
        .into_iter()
        .filter(|nu| {
            lin.chars.iter().any(|eps| {
                transversal.iter().any(|&z| {
                    ktops.iter().enumerate().all(|(pos, &j)| {
                        (0..nn.order()).all(|n2| {
                            !(predicate_a(ext, se, 0, 0, j, n2) && predicate_a(ext, se, 0, z, j, n2))
                                || predicate_c(ext, se, eps, z, j, n2, nu[pos])
                        })
                    })
                })
            })
        })
        .collect();
    Gamma::from_elems(ktops, elems)
}

/// `Γ_{K,θ̃}` assembled from its `p'`-part, the restrictions to `K` of the
/// `ε ∈ Lin(G)` of `p'`-order, and its `p`-part, the `p`-power characters of
/// `K/N` whose restriction to `K_p` lies in `Γ_{K_p,θ̃}`.
pub fn gamma_full(ext: &Extension, ktops: &[usize], gamma_kp: &Gamma, lin: &LinG) -> Gamma {
    let p = ext.p();
    let coprime: Vec<Vec<Qz>> = lin
        .chars
        .iter()
        .filter(|eps| eps.tau.iter().all(|v| v.is_zero()))
        .map(|eps| ktops.iter().map(|&x| eps.sigma[x]).collect::<Vec<Qz>>())
        .filter(|v| v.iter().all(|x| x.p_part(p).is_zero()))
        .collect();
    let pos: Vec<usize> = gamma_kp.ktops.iter().map(|i| ktops.binary_search(i).expect("K_p inside K")).collect();
    let lifts: Vec<Vec<Qz>> = lin_of_quotient(ext, ktops)
        .into_iter()
        .filter(|nu| nu.iter().all(|v| v.p_part(p) == *v))
        .filter(|nu| gamma_kp.contains(&pos.iter().map(|&k| nu[k]).collect::<Vec<_>>()))
        .collect();
    let g0 = Gamma::from_elems(ktops.to_vec(), coprime);
    g0.sum(&Gamma::from_elems(ktops.to_vec(), lifts))
}

/// A 1-cochain from the top of `L` to functions on the top of `K`:
/// `z[g |K| + x] = μ(y_{ltops[g]} N)(y_{ktops[x]} N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle1 {
    pub ltops: TopSet,
    pub ktops: TopSet,
    pub z: Vec<Qz>,
}

impl Cocycle1 {
    pub fn zero(ltops: TopSet, ktops: TopSet) -> Self {
        let len = ltops.len() * ktops.len();
        Cocycle1 { ltops, ktops, z: vec![Qz::ZERO; len] }
    }

    pub fn row(&self, g: usize) -> &[Qz] {
        let r = self.ktops.len();
        &self.z[g * r..(g + 1) * r]
    }

    pub fn is_zero(&self) -> bool {
        self.z.iter().all(|v| v.is_zero())
    }

    fn den(&self) -> u64 {
        self.z.iter().map(|v| v.den()).fold(1, |a, b| a.lcm(&b))
    }
}

/// `act[g][x]`: the position of `y_g^{-1} y_x y_g` in the top of `K`.
pub(crate) fn action_table(ext: &Extension, ltops: &[usize], ktops: &[usize]) -> Vec<Vec<usize>> {
    let q = ext.quotient();
    ltops
        .iter()
        .map(|&g| {
            ktops
                .iter()
                .map(|&x| ktops.binary_search(&q.conj(q.inv(g), x)).expect("K is normal in L"))
                .collect()
        })
        .collect()
}

/// The `r` with `b = a e(r)`, for nonzero `a` and `b` known to differ by a root
/// of unity.
fn root_ratio(a: &CycInt, b: &CycInt) -> Option<Qz> {
    let d = 2 * a.level().lcm(&b.level());
    let (ar, ai) = a.to_complex();
    let (br, bi) = b.to_complex();
    let angle = (bi * ar - br * ai).atan2(br * ar + bi * ai);
    let guess = (angle / std::f64::consts::TAU * d as f64).round() as i64;
    let r = Qz::new(guess, d);
    if a.mul_root(r) == *b {
        return Some(r);
    }
    (0..d as i64).map(|k| Qz::new(k, d)).find(|&r| a.mul_root(r) == *b)
}

/// `μ(g)` with `^gθ̂ = θ̂ ψ_g|_K μ(g)` for every `g` in the top of `L`, where
/// `psis[g]` is a `ψ_g` with `^gθ = θ ψ_g|_N` and `^gθ̂(x) = θ̂(g^{-1} x g)`.
pub fn mu_matrix(ext: &Extension, se: &StrongExt, ltops: &[usize], psis: &[&GlobalLinChar]) -> Result<Cocycle1> {
    let ktops = se.tops().clone();
    let points = nonvanishing_points(ext, se)?;
    let mut z = Vec::with_capacity(ltops.len() * ktops.len());
    for (&g, psi) in ltops.iter().zip(psis) {
        let yg = ext.y(g);
        for (&x, &n) in ktops.iter().zip(&points) {
            let a = se.value(ext, x, n);
            let c = ext.mul(ext.mul(ext.inv(yg), ext.elem(x, n)), yg);
            let (x2, n2) = ext.split(c);
            let b = se.value(ext, x2, n2);
            let r = root_ratio(&a, &b).ok_or_else(|| {
                Error::Internal(format!("conjugate of θ̂ is not a twist of θ̂ on the coset of y_{}", x + 1))
            })?;
            z.push(r - psi.value(x, n));
        }
    }
    Ok(Cocycle1 { ltops: ltops.to_vec(), ktops, z })
}

/// Whether `μ(gh) - μ(g) - g μ(h)` lies in `Γ` for all `g, h`.
pub fn is_cocycle1(ext: &Extension, mu: &Cocycle1, gamma: &Gamma) -> bool {
    let act = action_table(ext, &mu.ltops, &mu.ktops);
    let lpos = |i: usize| mu.ltops.binary_search(&i).expect("L is closed");
    (0..mu.ltops.len()).all(|g| {
        (0..mu.ltops.len()).all(|h| {
            let gh = lpos(ext.gamma(mu.ltops[g], mu.ltops[h]));
            let diff: Vec<Qz> = (0..mu.ktops.len())
                .map(|x| mu.row(gh)[x] - mu.row(g)[x] - mu.row(h)[act[g][x]])
                .collect();
            gamma.contains(&diff)
        })
    })
}

/// Whether `μ_2 - μ_1 = g ω - ω + c_g` for a function `ω` on `K/N` and
/// `c_g ∈ Γ`, solved over `Z/M` with `M` the common denominator.
///
/// Each `L`-orbit on `K/N` may have `ω` vanish at one point, after which `ω`
/// takes values of the difference, so `M` needs no further factor.
pub fn class_eq1(ext: &Extension, mu1: &Cocycle1, mu2: &Cocycle1, gamma: &Gamma) -> Result<bool> {
    if mu1.ltops != mu2.ltops || mu1.ktops != mu2.ktops || gamma.ktops != mu1.ktops {
        return Err(Error::Invalid("1-cocycles over different groups".into()));
    }
    let (rl, rk) = (mu1.ltops.len(), mu1.ktops.len());
    let gens = gamma.generators();
    let modulus = mu1.den().lcm(&mu2.den()).lcm(&gamma.exponent());
    let act = action_table(ext, &mu1.ltops, &mu1.ktops);
    let ncols = rk + rl * gens.len();
    let mut rows = Vec::with_capacity(rl * rk);
    let mut rhs = Vec::with_capacity(rl * rk);
    for g in 0..rl {
        for x in 0..rk {
            let mut row = vec![0i64; ncols];
            row[act[g][x]] += 1;
            row[x] -= 1;
            for (k, gen) in gens.iter().enumerate() {
                row[rk + g * gens.len() + k] = gen[x].over(modulus).expect("common denominator") as i64;
            }
            rows.push(row);
            let d = mu2.row(g)[x] - mu1.row(g)[x];
            rhs.push(d.over(modulus).expect("common denominator") as i64);
        }
    }
    Ok(linalg::solve(&rows, &rhs, ncols, modulus).is_some())
}

/// The unique candidate in the class of `μ`, or `None` if none is.
pub fn t_invariant(ext: &Extension, mu: &Cocycle1, gamma: &Gamma, candidates: &[Cocycle1]) -> Result<Option<usize>> {
    let mut found = None;
    for (k, c) in candidates.iter().enumerate() {
        if c.ltops == mu.ltops && c.ktops == mu.ktops && class_eq1(ext, mu, c, gamma)? {
            if found.is_some() {
                return Err(Error::Internal("two candidate classes of T coincide".into()));
            }
            found = Some(k);
        }
    }
    Ok(found)
}

/// The value equation for `μ` at `w = y_j n' ∈ ^{y_k}H ∩ ^z H`:
/// `^{y_k}χ̂(w) = ^zχ̂(w) + ψ(w) + μ(y_k)(w N) + ν(w N)`.
#[allow(clippy::too_many_arguments)]
pub fn predicate_b(
    ext: &Extension,
    se: &StrongExt,
    k: usize,
    z: usize,
    j: usize,
    n2: usize,
    psi: &GlobalLinChar,
    mu_kj: Qz,
    nu_j: Qz,
) -> bool {
    match (conj_chi_hat(ext, se, k, 0, j, n2), conj_chi_hat(ext, se, 0, z, j, n2)) {
        (Some(a), Some(b)) => a == b + psi.value(j, n2) + mu_kj + nu_j,
        _ => false,
    }
}

/// Whether every row of `mu` satisfies the intertwining form of its defining
/// equation: for each `y_k` some `z ∈ N` and `ν ∈ Γ` satisfy the value
/// equation on `^{y_k}H ∩ ^z H`.
pub fn mu_by_predicate_agrees(
    ext: &Extension,
    se: &StrongExt,
    mu: &Cocycle1,
    psis: &[&GlobalLinChar],
    gamma: &Gamma,
) -> bool {
    let nn = ext.normal();
    let transversal = &se.pair.chi.dom.transversal;
    mu.ltops.iter().enumerate().all(|(g, &k)| {
        gamma.elems.iter().any(|nu| {
            transversal.iter().any(|&z| {
                mu.ktops.iter().enumerate().all(|(pos, &j)| {
                    (0..nn.order()).all(|n2| {
                        !(predicate_a(ext, se, k, 0, j, n2) && predicate_a(ext, se, 0, z, j, n2))
                            || predicate_b(ext, se, k, z, j, n2, psis[g], mu.row(g)[pos], nu[pos])
                    })
                })
            })
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{irr_of_n, lin_g, twist_classes};
    use crate::cohomology::pair_on;
    use crate::exec::Exec;
    use crate::group::ambient::{self, Heisenberg};
    use crate::group::closure;

    fn heisenberg_over_centre() -> Extension {
        let g = Heisenberg::new(3, 1);
        let z = crate::group::center(&g, &whole(&g));
        Extension::from_ambient(&g, &z).unwrap().0
    }

    fn s3_over_c3() -> Extension {
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        Extension::from_ambient(&s3, &closure(&s3, &[1])).unwrap().0
    }

    fn strong(ext: &Extension, theta: &crate::characters::Pair, k: &[usize]) -> StrongExt {
        StrongExt::new(pair_on(ext, theta, k).unwrap())
    }

    #[test]
    fn membership_predicates_agree() {
        for ext in [heisenberg_over_centre(), s3_over_c3()] {
            let nn = ext.normal();
            for theta in irr_of_n(nn, Exec::Sequential) {
                let k = crate::characters::stabilizer_k(&ext, &theta.chi);
                let se = strong(&ext, &theta, &k);
                for &i in &k {
                    for n in 0..nn.order() {
                        for j in 0..ext.index() {
                            for n2 in 0..nn.order() {
                                let a = predicate_a(&ext, &se, i, n, j, n2);
                                assert_eq!(a, in_conjugate_direct(&ext, &se, i, n, j, n2));
                                if a {
                                    let z = ext.elem(i, n);
                                    let c = ext.mul(ext.mul(ext.inv(z), ext.elem(j, n2)), z);
                                    let (x, m) = ext.split(c);
                                    assert_eq!(conj_chi_hat(&ext, &se, i, n, j, n2), se.chi_hat(&ext, x, m));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_gamma_is_everything() {
        let ext = heisenberg_over_centre();
        let lin = lin_g(&ext).unwrap();
        let all: Vec<usize> = (0..ext.index()).collect();
        for theta in irr_of_n(ext.normal(), Exec::Sequential) {
            let se = strong(&ext, &theta, &all);
            let g = gamma_of(&ext, &se, &lin).unwrap();
            assert!(g.is_subgroup());
            assert_eq!(g, gamma_by_predicate(&ext, &se, &lin));
            // Every degree-one character of G is trivial on the centre.
            assert_eq!(g.order(), 9);
        }
    }

    #[test]
    fn mu_is_a_cocycle_and_trivial_over_n() {
        for ext in [heisenberg_over_centre(), s3_over_c3()] {
            let lin = lin_g(&ext).unwrap();
            let irr = irr_of_n(ext.normal(), Exec::Sequential);
            for class in twist_classes(&ext, &irr, &lin, Exec::Sequential) {
                let se = strong(&ext, &irr[class.rep], &class.k);
                let gamma = gamma_of(&ext, &se, &lin).unwrap();
                assert_eq!(gamma, gamma_by_predicate(&ext, &se, &lin));
                let psis: Vec<&GlobalLinChar> = class.witnesses.iter().map(|&w| &lin.chars[w]).collect();
                let mu = mu_matrix(&ext, &se, &class.l, &psis).unwrap();
                assert!(mu.row(0).iter().all(|v| v.is_zero()));
                assert!(is_cocycle1(&ext, &mu, &gamma));
                assert!(mu_by_predicate_agrees(&ext, &se, &mu, &psis, &gamma));
                if class.k == vec![0] {
                    assert!(mu.is_zero());
                }
                assert_eq!(t_invariant(&ext, &mu, &gamma, std::slice::from_ref(&mu)).unwrap(), Some(0));
            }
        }
    }

    #[test]
    fn class_eq1_detects_non_coboundary() {
        let ext = s3_over_c3();
        let ltops: Vec<usize> = (0..2).collect();
        let ktops = vec![0, 1];
        let gamma = Gamma::trivial(ktops.clone());
        let zero = Cocycle1::zero(ltops.clone(), ktops.clone());
        let mut shifted = zero.clone();
        shifted.z[3] = Qz::new(1, 2);
        assert!(class_eq1(&ext, &zero, &zero, &gamma).unwrap());
        assert!(!class_eq1(&ext, &zero, &shifted, &gamma).unwrap());
        let full = Gamma::from_elems(ktops, vec![vec![Qz::ZERO, Qz::new(1, 2)]]);
        assert!(class_eq1(&ext, &zero, &shifted, &full).unwrap());
    }
}
