//! The zeta and twist zeta polynomials of `G` assembled from `N` by Clifford
//! theory, grouped by stabiliser and cohomological invariants.

use super::{DirichletPoly, WeightedPoly};
use crate::characters::{
    induced_value, irr_by_induction, irr_of_n, irr_over, lin_g, proj_irr, stabilizer_k, twist_classes, GlobalLinChar,
    LinG, Pair, TwistClass,
};
use crate::cohomology::twist::action_table;
use crate::cohomology::{class_eq, class_eq1, factor_set, gamma_of, mu_matrix, pair_on, Cocycle1, Cocycle2, Gamma, StrongExt};
use crate::cyclotomic::{inner_product, CycInt};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::group::{Extension, Group, TableGroup, TopSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `f_{(K,N,θ)} = Σ_{λ ∈ Irr(K|θ)} (λ(1)/θ(1))^{-s}`.
pub fn f_triple(ext: &Extension, theta: &Pair, k: &TopSet, exec: Exec) -> Result<DirichletPoly> {
    Ok(DirichletPoly::from_degrees(irr_over(ext, theta, k, exec)?))
}

/// The characters of `N` sharing a stabiliser `K` and a class `C_{K_p}(θ) = c`.
#[derive(Clone, Debug)]
pub struct Bucket {
    pub k: TopSet,
    pub kp: TopSet,
    /// A representative of `c`.
    pub class: Cocycle2,
    /// `f^c_K`, taken from the first member.
    pub f: DirichletPoly,
    /// The indices of the members in `Assembly::pairs`.
    pub members: Vec<usize>,
    /// `Z^c_{N;K} = Σ θ(1)^{-s}` over the members.
    pub partial: DirichletPoly,
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub pairs: Vec<Pair>,
    pub buckets: Vec<Bucket>,
    /// `Σ_K |G:K|^{-s-1} Σ_c f^c_K Z^c_{N;K}`.
    pub zeta: DirichletPoly,
    /// Members of a bucket whose own `f` differs from the bucket's.
    pub jaikin_violations: Vec<String>,
}

fn weight(index: usize) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(index))
}

/// The Clifford assembly of the zeta polynomial of `G` over `N`.
pub fn assemble(ext: &Extension, exec: Exec) -> Result<Assembly> {
    let pairs = irr_of_n(ext.normal(), exec);
    let data = exec.map(&pairs, |theta| -> Result<(TopSet, TopSet, Cocycle2, DirichletPoly)> {
        let k = stabilizer_k(ext, &theta.chi);
        let kp = ext.sylow_p_part(&k);
        let class = factor_set(ext, &pair_on(ext, theta, &kp)?);
        let f = f_triple(ext, theta, &k, Exec::Sequential)?;
        Ok((k, kp, class, f))
    });
    let mut buckets: Vec<Bucket> = Vec::new();
    let mut violations = Vec::new();
    for (t, item) in data.into_iter().enumerate() {
        let (k, kp, class, f) = item?;
        let mut found = None;
        for (b, bucket) in buckets.iter().enumerate() {
            if bucket.k == k && class_eq(ext, &bucket.class, &class)? {
                found = Some(b);
                break;
            }
        }
        let b = match found {
            Some(b) => b,
            None => {
                buckets.push(Bucket { k, kp, class, f: f.clone(), members: Vec::new(), partial: DirichletPoly::new() });
                buckets.len() - 1
            }
        };
        let bucket = &mut buckets[b];
        if bucket.f != f {
            violations.push(format!("θ_{t}: f = {f} but its class has f = {}", bucket.f));
        }
        bucket.members.push(t);
        bucket.partial.add_term(pairs[t].degree(), 1);
    }
    let mut total = WeightedPoly::default();
    for bucket in &buckets {
        let index = ext.index() / bucket.k.len();
        total.add_scaled(&bucket.f.mul(&bucket.partial).shift(index as u64), &weight(index));
    }
    Ok(Assembly { pairs, buckets, zeta: total.into_integral()?, jaikin_violations: violations })
}

/// Invariants of one twist class of `Irr(N)`.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub class: TwistClass,
    pub gamma: Gamma,
    pub lp: TopSet,
    pub kp: TopSet,
    pub alpha_p: Cocycle2,
    pub gamma_p: Gamma,
    pub mu_p: Cocycle1,
    pub f: DirichletPoly,
}

/// The twist classes sharing `(L, K, Γ)`, a class `c = C_{K_p}` and a class
/// `c' = T_{L_p,K_p,Γ_p}`.
#[derive(Clone, Debug)]
pub struct TwistBucket {
    /// Indices into `TwistAssembly::data`; the first is the representative.
    pub members: Vec<usize>,
    /// `Σ θ(1)^{-s}` over the members.
    pub partial: DirichletPoly,
}

#[derive(Clone, Debug)]
pub struct TwistAssembly {
    pub pairs: Vec<Pair>,
    pub lin: LinG,
    pub data: Vec<TwistData>,
    pub buckets: Vec<TwistBucket>,
    /// `Σ_{L,K,Γ} |G:L|^{-s-1} Σ_{c,c'} f̃^{c,c'} Z̃^{c,c'}`.
    pub zeta: DirichletPoly,
    pub jaikin_violations: Vec<String>,
}

pub(crate) fn witnesses_for<'a>(class: &TwistClass, lin: &'a LinG, sub: &[usize]) -> Vec<&'a GlobalLinChar> {
    sub.iter()
        .map(|i| &lin.chars[class.witnesses[class.l.binary_search(i).expect("subgroup of L")]])
        .collect()
}

/// The invariants `Γ`, `C_{K_p}`, `Γ_p`, `μ` on `L_p` and `f̃` of a twist class.
pub fn twist_data(ext: &Extension, pairs: &[Pair], class: &TwistClass, lin: &LinG) -> Result<TwistData> {
    let theta = &pairs[class.rep];
    let se = StrongExt::new(pair_on(ext, theta, &class.k)?);
    let gamma = gamma_of(ext, &se, lin)?;
    let lp = ext.sylow_p_part(&class.l);
    let kp: TopSet = class.k.iter().copied().filter(|x| lp.binary_search(x).is_ok()).collect();
    let se_p = StrongExt::new(pair_on(ext, theta, &kp)?);
    let gamma_p = gamma_of(ext, &se_p, lin)?;
    let mu_p = mu_matrix(ext, &se_p, &lp, &witnesses_for(class, lin, &lp))?;
    let f = f_twist(ext, theta, class, &se, &gamma, lin, Exec::Sequential)?;
    Ok(TwistData { class: class.clone(), gamma, lp, kp, alpha_p: se_p.factor_set(ext), gamma_p, mu_p, f })
}

fn same_bucket(ext: &Extension, a: &TwistData, b: &TwistData) -> Result<bool> {
    if a.class.l != b.class.l || a.class.k != b.class.k || a.gamma != b.gamma || a.gamma_p != b.gamma_p {
        return Ok(false);
    }
    Ok(class_eq(ext, &a.alpha_p, &b.alpha_p)? && class_eq1(ext, &a.mu_p, &b.mu_p, &a.gamma_p)?)
}

/// The Clifford assembly of the twist zeta polynomial of `G` over `N`.
pub fn assemble_twist(ext: &Extension, exec: Exec) -> Result<TwistAssembly> {
    let pairs = irr_of_n(ext.normal(), exec);
    let lin = lin_g(ext)?;
    let classes = twist_classes(ext, &pairs, &lin, exec);
    let data = exec.map(&classes, |class| twist_data(ext, &pairs, class, &lin)).into_iter().collect::<Result<Vec<_>>>()?;
    let mut buckets: Vec<TwistBucket> = Vec::new();
    let mut violations = Vec::new();
    for (t, d) in data.iter().enumerate() {
        let mut found = None;
        for (b, bucket) in buckets.iter().enumerate() {
            if same_bucket(ext, &data[bucket.members[0]], d)? {
                found = Some(b);
                break;
            }
        }
        let b = found.unwrap_or_else(|| {
            buckets.push(TwistBucket { members: Vec::new(), partial: DirichletPoly::new() });
            buckets.len() - 1
        });
        let rep = &data[buckets[b].members.first().copied().unwrap_or(t)];
        if rep.f != d.f {
            violations.push(format!("twist class {t}: f̃ = {} but its bucket has f̃ = {}", d.f, rep.f));
        }
        buckets[b].members.push(t);
        buckets[b].partial.add_term(pairs[d.class.rep].degree(), 1);
    }
    let mut total = WeightedPoly::default();
    for bucket in &buckets {
        let rep = &data[bucket.members[0]];
        let index = ext.index() / rep.class.l.len();
        total.add_scaled(&rep.f.mul(&bucket.partial).shift(index as u64), &weight(index));
    }
    Ok(TwistAssembly { pairs, lin, data, buckets, zeta: total.into_integral()?, jaikin_violations: violations })
}

/// `f̃_{(L,N,θ̃)} = Σ (λ(1)/θ(1))^{-s}` over the twist classes of `Irr(L | θ̃)`.
///
/// Every such class contains `Ind_K^L(θ̂ π)` for some `π ∈ PIrr_{-α}(K/N)`,
/// and `Ind(θ̂ π_1)`, `Ind(θ̂ π_2)` are twists of each other exactly when
/// `π_1 = μ(h) ^hπ_2 ν` for some `h ∈ L` and `ν ∈ Γ`. When the projective
/// characters of `K/N` are not all monomial, `Irr(K | θ)` is computed
/// directly and the classes are formed on value tables.
pub fn f_twist(
    ext: &Extension,
    theta: &Pair,
    class: &TwistClass,
    se: &StrongExt,
    gamma: &Gamma,
    lin: &LinG,
    exec: Exec,
) -> Result<DirichletPoly> {
    match f_twist_projective(ext, class, se, gamma, lin, exec) {
        Err(Error::Unsupported(_)) => f_twist_by_values(ext, theta, class, lin, exec),
        other => other,
    }
}

fn orbit_degrees(count: usize, degree: impl Fn(usize) -> u64, mut image_of: impl FnMut(usize, &mut dyn FnMut(usize))) -> DirichletPoly {
    let mut parent: Vec<usize> = (0..count).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for a in 0..count {
        image_of(a, &mut |b| {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        });
    }
    DirichletPoly::from_degrees((0..count).filter(|&a| find(&mut parent, a) == a).map(degree))
}

pub fn f_twist_projective(
    ext: &Extension,
    class: &TwistClass,
    se: &StrongExt,
    gamma: &Gamma,
    lin: &LinG,
    exec: Exec,
) -> Result<DirichletPoly> {
    let k = se.tops();
    let table = ext.top_table(k);
    let pis = proj_irr(&table, &se.factor_set(ext).neg().z, exec)?;
    let mu = mu_matrix(ext, se, &class.l, &witnesses_for(class, lin, &class.l))?;
    let act = action_table(ext, &class.l, k);
    let index = (class.l.len() / k.len()) as u64;
    let mut missing = false;
    let poly = orbit_degrees(
        pis.len(),
        |a| index * pis[a].degree,
        |a, link| {
            for (h, row) in act.iter().enumerate() {
                for nu in &gamma.elems {
                    let image: Vec<CycInt> =
                        (0..k.len()).map(|x| pis[a].values[row[x]].mul_root(mu.row(h)[x] + nu[x])).collect();
                    match pis.iter().position(|p| p.values == image) {
                        Some(b) => link(b),
                        None => missing = true,
                    }
                }
            }
        },
    );
    if missing {
        return Err(Error::Internal("a twisted conjugate of a projective character is not irreducible".into()));
    }
    Ok(poly)
}

/// `f̃` from the irreducible characters of `K` over `θ`: `κ_1, κ_2` give the same
/// class when `κ_1 = ^h(κ_2 ψ|_K)` for some `h ∈ L` and `ψ ∈ Lin(G)`.
pub fn f_twist_by_values(ext: &Extension, theta: &Pair, class: &TwistClass, lin: &LinG, exec: Exec) -> Result<DirichletPoly> {
    let n = ext.normal();
    let elems = ext.preimage(&class.k).to_vec();
    let kg = TableGroup::from_subset(ext, &elems);
    let theta_vals: Vec<CycInt> = (0..n.order()).map(|x| induced_value(n, &theta.chi, x)).collect();
    let mut over = Vec::new();
    for lam in irr_by_induction(&kg, exec)? {
        if !inner_product(&lam.values[..n.order()], &theta_vals, None, n.order() as u64)?.is_zero() {
            over.push(lam);
        }
    }
    let pos = |e: usize| elems.binary_search(&e).expect("K is normal in L");
    let index = (class.l.len() / class.k.len()) as u64;
    let psi_vals: Vec<Vec<crate::cyclotomic::Qz>> = lin
        .chars
        .iter()
        .map(|psi| elems.iter().map(|&e| psi.value(e / n.order(), e % n.order())).collect())
        .collect();
    Ok(orbit_degrees(
        over.len(),
        |a| index * over[a].degree / theta.degree(),
        |a, link| {
            for &h in &class.l {
                let yh = ext.y(h);
                let conj: Vec<usize> = elems.iter().map(|&e| pos(ext.mul(ext.mul(ext.inv(yh), e), yh))).collect();
                for psi in &psi_vals {
                    let image: Vec<CycInt> =
                        (0..elems.len()).map(|x| over[a].values[conj[x]].mul_root(psi[x])).collect();
                    if let Some(b) = over.iter().position(|p| p.values == image) {
                        link(b);
                    }
                }
            }
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ambient::{self, Heisenberg};
    use crate::group::{center, closure, normal_sylow, whole};
    use crate::zeta::{twist_direct, zeta_direct};

    fn check<G: Group>(g: &G, n: &crate::bits::Bits) {
        let ext = Extension::from_ambient(g, n).unwrap().0;
        let a = assemble(&ext, Exec::Sequential).unwrap();
        assert_eq!(a.zeta, zeta_direct(g, Exec::Sequential).unwrap());
        assert!(a.jaikin_violations.is_empty(), "{:?}", a.jaikin_violations);
        let t = assemble_twist(&ext, Exec::Sequential).unwrap();
        assert_eq!(t.zeta, twist_direct(g, Exec::Sequential).unwrap());
        assert!(t.jaikin_violations.is_empty(), "{:?}", t.jaikin_violations);
    }

    #[test]
    fn s3_over_c3() {
        let s3 = ambient::perm_group(&[vec![1, 2, 0], vec![1, 0, 2]]);
        check(&s3, &closure(&s3, &[1]));
    }

    #[test]
    fn heisenberg_over_centre_and_abelian_normal() {
        let h = Heisenberg::new(3, 1);
        check(&h, &center(&h, &whole(&h)));
        check(&h, &crate::bits::Bits::from_iter(27, 0..9));
    }

    #[test]
    fn mixed_groups() {
        let a4 = ambient::perm_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
        check(&a4, &normal_sylow(&a4, 2).unwrap());
        let dic3 = ambient::dicyclic(3);
        check(&dic3, &normal_sylow(&dic3, 3).unwrap());
    }

    #[test]
    fn twist_orbits_agree_on_values() {
        let a4 = ambient::perm_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]);
        let ext = Extension::from_ambient(&a4, &normal_sylow(&a4, 2).unwrap()).unwrap().0;
        let t = assemble_twist(&ext, Exec::Sequential).unwrap();
        for d in &t.data {
            let theta = &t.pairs[d.class.rep];
            assert_eq!(f_twist_by_values(&ext, theta, &d.class, &t.lin, Exec::Sequential).unwrap(), d.f);
        }
    }
}
